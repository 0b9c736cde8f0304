// Dense joint pmf tables over a handful of finite-alphabet variables and the
// exact conditional mutual information I(A; B | C) on them.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relaysec/core.hpp"

namespace relaysec::discrete {

/// Set of variable positions in a JointPmf (bit i = variable i).
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<std::size_t> vars) {
    for (auto v : vars) bits_ |= std::uint32_t{1} << v;
  }
  static constexpr VarSet from_bits(std::uint32_t bits) {
    VarSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr bool contains(std::size_t v) const { return (bits_ >> v) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr VarSet operator|(VarSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr VarSet operator&(VarSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr bool operator==(const VarSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

class JointPmf {
 public:
  JointPmf() = default;
  JointPmf(std::vector<std::string> labels, std::vector<std::size_t> dims)
      : labels_(std::move(labels)), dims_(std::move(dims)) {
    if (labels_.size() != dims_.size()) throw StructuralError("joint: label/dimension count mismatch");
    if (dims_.size() > 16) throw StructuralError("joint: at most 16 variables");
    strides_.assign(dims_.size(), 1);
    std::size_t total = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
      if (dims_[k] == 0) throw StructuralError("joint: zero-size alphabet for " + labels_[k]);
      strides_[k] = total;
      total *= dims_[k];
    }
    p_.assign(total, 0.0);
  }

  std::size_t rank() const { return dims_.size(); }
  std::size_t size() const { return p_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::span<const double> probabilities() const { return p_; }
  std::span<double> probabilities() { return p_; }

  std::size_t var(const std::string& label) const {
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (labels_[k] == label) return k;
    throw StructuralError("joint: unknown variable " + label);
  }

  VarSet vars(std::initializer_list<const char*> names) const {
    VarSet s;
    for (const char* n : names) s = s | VarSet{var(n)};
    return s;
  }

  VarSet all() const { return VarSet::from_bits((std::uint32_t{1} << rank()) - 1); }

  std::size_t flat(std::span<const std::size_t> coords) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) idx += coords[k] * strides_[k];
    return idx;
  }

  double& operator()(std::initializer_list<std::size_t> coords) {
    return p_[flat(std::span(coords.begin(), coords.size()))];
  }
  double operator()(std::initializer_list<std::size_t> coords) const {
    return p_[flat(std::span(coords.begin(), coords.size()))];
  }

  double total() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }

  /// Marginal over the variables in `keep`, in their original order.
  JointPmf marginal(VarSet keep) const {
    std::vector<std::string> labels;
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < rank(); ++k) {
      if (keep.contains(k)) {
        labels.push_back(labels_[k]);
        dims.push_back(dims_[k]);
      }
    }
    JointPmf out(std::move(labels), std::move(dims));
    const auto offsets = projection_strides(keep, out);
    for_each_offset(offsets, [&](std::size_t i, std::size_t j) { out.p_[j] += p_[i]; });
    return out;
  }

  /// Strides that map this table's coordinates onto `sub` (a marginal over
  /// `keep`); variables outside `keep` get stride 0.
  std::vector<std::size_t> projection_strides(VarSet keep, const JointPmf& sub) const {
    std::vector<std::size_t> s(rank(), 0);
    std::size_t j = 0;
    for (std::size_t k = 0; k < rank(); ++k)
      if (keep.contains(k)) s[k] = sub.strides_[j++];
    return s;
  }

  /// Visits every flat index i with its projected index under `strides`.
  template <class F>
  void for_each_offset(const std::vector<std::size_t>& strides, F&& f) const {
    std::vector<std::size_t> coord(rank(), 0);
    std::size_t off = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      f(i, off);
      for (std::size_t k = rank(); k-- > 0;) {
        off += strides[k];
        if (++coord[k] < dims_[k]) break;
        off -= strides[k] * dims_[k];
        coord[k] = 0;
      }
    }
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<double> p_;
};

/// I(A; B | C) in bits, with 0 log 0 = 0. Slightly negative round-off is
/// clamped to zero.
inline double mutual_info(const JointPmf& joint, VarSet a, VarSet b, VarSet given = {}) {
  if (a.empty() || b.empty()) throw StructuralError("mutual_info: empty variable group");
  if (!(a & b).empty() || !(a & given).empty() || !(b & given).empty())
    throw StructuralError("mutual_info: variable groups overlap");
  if (((a | b | given).bits() & ~joint.all().bits()) != 0)
    throw StructuralError("mutual_info: variable not present in joint");

  const JointPmf abc = joint.marginal(a | b | given);
  // Re-express the groups in abc's variable positions.
  VarSet a2, b2, c2;
  for (std::size_t k = 0, j = 0; k < joint.rank(); ++k) {
    if (!(a | b | given).contains(k)) continue;
    if (a.contains(k)) a2 = a2 | VarSet{j};
    if (b.contains(k)) b2 = b2 | VarSet{j};
    if (given.contains(k)) c2 = c2 | VarSet{j};
    ++j;
  }
  const JointPmf ac = abc.marginal(a2 | c2);
  const JointPmf bc = abc.marginal(b2 | c2);
  const JointPmf c = c2.empty() ? JointPmf({}, {}) : abc.marginal(c2);
  const auto s_ac = abc.projection_strides(a2 | c2, ac);
  const auto s_bc = abc.projection_strides(b2 | c2, bc);
  const auto s_c = abc.projection_strides(c2, c);

  const auto pabc = abc.probabilities();
  const auto pac = ac.probabilities();
  const auto pbc = bc.probabilities();
  const auto pc = c2.empty() ? std::span<const double>{} : c.probabilities();

  std::vector<std::size_t> idx_ac(abc.size()), idx_bc(abc.size()), idx_c(abc.size());
  abc.for_each_offset(s_ac, [&](std::size_t i, std::size_t j) { idx_ac[i] = j; });
  abc.for_each_offset(s_bc, [&](std::size_t i, std::size_t j) { idx_bc[i] = j; });
  if (!c2.empty()) abc.for_each_offset(s_c, [&](std::size_t i, std::size_t j) { idx_c[i] = j; });

  double sum = 0.0;
  for (std::size_t i = 0; i < pabc.size(); ++i) {
    const double p = pabc[i];
    if (p <= 0.0) continue;
    const double p_c = c2.empty() ? 1.0 : pc[idx_c[i]];
    // Marginals dominate the joint entry, so none of them can vanish here.
    assert(pac[idx_ac[i]] > 0.0 && pbc[idx_bc[i]] > 0.0 && p_c > 0.0);
    sum += p * std::log2(p * p_c / (pac[idx_ac[i]] * pbc[idx_bc[i]]));
  }
  return sum > 0.0 ? sum : 0.0;
}

}  // namespace relaysec::discrete
