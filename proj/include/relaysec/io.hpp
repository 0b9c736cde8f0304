// Text formats: discrete channel files, CSV output and value lists.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "relaysec/discrete/channel.hpp"

namespace relaysec::io {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Strict decimal parse: the whole token must be consumed.
inline bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return !token.empty() && ec == std::errc{} && ptr == end && std::isfinite(out);
}

inline bool parse_uint(std::string_view token, std::uint64_t& out) {
  token = trim(token);
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return !token.empty() && ec == std::errc{} && ptr == end;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// ── Discrete channel files ────────────────────────────────────────────────────
//
//   # comment lines start with '#'; blank lines are ignored
//   sizes <|X|> <|X_r|> <|Y|> <|Y_r|>
//   one line per (x, x_r), x major: |Y|*|Y_r| values p(y, y_r | x, x_r),
//   y major, y_r minor.

inline discrete::DiscreteRelayChannel parse_discrete_channel(std::istream& in,
                                                             const std::string& source = "<input>") {
  auto fail = [&](std::size_t line, const std::string& msg) -> void {
    throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
  };
  discrete::DiscreteRelayChannel ch;
  bool have_sizes = false;
  std::size_t rows_read = 0, lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tok = split_ws(body);
    if (!have_sizes) {
      if (tok.size() != 5 || tok[0] != "sizes") fail(lineno, "expected 'sizes X XR Y YR'");
      std::uint64_t v[4];
      for (int k = 0; k < 4; ++k)
        if (!parse_uint(tok[k + 1], v[k]) || v[k] == 0 || v[k] > 64) fail(lineno, "invalid alphabet size");
      ch.nx = v[0];
      ch.nxr = v[1];
      ch.ny = v[2];
      ch.nyr = v[3];
      ch.transition.reserve(ch.nx * ch.nxr * ch.ny * ch.nyr);
      have_sizes = true;
      continue;
    }
    if (rows_read == ch.nx * ch.nxr) fail(lineno, "unexpected extra row");
    const std::size_t width = ch.ny * ch.nyr;
    if (tok.size() != width)
      fail(lineno, "expected " + std::to_string(width) + " values, got " + std::to_string(tok.size()));
    double sum = 0.0;
    for (const auto t : tok) {
      double v = 0.0;
      if (!parse_double(t, v)) fail(lineno, "invalid number '" + std::string(t) + "'");
      if (v < 0.0) fail(lineno, "negative probability");
      sum += v;
      ch.transition.push_back(v);
    }
    if (std::abs(sum - 1.0) > discrete::kStochasticTol) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", sum);
      fail(lineno, std::string("row sums to ") + buf + ", expected 1");
    }
    ++rows_read;
  }
  if (!have_sizes) fail(lineno, "empty channel file");
  if (rows_read != ch.nx * ch.nxr)
    fail(lineno, "expected " + std::to_string(ch.nx * ch.nxr) + " rows, got " + std::to_string(rows_read));
  return ch;
}

inline discrete::DiscreteRelayChannel load_discrete_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open channel file");
  return parse_discrete_channel(in, path);
}

inline std::string format_channel(const discrete::DiscreteRelayChannel& ch) {
  std::ostringstream os;
  os << "sizes " << ch.nx << ' ' << ch.nxr << ' ' << ch.ny << ' ' << ch.nyr << '\n';
  char buf[32];
  std::size_t i = 0;
  for (std::size_t r = 0; r < ch.nx * ch.nxr; ++r) {
    for (std::size_t c = 0; c < ch.ny * ch.nyr; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", ch.transition[i++]);
      os << (c ? " " : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

// ── CSV ───────────────────────────────────────────────────────────────────────

/// Comma-separated rows with '\n' line endings; reals use 12 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& text) { os_ << "# " << text << '\n'; }

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
    os_ << '\n';
  }

  CsvWriter& operator<<(double v) {
    sep();
    os_ << format(v);
    return *this;
  }
  CsvWriter& operator<<(std::uint64_t v) {
    sep();
    os_ << v;
    return *this;
  }
  CsvWriter& operator<<(int v) {
    sep();
    os_ << v;
    return *this;
  }
  void end_row() {
    os_ << '\n';
    first_ = true;
  }

  static std::string format(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }
  std::ostream& os_;
  bool first_ = true;
};

// ── Value lists ───────────────────────────────────────────────────────────────

/// Parses "v1,v2,..." or "start:stop:step" (inclusive of stop up to 1e-9
/// of a step). Range points are computed as start + i * step.
inline std::vector<double> parse_value_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
      const auto next = text.find(':', pos);
      parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    double start = 0, stop = 0, step = 0;
    if (parts.size() != 3 || !parse_double(parts[0], start) || !parse_double(parts[1], stop) ||
        !parse_double(parts[2], step))
      throw ParseError("range must be start:stop:step");
    if (!(step > 0.0) || stop < start) throw ParseError("range needs step > 0 and stop >= start");
    const double span = (stop - start) / step;
    if (span > 1e7) throw ParseError("range has too many points");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    const auto tok = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    double v = 0;
    if (!parse_double(tok, v)) throw ParseError("invalid number '" + std::string(trim(tok)) + "' in list");
    out.push_back(v);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace relaysec::io
