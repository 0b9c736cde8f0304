// Command-line front end. Parameters come from `--key value` flags and an
// optional `--config file` of `key = value` lines; flags override the file.
//
// Exit status: 0 ok, 1 validation/parse error, 2 numeric/domain error,
// 3 search space too large.
#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relaysec/core.hpp"
#include "relaysec/coverkim.hpp"
#include "relaysec/discrete/rates.hpp"
#include "relaysec/io.hpp"
#include "relaysec/mcsim.hpp"
#include "relaysec/model1.hpp"
#include "relaysec/model2.hpp"

namespace relaysec::cli {

inline constexpr const char* kVersion = "1.0.0";

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string name;
  std::string help;
  std::optional<std::string> default_value;  // nullopt: required
};

struct CommandSpec {
  std::string name;
  std::string description;
  std::vector<KeySpec> keys;
  std::size_t default_grid = 0;  // 0: command has no grid
};

inline const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {"model1-region",
       "Equivocation region of the Gaussian orthogonal source-to-relay network",
       {{"a", "source-to-relay gain", {}},
        {"b", "relay-to-destination gain", {}},
        {"gamma", "relay power ratio", {}},
        {"p", "source power P", {}},
        {"n", "noise variance N", "1"}},
       256},
      {"model1-capacity",
       "Secrecy capacity of the Gaussian orthogonal source-to-relay network",
       {{"a", "source-to-relay gain", {}},
        {"b", "relay-to-destination gain", {}},
        {"gamma", "relay power ratio", {}},
        {"p", "source power P", {}},
        {"n", "noise variance N", "1"}},
       256},
      {"model2-rates",
       "Optimized CF/AF secrecy rates and the upper bound, orthogonal relay-to-destination link",
       {{"a", "source-to-relay gain", {}},
        {"b", "relay-to-destination gain", {}},
        {"p", "source power budget P", {}},
        {"p_r", "relay power P_r", {}}},
       1024},
      {"model2-power-sweep",
       "CF and AF secrecy rates versus source power",
       {{"a", "source-to-relay gain", {}},
        {"b", "relay-to-destination gain", {}},
        {"p", "source power budget P", {}},
        {"p_r", "relay power P_r", {}}},
       1024},
      {"model2-b-sweep",
       "Optimized CF/AF rates and the upper bound versus relay gain b",
       {{"a", "source-to-relay gain", {}},
        {"b", "relay gains: list v1,v2,... or range start:stop:step", {}},
        {"p", "source power budget P", {}},
        {"p_r", "relay power P_r", {}}},
       1024},
      {"coverkim-curve",
       "Achievable rate and upper bound for the Cover-Kim deterministic relay channel",
       {{"alpha", "gains: list v1,v2,... or range start:stop:step", {}},
        {"p", "source power P", {}},
        {"r0", "relay link rate R_0 (bits/channel use)", {}}},
       0},
      {"discrete-eval",
       "Exhaustive compress-and-forward region search on a discrete channel file",
       {{"channel", "channel file", {}},
        {"yhat", "quantizer output alphabet size (default |Y_r| + 1)", "auto"},
        {"emit", "region (Pareto points) or all (every grid point)", "region"}},
       8},
      {"af-sim",
       "Monte-Carlo check of amplify-and-forward relaying",
       {{"a", "source-to-relay gain", {}},
        {"b", "relay-to-destination gain", {}},
        {"p", "source power p", {}},
        {"p_r", "relay power P_r", {}},
        {"samples", "number of samples", "1000000"}},
       0},
  };
  return specs;
}

/// Resolved invocation: every key of the command has a value.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::string output_path;  // empty: write to the provided stream
  std::size_t grid_resolution = 0;
  std::optional<std::uint64_t> seed;

  double real(const std::string& key) const {
    double v = 0.0;
    if (!io::parse_double(params.at(key), v))
      throw ValidationError("invalid value for key " + key + ": '" + params.at(key) + "'");
    return v;
  }

  std::vector<double> list(const std::string& key) const {
    try {
      return io::parse_value_list(params.at(key));
    } catch (const io::ParseError& e) {
      throw ValidationError("invalid value for key " + key + ": " + e.what());
    }
  }
};

namespace detail {

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = io::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    kv[std::string(io::trim(body.substr(0, eq)))] = std::string(io::trim(body.substr(eq + 1)));
  }
  return kv;
}

inline std::string header_comment(const RunConfig& cfg) {
  std::string s = std::string("relaysec ") + kVersion + " command=" + cfg.command;
  for (const auto& [k, v] : cfg.params) s += " " + k + "=" + v;
  s += " grid=" + (cfg.grid_resolution ? std::to_string(cfg.grid_resolution) : std::string("none"));
  s += " seed=" + (cfg.seed ? std::to_string(*cfg.seed) : std::string("none"));
  return s;
}

inline model1::GaussianModel1Params model1_params(const RunConfig& c) {
  return {c.real("a"), c.real("b"), c.real("gamma"), c.real("p"), c.real("n")};
}

inline model2::GaussianModel2Params model2_params(const RunConfig& c, double b) {
  return {c.real("a"), b, c.real("p"), c.real("p_r")};
}

inline void write_body(const RunConfig& cfg, io::CsvWriter& csv) {
  const GridSpec grid = cfg.grid_resolution ? GridSpec{cfg.grid_resolution} : GridSpec{};
  const std::string& cmd = cfg.command;

  if (cmd == "model1-region") {
    const auto region = model1::model1_region(model1_params(cfg), grid);
    csv.header({"v", "rho", "r1", "re"});
    for (const auto& e : region.entries) {
      csv << e.provenance.v << e.provenance.rho << e.point.r1.bits() << e.point.re.bits();
      csv.end_row();
    }
  } else if (cmd == "model1-capacity") {
    const auto cap = model1::model1_secrecy_capacity(model1_params(cfg), grid);
    csv.header({"capacity", "v", "rho"});
    csv << cap.capacity.bits() << cap.argmax.v << cap.argmax.rho;
    csv.end_row();
  } else if (cmd == "model2-rates") {
    const auto prm = model2_params(cfg, cfg.real("b"));
    const auto cf = model2::cf_optimize(prm, grid);
    const auto af = model2::af_optimize(prm, grid);
    csv.header({"cf_p_star", "cf_re", "af_p_star", "af_re", "upper_bound"});
    csv << cf.p_star << cf.re_star.bits() << af.p_star << af.re_star.bits()
        << model2::model2_upper_bound(prm).bits();
    csv.end_row();
  } else if (cmd == "model2-power-sweep") {
    csv.header({"p", "cf_re", "af_re"});
    for (const auto& r : model2::power_sweep(model2_params(cfg, cfg.real("b")), grid)) {
      csv << r.p << r.cf_re.bits() << r.af_re.bits();
      csv.end_row();
    }
  } else if (cmd == "model2-b-sweep") {
    csv.header({"b", "cf_re", "af_re", "upper_bound"});
    for (const auto& r : model2::b_sweep(model2_params(cfg, 1.0), cfg.list("b"), grid)) {
      csv << r.b << r.cf.re_star.bits() << r.af.re_star.bits() << r.upper_bound.bits();
      csv.end_row();
    }
  } else if (cmd == "coverkim-curve") {
    csv.header({"alpha", "achievable", "upper"});
    const coverkim::CoverKimParams base{0.0, cfg.real("p"), cfg.real("r0")};
    for (const auto& r : coverkim::ck_curve(base, cfg.list("alpha"))) {
      csv << r.alpha << r.achievable.bits() << r.upper.bits();
      csv.end_row();
    }
  } else if (cmd == "discrete-eval") {
    discrete::DiscreteRelayChannel ch;
    try {
      ch = io::load_discrete_channel(cfg.params.at("channel"));
    } catch (const io::ParseError& e) {
      throw ValidationError(e.what());
    }
    std::uint64_t yhat = ch.nyr + 1;
    if (cfg.params.at("yhat") != "auto" && (!io::parse_uint(cfg.params.at("yhat"), yhat) || yhat == 0))
      throw ValidationError("invalid value for key yhat: '" + cfg.params.at("yhat") + "'");
    const std::string& emit = cfg.params.at("emit");
    if (emit != "region" && emit != "all")
      throw ValidationError("invalid value for key emit: '" + emit + "' (expected region or all)");
    csv.header({"r1", "re", "feasible", "provenance_index"});
    if (emit == "region") {
      for (const auto& e : discrete::thm1_search(ch, grid, yhat).entries) {
        csv << e.point.r1.bits() << e.point.re.bits() << 1 << static_cast<std::uint64_t>(e.provenance);
        csv.end_row();
      }
    } else {
      const discrete::TripleGrid triples(ch, grid.resolution, yhat);
      discrete::thm1_enumerate(ch, triples, [&](std::uint64_t index, const discrete::CfTerms& t) {
        const RatePoint pt = t.point();
        csv << pt.r1.bits() << pt.re.bits() << (t.feasible() ? 1 : 0) << index;
        csv.end_row();
      });
    }
  } else if (cmd == "af-sim") {
    std::uint64_t samples = 0;
    if (!io::parse_uint(cfg.params.at("samples"), samples) || samples == 0)
      throw ValidationError("invalid value for key samples: '" + cfg.params.at("samples") + "'");
    mcsim::SimConfig sim{model2_params(cfg, cfg.real("b")), cfg.real("p"), samples, cfg.seed.value_or(1), 0};
    const auto rep = mcsim::af_simulate(sim);
    const auto formula = model2::af_rate(sim.params, sim.p);
    csv.header({"xi_hat", "xi_formula", "relay_power_hat", "re_hat", "re_formula", "n_samples", "seed"});
    csv << rep.xi_hat << formula.xi << rep.relay_power_hat << rep.re_hat << formula.re_unclamped
        << rep.n_samples << rep.seed;
    csv.end_row();
  }
}

}  // namespace detail

/// Checks keys against the command, fills defaults and parses grid/seed.
inline RunConfig resolve(const CommandSpec& spec, std::map<std::string, std::string> kv) {
  RunConfig cfg;
  cfg.command = spec.name;
  if (auto it = kv.find("out"); it != kv.end()) {
    cfg.output_path = it->second;
    kv.erase(it);
  }
  if (auto it = kv.find("grid"); it != kv.end()) {
    std::uint64_t g = 0;
    if (spec.default_grid == 0) throw ValidationError("unknown key: grid");
    if (!io::parse_uint(it->second, g) || g < 2) throw ValidationError("invalid value for key grid: '" + it->second + "'");
    cfg.grid_resolution = g;
    kv.erase(it);
  } else {
    cfg.grid_resolution = spec.default_grid;
  }
  if (auto it = kv.find("seed"); it != kv.end()) {
    std::uint64_t s = 0;
    if (!io::parse_uint(it->second, s)) throw ValidationError("invalid value for key seed: '" + it->second + "'");
    cfg.seed = s;
    kv.erase(it);
  } else if (spec.name == "af-sim") {
    cfg.seed = 1;
  }
  for (const auto& [k, v] : kv) {
    const bool known = std::any_of(spec.keys.begin(), spec.keys.end(), [&](const KeySpec& s) { return s.name == k; });
    if (!known) throw ValidationError("unknown key: " + k);
  }
  for (const auto& key : spec.keys) {
    if (auto it = kv.find(key.name); it != kv.end()) {
      cfg.params[key.name] = it->second;
    } else if (key.default_value) {
      cfg.params[key.name] = *key.default_value;
    } else {
      throw ValidationError("missing key: " + key.name);
    }
  }
  return cfg;
}

/// Executes a resolved config, writing CSV to cfg.output_path or `out`.
inline void execute(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream buf;
  io::CsvWriter csv(buf);
  csv.comment(detail::header_comment(cfg));
  detail::write_body(cfg, csv);
  if (cfg.output_path.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + cfg.output_path);
  f << buf.str();
}

/// Parses argv-style arguments (without the program name) and runs the
/// command. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secrecy rates for relay channels with an untrusted relay", "relaysec"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct Bound {
    CLI::App* sub;
    const CommandSpec* spec;
    std::map<std::string, std::string> flags;
    std::string config;
  };
  std::vector<Bound> bound;
  bound.reserve(commands().size());
  for (const auto& spec : commands()) {
    bound.push_back({app.add_subcommand(spec.name, spec.description), &spec, {}, {}});
    Bound& b = bound.back();
    for (const auto& key : spec.keys) {
      std::string help = key.help + (key.default_value ? " [default: " + *key.default_value + "]" : " (required)");
      b.sub->add_option_function<std::string>("--" + key.name, [&b, name = key.name](const std::string& v) {
        b.flags[name] = v;
      }, help);
    }
    b.sub->add_option_function<std::string>("--out", [&b](const std::string& v) { b.flags["out"] = v; },
                                            "output CSV path (default: stdout)");
    if (spec.default_grid)
      b.sub->add_option_function<std::string>("--grid", [&b](const std::string& v) { b.flags["grid"] = v; },
                                              "grid resolution [default: " + std::to_string(spec.default_grid) + "]");
    b.sub->add_option_function<std::string>("--seed", [&b](const std::string& v) { b.flags["seed"] = v; },
                                            "random seed");
    b.sub->add_option("--config", b.config, "key = value parameter file; flags override it");
  }

  std::vector<const char*> argv{"relaysec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    for (auto& b : bound) {
      if (!b.sub->parsed()) continue;
      std::map<std::string, std::string> kv;
      if (!b.config.empty()) kv = detail::read_config_file(b.config);
      for (const auto& [k, v] : b.flags) kv[k] = v;
      execute(resolve(*b.spec, std::move(kv)), out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const SearchSpaceError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    // DomainError, EstimationError and anything numeric.
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace relaysec::cli
