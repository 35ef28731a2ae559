#pragma once

// Command-line front end. `run` is a thin dispatcher onto the library; every
// number it prints comes straight from a library call.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "udqkd/errors.hpp"
#include "udqkd/protocol/asymptotic.hpp"
#include "udqkd/protocol/params.hpp"
#include "udqkd/protocol/security.hpp"
#include "udqkd/sweeps/frontier.hpp"
#include "udqkd/sweeps/io.hpp"
#include "udqkd/sweeps/region.hpp"
#include "udqkd/sweeps/types.hpp"
#include "udqkd/version.hpp"

namespace udqkd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// `key = value` lines; `#` starts a comment; blank lines ignored.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::ConfigError, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return entries;
}

namespace detail {

inline const std::set<std::string>& flag_options() {
  static const std::set<std::string> flags{"strict-paper-vpb"};
  return flags;
}

/// Options that may not be combined; a command-line occurrence of either
/// suppresses both from the config file.
inline std::string exclusion_partner(const std::string& key) {
  if (key == "eta") return "eta-db";
  if (key == "eta-db") return "eta";
  return {};
}

inline std::string option_key(const std::string& token) {
  if (token.size() < 3 || token.rfind("--", 0) != 0) return {};
  std::string key = token.substr(2);
  if (const auto eq = key.find('='); eq != std::string::npos) key.erase(eq);
  return key;
}

/// Splices config-file entries in front of the command-line options so that
/// explicit flags win. Returns the argument list without `--config`.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> cli;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a file path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      cli.push_back(args[i]);
    }
  }
  if (!config_path) return cli;

  std::set<std::string> given;
  for (const auto& t : cli) {
    if (auto k = option_key(t); !k.empty()) given.insert(k);
  }

  std::optional<std::string> command;
  std::vector<std::string> from_file;
  for (const auto& [key, value] : read_config_file(*config_path)) {
    if (key == "command" || key == "subcommand") {
      command = value;
      continue;
    }
    if (given.count(key) || given.count(exclusion_partner(key))) continue;
    if (flag_options().count(key)) {
      if (value == "true" || value == "1" || value == "yes") from_file.push_back("--" + key);
      else if (value != "false" && value != "0" && value != "no") {
        fail(ErrorCode::ConfigError, "flag '" + key + "' expects true/false");
      }
      continue;
    }
    from_file.push_back("--" + key);
    from_file.push_back(value);
  }

  std::vector<std::string> out;
  auto first_positional = std::find_if(cli.begin(), cli.end(), [](const std::string& t) { return t.rfind("-", 0) != 0; });
  if (first_positional == cli.end()) {
    if (!command) return cli;  // nothing to dispatch to; let the parser report it
    out.push_back(*command);
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), cli.begin(), cli.end());
    return out;
  }
  out.insert(out.end(), cli.begin(), first_positional + 1);
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), first_positional + 1, cli.end());
  return out;
}

/// Parses `lo:hi:step`, or `lo:hi` (resolution set by the caller).
inline Grid parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("range", "cannot parse '" + spec + "' as lo:hi[:step]");
    }
  }
  if (parts.size() == 3) {
    try {
      return Grid::from_step(parts[0], parts[1], parts[2]);
    } catch (const Error& e) {
      throw CLI::ValidationError("range", e.what());
    }
  }
  if (parts.size() == 2) return Grid{parts[0], parts[1], 2};
  throw CLI::ValidationError("range", "expected lo:hi[:step], got '" + spec + "'");
}

struct Common {
  double vs = 1.0;
  double vm = 0.0;
  double beta = 1.0;
  std::optional<double> eta;
  std::optional<double> eta_db;
  std::optional<double> eta_p;
  double eps = 0.0;
  std::optional<double> eps_x;
  std::optional<double> eps_p;
  std::optional<double> vpb;
  std::string dir = "dr";
  bool strict = false;
  std::size_t threads = default_thread_count();
  std::size_t grid_points = 1001;
  std::string output;
  std::string format = "csv";

  ProtocolParams params() const { return {vs, vm, beta}; }
  Direction direction() const { return dir == "rr" ? Direction::Reverse : Direction::Direct; }
  VpbConvention convention() const { return strict ? VpbConvention::StrictPaper : VpbConvention::VacuumRestored; }

  double eta_value() const {
    if (eta_db) return db_to_eta(*eta_db);
    return eta.value_or(1.0);
  }

  ChannelParams channel() const {
    const double e = eta_value();
    return {e, eta_p.value_or(e), eps_x.value_or(eps), eps_p.value_or(eps)};
  }

  SweepConfig sweep_config() const {
    SweepConfig c;
    c.convention = convention();
    c.threads = threads;
    c.search.grid_points = grid_points;
    return c;
  }
};

inline void add_protocol_options(CLI::App* sub, Common& c) {
  sub->add_option("--vs", c.vs, "signal variance in the modulated quadrature (SNU)")->capture_default_str();
  sub->add_option("--vm", c.vm, "modulation variance (SNU)")->capture_default_str();
  sub->add_option("--beta", c.beta, "reconciliation efficiency in (0, 1]")->capture_default_str();
}

inline void add_attenuation_options(CLI::App* sub, Common& c) {
  auto* lin = sub->add_option("--eta", c.eta, "channel transmittance (linear)");
  auto* db = sub->add_option("--eta-db", c.eta_db, "channel attenuation in dB");
  lin->excludes(db);
  db->excludes(lin);
}

inline void add_run_options(CLI::App* sub, Common& c) {
  sub->add_flag("--strict-paper-vpb", c.strict, "drop the (1 - eta) vacuum term from Bob's p-variance");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--grid-points", c.grid_points, "worst-case C_p grid size")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  sub->add_option("--output,-o", c.output, "output file (default: standard output)");
}

inline void add_direction_option(CLI::App* sub, Common& c) {
  sub->add_option("--dir", c.dir, "reconciliation direction")
      ->check(CLI::IsMember({"dr", "rr"}))
      ->capture_default_str();
}

/// Every parameter-bearing option of `sub`, as given or defaulted, in
/// declaration order. Output routing and thread count are excluded so that
/// results do not depend on them.
inline Provenance collect_provenance(const CLI::App* sub) {
  Provenance p;
  p.emplace_back("command", sub->get_name());
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "output" || name == "threads") continue;
    if (opt->get_type_size() == 0) {
      p.emplace_back(name, opt->count() > 0 ? "true" : "false");
      continue;
    }
    if (opt->count() > 0) {
      std::string joined;
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : " ") + r;
      p.emplace_back(name, joined);
    } else if (!opt->get_default_str().empty()) {
      p.emplace_back(name, opt->get_default_str());
    }
  }
  return p;
}

class Output {
 public:
  explicit Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) fail(ErrorCode::ConfigError, "cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline nlohmann::ordered_json nullable(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <class F>
std::optional<double> domain_or_null(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DomainError) throw;
    return std::nullopt;
  }
}

}  // namespace detail

/// Entry point. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Security analysis of unidimensional CV QKD with squeezed, coherent and antisqueezed states",
               "udqkd"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.footer("Options may also come from a key=value file given with --config FILE; flags override it.");

  detail::Common c;
  std::string mode = "free-vpb";
  std::string x_range_spec;
  std::string cp_range_spec = "-4:1";
  std::string db_spec;
  std::size_t nx = 400;
  std::size_t ny = 400;
  double tol = 0.0;

  auto* keyrate = app.add_subcommand("keyrate", "worst-case key rate at one parameter point (JSON)");
  detail::add_protocol_options(keyrate, c);
  detail::add_attenuation_options(keyrate, c);
  keyrate->add_option("--eta-p", c.eta_p, "p-quadrature transmittance (default: same as --eta)");
  keyrate->add_option("--eps", c.eps, "excess noise in both quadratures (SNU)")->capture_default_str();
  keyrate->add_option("--eps-x", c.eps_x, "x-quadrature excess noise (overrides --eps)");
  keyrate->add_option("--eps-p", c.eps_p, "p-quadrature excess noise (overrides --eps)");
  keyrate->add_option("--vpb", c.vpb, "measured p-variance at Bob (default: from the channel)");
  detail::add_direction_option(keyrate, c);
  detail::add_run_options(keyrate, c);

  auto* region = app.add_subcommand("region", "physicality/security classification grid (JSON)");
  detail::add_protocol_options(region, c);
  detail::add_attenuation_options(region, c);
  region->add_option("--eps,--eps-x", c.eps, "x-quadrature excess noise (SNU)")->capture_default_str();
  region->add_option("--mode", mode, "x axis: Bob's p-variance or symmetric p excess noise")
      ->check(CLI::IsMember({"free-vpb", "symmetric-noise"}))
      ->capture_default_str();
  region->add_option("--x-range", x_range_spec, "x axis lo:hi (default 0.5:3 or 0:0.5)");
  region->add_option("--cp-range", cp_range_spec, "C_p axis lo:hi")->capture_default_str();
  region->add_option("--nx", nx, "x resolution")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  region->add_option("--ny", ny, "C_p resolution")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  detail::add_run_options(region, c);

  auto* sweep = app.add_subcommand("sweep-loss", "key rate versus attenuation, symmetric channel");
  detail::add_protocol_options(sweep, c);
  sweep->add_option("--eps", c.eps, "excess noise in both quadratures (SNU)")->capture_default_str();
  detail::add_direction_option(sweep, c);
  sweep->add_option("--db", db_spec, "attenuation grid lo:hi:step (default 0:3 with 200 points)");
  sweep->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  detail::add_run_options(sweep, c);

  auto* noise = app.add_subcommand("max-noise", "maximal tolerable excess noise, symmetric channel");
  detail::add_protocol_options(noise, c);
  detail::add_direction_option(noise, c);
  noise->add_option("--db", db_spec, "attenuation in dB, or grid lo:hi:step")->required();
  noise->add_option("--tol", tol, "bisection tolerance on eps (default 1e-6)");
  noise->add_option("--format", c.format, "output format for grids")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  detail::add_run_options(noise, c);

  double asym_vs = 1.0;
  double asym_eta = 0.5;
  auto* asym = app.add_subcommand("asymptotic", "closed-form key rates for V_M -> infinity (JSON)");
  asym->add_option("--vs", asym_vs, "signal variance")->required();
  asym->add_option("--eta", asym_eta, "channel transmittance in (0, 1)")->required();

  try {
    std::vector<std::string> expanded = detail::expand_config(args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << e.name() << '\n' << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const Provenance provenance = detail::collect_provenance(sub);

  // Validation before dispatch: argument errors exit with 2.
  try {
    if (sub != asym) {
      c.params().validate();
      if (sub == keyrate || sub == region) c.channel().validate();
      if (c.threads == 0) fail(ErrorCode::InvalidParameter, "--threads must be >= 1");
      if (c.eps < 0.0) fail(ErrorCode::InvalidParameter, "excess noise must be >= 0");
    }
  } catch (const Error& e) {
    err << e.name() << '\n' << e.what() << '\n' << sub->help();
    return kExitUsage;
  }

  try {
    if (sub == keyrate) {
      const ChannelParams chan = c.channel();
      const double vp_b = c.vpb ? *c.vpb : expected_vpb(c.params(), chan, c.convention());
      const SecurityAssessment r = key_rate(c.params(), chan, vp_b, c.direction(), c.sweep_config().search);
      nlohmann::ordered_json j;
      j["provenance"] = provenance_json(provenance);
      j["direction"] = std::string(to_string(r.direction));
      j["vp_b"] = vp_b;
      j["mutual_info"] = r.mutual_info;
      j["holevo"] = r.holevo;
      j["key_rate"] = r.key_rate;
      j["worst_cp"] = r.worst_cp;
      j["cp_interval"] = {r.cp_interval.lo, r.cp_interval.hi};
      j["physical"] = r.physical;
      detail::Output o(c.output, out);
      o.stream() << j.dump(2) << '\n';
    } else if (sub == region) {
      SweepConfig cfg = c.sweep_config();
      const RegionMode m = mode == "free-vpb" ? RegionMode::FreeVpB : RegionMode::SymmetricNoise;
      Grid x = x_range_spec.empty() ? (m == RegionMode::FreeVpB ? Grid{0.5, 3.0, 2} : Grid{0.0, 0.5, 2})
                                    : detail::parse_range(x_range_spec);
      Grid y = detail::parse_range(cp_range_spec);
      x.points = nx;
      y.points = ny;
      cfg.x_axis = x;
      cfg.cp_axis = y;
      const RegionMap map = scan_region(c.params(), XChannel{c.eta_value(), c.eps}, cfg, m);
      detail::Output o(c.output, out);
      o.stream() << region_json(map, provenance).dump() << '\n';
    } else if (sub == sweep) {
      const Grid db = db_spec.empty() ? Grid{0.0, 3.0, 200} : detail::parse_range(db_spec);
      const Curve curve = keyrate_vs_attenuation(c.params(), c.eps, db, c.direction(), c.sweep_config());
      detail::Output o(c.output, out);
      if (c.format == "json") {
        o.stream() << curve_json(curve, provenance).dump(2) << '\n';
      } else {
        write_curve_csv(o.stream(), curve, provenance);
      }
    } else if (sub == noise) {
      SweepConfig cfg = c.sweep_config();
      if (tol > 0.0) cfg.noise_tol = tol;
      if (db_spec.find(':') == std::string::npos) {
        double db = 0.0;
        try {
          db = std::stod(db_spec);
        } catch (const std::exception&) {
          err << "InvalidParameter\ncannot parse --db '" << db_spec << "'\n";
          return kExitUsage;
        }
        const double eps_max = max_tolerable_noise(c.params(), db, c.direction(), cfg);
        nlohmann::ordered_json j;
        j["provenance"] = provenance_json(provenance);
        j["attenuation_db"] = db;
        j["eps_max"] = eps_max;
        detail::Output o(c.output, out);
        o.stream() << j.dump(2) << '\n';
      } else {
        const Curve curve = max_noise_vs_attenuation(c.params(), detail::parse_range(db_spec), c.direction(), cfg);
        detail::Output o(c.output, out);
        if (c.format == "json") {
          o.stream() << curve_json(curve, provenance).dump(2) << '\n';
        } else {
          write_curve_csv(o.stream(), curve, provenance);
        }
      }
    } else if (sub == asym) {
      const bool coherent = std::abs(asym_vs - 1.0) <= 1e-12;
      const auto dr_general = detail::domain_or_null([&] { return asymptotic_key_rate_dr(asym_vs, asym_eta); });
      const auto rr_general = detail::domain_or_null([&] { return asymptotic_key_rate_rr(asym_vs, asym_eta); });
      const auto dr_coh = detail::domain_or_null([&] { return asymptotic_key_rate_dr_coherent(asym_eta); });
      const auto rr_coh = detail::domain_or_null([&] { return asymptotic_key_rate_rr_coherent(asym_eta); });
      if (!dr_coh) fail(ErrorCode::DomainError, "transmittance must lie in (0, 1)");
      nlohmann::ordered_json j;
      j["provenance"] = provenance_json(provenance);
      j["dr"] = detail::nullable(coherent ? dr_coh : dr_general);
      j["rr"] = detail::nullable(coherent ? rr_coh : rr_general);
      j["dr_general"] = detail::nullable(dr_general);
      j["rr_general"] = detail::nullable(rr_general);
      j["dr_coherent"] = detail::nullable(dr_coh);
      j["rr_coherent"] = detail::nullable(rr_coh);
      out << j.dump(2) << '\n';
    }
  } catch (const Error& e) {
    const bool usage = e.code() == ErrorCode::InvalidParameter || e.code() == ErrorCode::ConfigError;
    err << e.name() << '\n' << e.what() << '\n';
    return usage ? kExitUsage : kExitDomain;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << sub->help();
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace udqkd::cli
