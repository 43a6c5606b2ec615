#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calogero/errors.hpp"
#include "calogero/fock.hpp"
#include "calogero/gram.hpp"
#include "calogero/opexpr.hpp"
#include "calogero/relations.hpp"
#include "calogero/serialize.hpp"
#include "calogero/singlemode.hpp"

// Command-line front end. Exit codes: 0 success, 1 internal error,
// 2 invalid input or guard violation, 3 a check or relation failed.

namespace calogero::cli {

enum ExitCode { ok = 0, internal_error = 1, invalid_input = 2, check_failed = 3 };

/// Invalid flag values or combinations.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::size_t modes = 2;
  std::size_t particles = 2;
  std::string nu = "symbolic";
  std::string basis = "sequence";
  std::size_t degree = 2;
  std::string nu_min = "-3/5";
  std::string nu_max = "1";
  std::string step = "1/64";
  std::string output;
  std::string format = "csv";
  std::size_t threads = Config{}.threads;
  std::size_t max_basis = Config{}.max_basis;
  std::size_t max_modes = Config{}.max_modes;
  std::size_t max_degree = Config{}.max_degree;
  std::size_t max_particles = 4;
  std::string which = "alpha";
  std::size_t terms = 8;
  long precision = BigFloat::default_precision;
  std::string phi;
  std::string target = "K12";
  std::string relations = "all";
  bool modulo_null = false;

  Config limits() const {
    Config c;
    c.threads = threads;
    c.max_basis = max_basis;
    c.max_modes = max_modes;
    c.max_degree = max_degree;
    return c;
  }
  bool symbolic() const { return nu == "symbolic"; }
  Rat numeric_nu() const {
    if (symbolic()) throw UsageError("this command needs a numeric --nu (p/q)");
    return Rat::parse(nu);
  }
};

/// K12 / K1,2, N12, N1, N, AA12 with 1-based modes.
inline FitTarget parse_target(const std::string& text, std::size_t modes) {
  if (text == "N") return FitTarget::total_number();
  static const std::regex pattern(R"(^(K|N|AA)(\d+)(?:,(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError("unknown fit target '" + text + "'");
  std::string first = m[2];
  std::string second = m[3];
  if (second.empty()) {
    if (first.size() == 2) {
      second = first.substr(1);
      first = first.substr(0, 1);
    } else if (m[1] != "N") {
      throw UsageError("fit target '" + text + "' needs two modes, e.g. K1,2");
    }
  }
  auto mode = [&](const std::string& s) {
    const std::size_t v = std::stoul(s);
    if (v < 1 || v > modes) throw UsageError("mode " + s + " out of range 1.." + std::to_string(modes));
    return v - 1;
  };
  const std::size_t i = mode(first);
  const std::size_t j = second.empty() ? i : mode(second);
  if (m[1] == "K") {
    if (i == j) throw UsageError("exchange target needs two distinct modes");
    return FitTarget::exchange(i, j);
  }
  if (m[1] == "N") return FitTarget::transition(i, j);
  return FitTarget::product(i, j);
}

inline SeriesKind parse_series(const std::string& s) {
  if (s == "alpha") return SeriesKind::alpha;
  if (s == "beta") return SeriesKind::beta;
  if (s == "gamma") return SeriesKind::gamma;
  if (s == "c") return SeriesKind::c;
  throw UsageError("unknown series '" + s + "' (alpha, beta, gamma, c)");
}

inline BasisKind parse_basis(const std::string& s) {
  if (s == "sequence") return BasisKind::sequence;
  if (s == "multiset") return BasisKind::multiset;
  throw UsageError("unknown basis '" + s + "' (sequence, multiset)");
}

/// Errors caused by the request itself rather than by a defect.
inline bool is_input_error(const Error& e) {
  return dynamic_cast<const UsageError*>(&e) || dynamic_cast<const BasisTooLarge*>(&e) ||
         dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidMode*>(&e) ||
         dynamic_cast<const InvalidModePair*>(&e) || dynamic_cast<const UnknownRelation*>(&e) ||
         dynamic_cast<const PoleError*>(&e) || dynamic_cast<const ZeroPhi*>(&e) ||
         dynamic_cast<const ZeroPivot*>(&e) || dynamic_cast<const DivideByZero*>(&e);
}

namespace detail {

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline int cmd_gram(const RunConfig& cfg, std::string& payload) {
  const BasisKind kind = parse_basis(cfg.basis);
  if (cfg.symbolic()) {
    payload = dump(build_gram(AlgebraParams(cfg.modes, NuScalar::nu()), cfg.particles, kind, cfg.limits()));
  } else {
    payload = dump(build_gram(CalogeroAlgebra<Rat>(cfg.modes, cfg.numeric_nu()), cfg.particles, kind, cfg.limits()));
  }
  return ok;
}

inline int cmd_spectrum(const RunConfig& cfg, std::string& payload) {
  const SpectrumReport rep = spectrum(cfg.modes, cfg.particles, cfg.numeric_nu(), cfg.limits());
  json j = rep;
  j["modes"] = cfg.modes;
  j["particles"] = cfg.particles;
  j["zero_eigenvalues"] = count_zero_eigenvalues(rep.eigenvalues);
  payload = dump(j);
  return ok;
}

inline int cmd_scan(const RunConfig& cfg, std::string& payload) {
  const auto grid = rational_grid(Rat::parse(cfg.nu_min), Rat::parse(cfg.nu_max), Rat::parse(cfg.step));
  const auto points = positivity_scan(cfg.modes, cfg.particles, grid, cfg.limits());
  if (cfg.format == "csv") {
    payload = scan_csv(points, multiset_count(cfg.modes, cfg.particles));
  } else {
    payload = dump(json{{"modes", cfg.modes}, {"particles", cfg.particles}, {"points", scan_json(points)}});
  }
  return ok;
}

inline int cmd_critical(const RunConfig& cfg, std::string& payload) {
  const auto levels = critical_check(cfg.modes, cfg.max_particles, cfg.limits());
  bool all = true;
  for (const auto& l : levels) all = all && l.passed;
  payload = dump(json{{"modes", cfg.modes},
                      {"nu", Rat(-1, static_cast<long>(cfg.modes))},
                      {"levels", levels},
                      {"passed", all}});
  return all ? ok : check_failed;
}

inline std::vector<NuScalar> parse_phi_table(const std::string& text) {
  std::vector<NuScalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.emplace_back(Rat::parse(item));
  if (out.empty()) throw UsageError("--phi needs a comma-separated list of rationals");
  return out;
}

inline int cmd_single(const RunConfig& cfg, std::string& payload) {
  const SeriesKind kind = parse_series(cfg.which);
  const SingleModeAlgebra alg = !cfg.phi.empty()    ? SingleModeAlgebra::from_table(parse_phi_table(cfg.phi))
                                : cfg.symbolic() ? SingleModeAlgebra(NuScalar::nu())
                                                 : SingleModeAlgebra(NuScalar(cfg.numeric_nu()));
  json j{{"series", to_string(kind)}, {"terms", cfg.terms}};
  j["nu"] = cfg.phi.empty() ? cfg.nu : "table";
  if (kind == SeriesKind::c) {
    if (cfg.precision < 64) throw UsageError("--precision must be at least 64 bits");
    json values = json::array();
    for (const auto& c : c_series(alg, cfg.terms, cfg.precision)) values.push_back(c.str());
    j["precision"] = cfg.precision;
    j["values"] = values;
  } else {
    json values = json::array();
    for (const auto& c : series(kind, cfg.terms, alg)) values.push_back(c);
    j["constant"] = series_target(kind, alg).constant;
    j["values"] = values;
  }
  payload = dump(j);
  return ok;
}

template <Scalar S>
json fit_json(const CalogeroAlgebra<S>& alg, const RunConfig& cfg) {
  const FitTarget t = parse_target(cfg.target, cfg.modes);
  check_limits(cfg.modes, cfg.degree, BasisKind::multiset, cfg.limits());
  FitOptions opt;
  opt.modulo_null = cfg.modulo_null;
  opt.threads = cfg.threads;
  json j = fit_expansion(alg, t, cfg.degree, opt);
  j["target"] = t.name();
  j["modes"] = cfg.modes;
  j["nu"] = cfg.nu;
  j["modulo_null"] = cfg.modulo_null;
  return j;
}

inline int cmd_fit(const RunConfig& cfg, std::string& payload) {
  payload = dump(cfg.symbolic() ? fit_json(AlgebraParams(cfg.modes, NuScalar::nu()), cfg)
                                : fit_json(CalogeroAlgebra<Rat>(cfg.modes, cfg.numeric_nu()), cfg));
  return ok;
}

template <Scalar S>
int verify_with(const CalogeroAlgebra<S>& alg, const RunConfig& cfg, std::string& payload) {
  json reports = json::array();
  bool all = true;
  for (const auto& name : parse_relation_list(cfg.relations)) {
    const RelationReport r = verify_relation(name, alg, cfg.degree, cfg.limits());
    all = all && r.passed;
    reports.push_back(r);
  }
  payload = dump(json{{"modes", cfg.modes},
                      {"degree", cfg.degree},
                      {"nu", cfg.nu},
                      {"relations", reports},
                      {"passed", all}});
  return all ? ok : check_failed;
}

inline int cmd_verify(const RunConfig& cfg, std::string& payload) {
  if (cfg.symbolic()) return verify_with(AlgebraParams(cfg.modes, NuScalar::nu()), cfg, payload);
  return verify_with(CalogeroAlgebra<Rat>(cfg.modes, cfg.numeric_nu()), cfg, payload);
}

}  // namespace detail

/// Parses args (without the program name), runs one subcommand and writes
/// its payload to --output or to `out`. Diagnostics are single lines on `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Fock-space Gram matrices and operator expansions of the S_M-extended Heisenberg algebra",
               "calogero"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output, "write the payload to this file instead of stdout");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-basis", cfg.max_basis, "largest basis allowed")->check(CLI::PositiveNumber);
    sub->add_option("--max-modes", cfg.max_modes, "largest mode count allowed")->check(CLI::PositiveNumber);
    sub->add_option("--max-degree", cfg.max_degree, "largest particle number or degree allowed");
  };
  auto modes = [&](CLI::App* sub) { sub->add_option("--modes,-M", cfg.modes, "mode count M")->check(CLI::PositiveNumber); };
  auto nu = [&](CLI::App* sub, const char* help) { return sub->add_option("--nu", cfg.nu, help); };

  auto* gram = app.add_subcommand("gram", "Gram matrix of the n-particle monomials");
  modes(gram);
  gram->add_option("--particles,-n", cfg.particles, "particle number n");
  nu(gram, "coupling p/q or 'symbolic'");
  gram->add_option("--basis", cfg.basis, "sequence or multiset");
  common(gram);

  auto* spec = app.add_subcommand("spectrum", "eigenvalues, exact rank and positivity at a numeric coupling");
  modes(spec);
  spec->add_option("--particles,-n", cfg.particles, "particle number n");
  nu(spec, "coupling p/q")->required();
  common(spec);

  auto* scan = app.add_subcommand("scan", "positivity over a rational grid of couplings");
  modes(scan);
  scan->add_option("--particles,-n", cfg.particles, "particle number n");
  scan->add_option("--nu-min", cfg.nu_min, "first grid point p/q");
  scan->add_option("--nu-max", cfg.nu_max, "last grid point p/q");
  scan->add_option("--step", cfg.step, "grid step p/q");
  scan->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  common(scan);

  auto* crit = app.add_subcommand("critical", "Gram matrices at the critical coupling -1/M");
  modes(crit);
  crit->add_option("--max-particles", cfg.max_particles, "check particle numbers 1..k")->check(CLI::PositiveNumber);
  common(crit);

  auto* single = app.add_subcommand("single", "single-mode expansion coefficients");
  single->add_option("--which", cfg.which, "alpha, beta, gamma or c");
  single->add_option("--terms,-K", cfg.terms, "number of coefficients");
  nu(single, "coupling p/q or 'symbolic'");
  single->add_option("--phi", cfg.phi, "structure function table phi(1),phi(2),... instead of the built-in rule");
  single->add_option("--precision", cfg.precision, "bits for the c series");
  common(single);

  auto* fit = app.add_subcommand("fit", "normally ordered expansion of an operator by exact fitting");
  modes(fit);
  fit->add_option("--target", cfg.target, "K12, N12, N1, N or AA12 (1-based modes)");
  fit->add_option("--degree,-D", cfg.degree, "largest word degree");
  nu(fit, "coupling p/q or 'symbolic'");
  fit->add_flag("--modulo-null", cfg.modulo_null, "match the target only up to null states");
  common(fit);

  auto* verify = app.add_subcommand("verify", "check operator relations on all monomials up to a degree");
  modes(verify);
  verify->add_option("--degree,-D", cfg.degree, "largest monomial degree");
  nu(verify, "coupling p/q or 'symbolic'");
  verify->add_option("--relations", cfg.relations, "'all' or a comma-separated list");
  common(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  }

  std::string payload;
  int code = ok;
  try {
    if (cfg.threads == 0) throw UsageError("--threads must be positive");
    if (!cfg.symbolic()) Rat::parse(cfg.nu);
    if (gram->parsed()) code = detail::cmd_gram(cfg, payload);
    else if (spec->parsed()) code = detail::cmd_spectrum(cfg, payload);
    else if (scan->parsed()) code = detail::cmd_scan(cfg, payload);
    else if (crit->parsed()) code = detail::cmd_critical(cfg, payload);
    else if (single->parsed()) code = detail::cmd_single(cfg, payload);
    else if (fit->parsed()) code = detail::cmd_fit(cfg, payload);
    else if (verify->parsed()) code = detail::cmd_verify(cfg, payload);
  } catch (const Error& e) {
    err << "error: " << e.what() << (dynamic_cast<const ZeroPivot*>(&e) ? " (try --modulo-null)" : "") << "\n";
    return is_input_error(e) ? invalid_input : internal_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }

  if (cfg.output.empty()) {
    out << payload;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!(f << payload)) {
      err << "error: cannot write " << cfg.output << "\n";
      return internal_error;
    }
  }
  return code;
}

}  // namespace calogero::cli
