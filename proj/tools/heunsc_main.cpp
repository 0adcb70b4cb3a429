#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heunsc/birthdeath.hpp"
#include "heunsc/closed_forms.hpp"
#include "heunsc/heun.hpp"
#include "heunsc/json_io.hpp"
#include "heunsc/stieltjes.hpp"
#include "heunsc/transforms.hpp"
#include "heunsc/verify.hpp"

namespace {

using heunsc::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  double series_tol = 1e-12;
  double quad_tol = 1e-10;
  double cf_tol = 1e-13;
  double r_max = 0.9;
  int n_trunc = 120;
  double t_max = 10.0;
  double dt = 0.0;
  std::string format = "json";
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) {
    return "";
  }
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Config file: one `key = value` per line; '#' starts a comment.  Keys match
// the documented schema (series_tol, quad_tol, cf_tol, r_max, n_trunc,
// t_max, dt, format).
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config file not readable: " + path);
  }
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line missing '=': " + line);
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    try {
      if (key == "series_tol") {
        cfg.series_tol = std::stod(value);
      } else if (key == "quad_tol") {
        cfg.quad_tol = std::stod(value);
      } else if (key == "cf_tol") {
        cfg.cf_tol = std::stod(value);
      } else if (key == "r_max") {
        cfg.r_max = std::stod(value);
      } else if (key == "n_trunc") {
        cfg.n_trunc = std::stoi(value);
      } else if (key == "t_max") {
        cfg.t_max = std::stod(value);
      } else if (key == "dt") {
        cfg.dt = std::stod(value);
      } else if (key == "format") {
        cfg.format = value;
      } else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad config value for " + key + ": " +
                                  value);
    }
  }
}

void validate_config(const RunConfig& cfg) {
  if (!(cfg.series_tol > 0.0 && cfg.quad_tol > 0.0 && cfg.cf_tol > 0.0)) {
    throw std::invalid_argument("config: tolerances must be positive");
  }
  if (!(cfg.r_max > 0.0 && cfg.r_max < 1.0)) {
    throw std::invalid_argument("config: r_max must lie in (0, 1)");
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    throw std::invalid_argument("config: format must be json or csv");
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct HeunFlags {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0, eps = 0.0;
  double s = 0.0, k2 = 0.0, c = 0.0, mu = 0.0;

  heunsc::AssocParams assoc() const {
    heunsc::AssocParams a;
    a.base = {alpha, beta, gamma, delta, eps, s, k2};
    a.c = c;
    a.mu = mu;
    return a;
  }
};

void add_heun_flags(CLI::App* cmd, HeunFlags& f, bool with_assoc) {
  cmd->add_option("--alpha", f.alpha, "exponent parameter alpha")->required();
  cmd->add_option("--beta", f.beta, "exponent parameter beta")->required();
  cmd->add_option("--gamma", f.gamma, "exponent parameter gamma")->required();
  cmd->add_option("--delta", f.delta, "exponent parameter delta")->required();
  cmd->add_option("--eps", f.eps, "exponent parameter eps")->required();
  cmd->add_option("--s", f.s, "accessory parameter")->required();
  cmd->add_option("--k2", f.k2, "squared elliptic modulus")->required();
  if (with_assoc) {
    cmd->add_option("--c", f.c, "association parameter")->required();
    cmd->add_option("--mu", f.mu, "co-recursivity parameter")->required();
  }
}

int run_eval(const RunConfig& cfg, const HeunFlags& flags, double w,
             bool with_assoc) {
  const heunsc::AssocParams a = flags.assoc();
  a.validate();
  const heunsc::CoeffSeries series =
      heunsc::series_to_tol(a, cfg.series_tol, cfg.r_max);
  const heunsc::SeriesValue v =
      heunsc::eval_series_full(series, w, cfg.r_max);
  if (cfg.format == "csv") {
    std::cout << "w,value,N,tail_estimate\n"
              << num(w) << "," << num(v.value) << "," << series.order() << ","
              << num(v.tail_estimate) << "\n";
    return kExitOk;
  }
  ordered_json j;
  j["command"] = with_assoc ? "assoc-eval" : "eval";
  j["params"] = with_assoc ? heunsc::to_json(a) : heunsc::to_json(a.base);
  j["w"] = w;
  j["value"] = v.value;
  j["N"] = series.order();
  j["tail_estimate"] = v.tail_estimate;
  emit(j);
  return kExitOk;
}

int run_closed_form(const RunConfig& cfg, int family_id, double c, double mu,
                    double sigma, double k2, const std::vector<double>& ws) {
  const heunsc::FamilySpec& spec = heunsc::family(family_id);
  const heunsc::AssocParams a =
      heunsc::family_assoc_params(spec, c, mu, sigma, k2);
  a.validate();
  const heunsc::CoeffSeries series =
      heunsc::series_to_tol(a, cfg.series_tol, cfg.r_max);

  ordered_json rows = ordered_json::array();
  for (double w : ws) {
    const double sv = heunsc::eval_series(series, w, cfg.r_max);
    const double cv =
        heunsc::eval_closed_form(spec, c, mu, sigma, w, k2, cfg.quad_tol);
    rows.push_back(ordered_json{{"w", w},
                                {"series_value", sv},
                                {"closed_form_value", cv},
                                {"abs_diff", std::abs(sv - cv)}});
  }
  if (cfg.format == "csv") {
    std::cout << "w,series_value,closed_form_value,abs_diff\n";
    for (const auto& r : rows) {
      std::cout << num(r["w"]) << "," << num(r["series_value"]) << ","
                << num(r["closed_form_value"]) << "," << num(r["abs_diff"])
                << "\n";
    }
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "closed-form";
  j["family"] = family_id;
  j["params"] = heunsc::to_json(a);
  j["sigma"] = sigma;
  j["rows"] = rows;
  emit(j);
  return kExitOk;
}

int run_transform(const RunConfig& cfg, const HeunFlags& flags,
                  const std::string& kind, const std::string& pivot_name,
                  double w) {
  const heunsc::Pivot pivot = pivot_name == "alpha" ? heunsc::Pivot::alpha
                                                    : heunsc::Pivot::beta;
  const heunsc::AssocParams a = flags.assoc();
  const heunsc::TransformReport rep =
      kind == "first"
          ? heunsc::first_transform(a, w, pivot, cfg.quad_tol, cfg.series_tol)
          : heunsc::second_transform(a, w, pivot, cfg.quad_tol,
                                     cfg.series_tol);
  if (cfg.format == "csv") {
    std::cout << "kind,pivot,w,lhs,rhs,abs_diff\n"
              << kind << "," << pivot_name << "," << num(w) << ","
              << num(rep.lhs) << "," << num(rep.rhs) << ","
              << num(rep.abs_diff) << "\n";
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "transform";
  j["kind"] = kind;
  j["pivot"] = pivot_name;
  j["w"] = w;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["abs_diff"] = rep.abs_diff;
  j["params_in"] = heunsc::to_json(rep.params_in);
  j["params_out"] = heunsc::to_json(rep.params_out);
  emit(j);
  return kExitOk;
}

int run_stieltjes(const RunConfig& cfg, double c, double mu, double k2,
                  const std::vector<double>& zs) {
  heunsc::SCRates rates{c, mu, k2};
  ordered_json rows = ordered_json::array();
  for (double z : zs) {
    const std::complex<double> zc{z, 0.0};
    const heunsc::SpectralResult d =
        heunsc::stieltjes_d_ratio(rates, zc, cfg.quad_tol);
    const heunsc::SpectralResult f =
        heunsc::stieltjes_cf(rates, zc, cfg.cf_tol);
    const double rel =
        std::abs(d.value - f.value) / std::abs(f.value);
    rows.push_back(ordered_json{{"z", z},
                                {"s_d_ratio", d.value.real()},
                                {"s_cf", f.value.real()},
                                {"rel_diff", rel}});
  }
  if (cfg.format == "csv") {
    std::cout << "z,s_d_ratio,s_cf,rel_diff\n";
    for (const auto& r : rows) {
      std::cout << num(r["z"]) << "," << num(r["s_d_ratio"]) << ","
                << num(r["s_cf"]) << "," << num(r["rel_diff"]) << "\n";
    }
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "stieltjes";
  j["params"] = ordered_json{{"c", c}, {"mu", mu}, {"k2", k2}};
  j["rows"] = rows;
  emit(j);
  return kExitOk;
}

int run_bd_check(const RunConfig& cfg, double c, double mu, double k2,
                 std::vector<double> ps, bool implicit, double tol,
                 const std::string& trajectory_out) {
  heunsc::SCRates rates{c, mu, k2};
  heunsc::BDOptions opts;
  opts.n_trunc = cfg.n_trunc;
  opts.t_max = cfg.t_max;
  opts.dt = cfg.dt;
  opts.implicit = implicit;
  if (ps.empty()) {
    ps = {0.5, 1.0, 2.0, 5.0};
  }

  const heunsc::Trajectory traj = heunsc::solve_kolmogorov(rates, opts);
  if (!trajectory_out.empty()) {
    std::ofstream out(trajectory_out);
    if (!out) {
      throw std::invalid_argument("cannot write trajectory file: " +
                                  trajectory_out);
    }
    out << "t,p00\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      out << num(traj.times[i]) << "," << num(traj.p00[i]) << "\n";
    }
  }

  bool ok = true;
  ordered_json rows = ordered_json::array();
  for (double p : ps) {
    const double lhs = heunsc::laplace_p00(traj, p);
    const heunsc::SpectralResult s =
        rates.c >= 0.5 ? heunsc::stieltjes_d_ratio(rates, {-p, 0.0})
                       : heunsc::stieltjes_cf(rates, {-p, 0.0});
    const double rhs = -s.value.real();
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    ok = ok && rel <= tol;
    rows.push_back(ordered_json{
        {"p", p}, {"lhs", lhs}, {"rhs", rhs}, {"rel_diff", rel}});
  }

  if (cfg.format == "csv") {
    std::cout << "p,lhs,rhs,rel_diff\n";
    for (const auto& r : rows) {
      std::cout << num(r["p"]) << "," << num(r["lhs"]) << ","
                << num(r["rhs"]) << "," << num(r["rel_diff"]) << "\n";
    }
  } else {
    ordered_json j;
    j["command"] = "bd-check";
    j["params"] = ordered_json{{"c", c}, {"mu", mu}, {"k2", k2}};
    j["options"] = ordered_json{{"n_trunc", opts.n_trunc},
                                {"t_max", opts.t_max},
                                {"dt", traj.dt},
                                {"implicit", implicit},
                                {"tol", tol}};
    j["rows"] = rows;
    j["pass"] = ok;
    emit(j);
  }
  return ok ? kExitOk : kExitNumerical;
}

int run_verify(const RunConfig& cfg, const std::string& suite, int jobs,
               bool quick) {
  heunsc::verify::SuiteResult res;
  if (suite == "bd") {
    res = heunsc::verify::birthdeath_suite(jobs, quick);
  } else {
    res = heunsc::verify::run_suite(suite, jobs);
  }

  if (cfg.format == "csv") {
    std::cout << "key,diff,tol,pass\n";
    for (const auto& c : res.cases) {
      std::cout << c.key << "," << num(c.diff) << "," << num(c.tol) << ","
                << (c.pass ? "true" : "false") << "\n";
    }
  } else {
    ordered_json cases = ordered_json::array();
    for (const auto& c : res.cases) {
      cases.push_back(ordered_json{{"key", c.key},
                                   {"diff", c.diff},
                                   {"tol", c.tol},
                                   {"pass", c.pass}});
    }
    ordered_json j;
    j["command"] = "verify";
    j["suite"] = res.name;
    j["cases"] = cases;
    j["pass"] = res.pass();
    if (const heunsc::verify::CaseResult* w = res.worst()) {
      j["worst"] = ordered_json{{"key", w->key},
                                {"diff", w->diff},
                                {"tol", w->tol},
                                {"pass", w->pass}};
    }
    emit(j);
  }
  if (!res.pass()) {
    if (const heunsc::verify::CaseResult* w = res.worst()) {
      std::cerr << "verify " << res.name << ": worst offender " << w->key
                << " diff " << num(w->diff) << " tol " << num(w->tol) << "\n";
    }
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heun-function toolkit: series evaluation, elliptic "
               "closed forms, integral transforms, and birth-death "
               "spectral cross-checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format;
  int jobs = 1;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", jobs, "worker pool size for sweeps")
      ->check(CLI::PositiveNumber);

  RunConfig cli_cfg;
  auto* opt_series_tol =
      app.add_option("--series-tol", cli_cfg.series_tol, "series tail tolerance");
  auto* opt_quad_tol =
      app.add_option("--quad-tol", cli_cfg.quad_tol, "quadrature tolerance");
  auto* opt_cf_tol = app.add_option("--cf-tol", cli_cfg.cf_tol,
                                    "continued-fraction tolerance");
  auto* opt_r_max = app.add_option("--r-max", cli_cfg.r_max,
                                   "series evaluation radius");
  auto* opt_n_trunc = app.add_option("--n-trunc", cli_cfg.n_trunc,
                                     "birth-death truncation level");
  auto* opt_t_max =
      app.add_option("--t-max", cli_cfg.t_max, "trajectory horizon");
  auto* opt_dt = app.add_option("--dt", cli_cfg.dt,
                                "trajectory step (0 = automatic)");

  HeunFlags eval_flags;
  double eval_w = 0.0;
  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate the Heun series");
  add_heun_flags(cmd_eval, eval_flags, false);
  cmd_eval->add_option("--w", eval_w, "evaluation point")->required();

  HeunFlags assoc_flags;
  double assoc_w = 0.0;
  CLI::App* cmd_assoc =
      app.add_subcommand("assoc-eval", "evaluate the associated Heun series");
  add_heun_flags(cmd_assoc, assoc_flags, true);
  cmd_assoc->add_option("--w", assoc_w, "evaluation point")->required();

  int cf_family = 1;
  double cf_c = 0.5, cf_mu = 0.0, cf_sigma = 0.0, cf_k2 = 0.5;
  std::vector<double> cf_ws;
  CLI::App* cmd_cf = app.add_subcommand(
      "closed-form", "compare a family's kernel integral with its series");
  cmd_cf->add_option("--family", cf_family, "family id 1..8")
      ->required()
      ->check(CLI::Range(1, 8));
  cmd_cf->add_option("--c", cf_c, "association parameter")->required();
  cmd_cf->add_option("--mu", cf_mu, "co-recursivity parameter")->required();
  cmd_cf->add_option("--sigma", cf_sigma, "spectral parameter")->required();
  cmd_cf->add_option("--k2", cf_k2, "squared elliptic modulus")->required();
  cmd_cf->add_option("--w", cf_ws, "evaluation points")->required();

  HeunFlags tr_flags;
  std::string tr_kind = "first", tr_pivot = "alpha";
  double tr_w = 0.0;
  CLI::App* cmd_tr =
      app.add_subcommand("transform", "check an integral transform identity");
  add_heun_flags(cmd_tr, tr_flags, true);
  cmd_tr->add_option("--kind", tr_kind, "first or second")
      ->check(CLI::IsMember({"first", "second"}));
  cmd_tr->add_option("--pivot", tr_pivot, "pivot exponent: alpha or beta")
      ->check(CLI::IsMember({"alpha", "beta"}));
  cmd_tr->add_option("--w", tr_w, "evaluation point")->required();

  double st_c = 0.75, st_mu = 0.0, st_k2 = 0.5;
  std::vector<double> st_zs;
  CLI::App* cmd_st = app.add_subcommand(
      "stieltjes", "Stieltjes transform by two independent methods");
  cmd_st->add_option("--c", st_c, "association parameter")->required();
  cmd_st->add_option("--mu", st_mu, "co-recursivity parameter")->required();
  cmd_st->add_option("--k2", st_k2, "squared elliptic modulus")->required();
  cmd_st->add_option("--z", st_zs, "evaluation points (negative reals)")
      ->required();

  double bd_c = 0.75, bd_mu = 0.0, bd_k2 = 0.5, bd_tol = 1e-3;
  std::vector<double> bd_ps;
  bool bd_implicit = false;
  std::string bd_traj_out;
  CLI::App* cmd_bd = app.add_subcommand(
      "bd-check", "Kolmogorov trajectory vs spectral Laplace transform");
  cmd_bd->add_option("--c", bd_c, "association parameter")->required();
  cmd_bd->add_option("--mu", bd_mu, "co-recursivity parameter")->required();
  cmd_bd->add_option("--k2", bd_k2, "squared elliptic modulus")->required();
  cmd_bd->add_option("--p", bd_ps, "Laplace abscissae (default 0.5 1 2 5)");
  cmd_bd->add_flag("--implicit", bd_implicit, "backward-difference stepper");
  cmd_bd->add_option("--tol", bd_tol, "relative agreement tolerance");
  cmd_bd->add_option("--trajectory-out", bd_traj_out,
                     "write sampled (t, p00) CSV to this path");

  std::string verify_suite;
  bool verify_quick = false;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run a module's invariant grid");
  cmd_verify->add_option("suite", verify_suite,
                         "closed-forms | transforms | stieltjes | bd")
      ->required();
  cmd_verify->add_flag("--quick", verify_quick,
                       "smaller grids for the bd suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (config_path.empty()) {
      if (const char* env = std::getenv("HEUNSC_CONFIG")) {
        config_path = env;
      }
    }
    if (!config_path.empty()) {
      apply_config(cfg, read_config(config_path));
    }
    if (opt_series_tol->count()) cfg.series_tol = cli_cfg.series_tol;
    if (opt_quad_tol->count()) cfg.quad_tol = cli_cfg.quad_tol;
    if (opt_cf_tol->count()) cfg.cf_tol = cli_cfg.cf_tol;
    if (opt_r_max->count()) cfg.r_max = cli_cfg.r_max;
    if (opt_n_trunc->count()) cfg.n_trunc = cli_cfg.n_trunc;
    if (opt_t_max->count()) cfg.t_max = cli_cfg.t_max;
    if (opt_dt->count()) cfg.dt = cli_cfg.dt;
    if (!format.empty()) cfg.format = format;
    validate_config(cfg);

    if (cmd_eval->parsed()) {
      return run_eval(cfg, eval_flags, eval_w, false);
    }
    if (cmd_assoc->parsed()) {
      return run_eval(cfg, assoc_flags, assoc_w, true);
    }
    if (cmd_cf->parsed()) {
      return run_closed_form(cfg, cf_family, cf_c, cf_mu, cf_sigma, cf_k2,
                             cf_ws);
    }
    if (cmd_tr->parsed()) {
      return run_transform(cfg, tr_flags, tr_kind, tr_pivot, tr_w);
    }
    if (cmd_st->parsed()) {
      return run_stieltjes(cfg, st_c, st_mu, st_k2, st_zs);
    }
    if (cmd_bd->parsed()) {
      return run_bd_check(cfg, bd_c, bd_mu, bd_k2, bd_ps, bd_implicit, bd_tol,
                          bd_traj_out);
    }
    if (cmd_verify->parsed()) {
      return run_verify(cfg, verify_suite, jobs, verify_quick);
    }
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
