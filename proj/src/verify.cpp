#include "heunsc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "heunsc/birthdeath.hpp"
#include "heunsc/closed_forms.hpp"
#include "heunsc/elliptic.hpp"
#include "heunsc/heun.hpp"
#include "heunsc/quadrature.hpp"
#include "heunsc/stieltjes.hpp"
#include "heunsc/transforms.hpp"

namespace heunsc::verify {
namespace {

struct Cell {
  std::string key;
  double tol = 0.0;
  std::function<double()> diff;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0,
                double d = 0.0, double e = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d, e);
  return std::string(buf);
}

std::vector<CaseResult> run_cells(std::vector<Cell> cells, int jobs) {
  std::vector<CaseResult> out(cells.size());
  auto eval_one = [&](std::size_t i) {
    CaseResult r;
    r.key = cells[i].key;
    r.tol = cells[i].tol;
    try {
      r.diff = cells[i].diff();
    } catch (const std::exception&) {
      r.diff = std::numeric_limits<double>::infinity();
    }
    r.pass = std::isfinite(r.diff) && r.diff <= r.tol;
    out[i] = r;
  };

  if (jobs <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      eval_one(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    const int n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), cells.size());
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1)) {
          eval_one(i);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CaseResult& a, const CaseResult& b) {
              return a.key < b.key;
            });
  return out;
}

struct CfCell {
  double c, mu, sigma, w, k2;
};

constexpr CfCell kCfGrid[3] = {
    {0.7, 0.4, 0.8, 0.45, 0.36},
    {0.3, 0.5, -0.5, 0.3, 0.25},
    {1.2, 0.0, 0.25, 0.6, 0.64},
};

struct ParamSet {
  const char* name;
  AssocParams a;
};

AssocParams make_assoc(double alpha, double beta, double gamma, double delta,
                       double eps, double s, double k2, double c, double mu) {
  AssocParams a;
  a.base = {alpha, beta, gamma, delta, eps, s, k2};
  a.c = c;
  a.mu = mu;
  return a;
}

std::vector<ParamSet> transform_sets() {
  return {
      {"setA", make_assoc(0.3, 0.7, 0.9, 0.5, 0.6, 0.4, 0.49, 0.4, 0.3)},
      {"setB", make_assoc(0.25, 0.45, 0.8, 0.6, 0.3, -0.2, 0.3, 0.35, 0.1)},
  };
}

double coeff_ratio_diff(const AssocParams& a, const AssocParams& mapped,
                        double num_base, double den_base) {
  const CoeffSeries f = assoc_coeffs(a, 20);
  const CoeffSeries g = assoc_coeffs(mapped, 20);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    const double ratio = pochhammer(num_base, n) / pochhammer(den_base, n);
    worst = std::max(worst, std::abs(f.coeffs[static_cast<std::size_t>(n)] -
                                     ratio *
                                         g.coeffs[static_cast<std::size_t>(n)]));
  }
  return worst;
}

// Simplified numerator form: the rising-factorial prefactor of the shifted
// integrand cancels against the Gamma normalizer, leaving
// integral cos(sqrt(z)(K-u)) dn u (sn^2 u)^c du / Gamma(2c+1).
double numerator_simple(double c, double p, double k2) {
  const double K = complete_K(k2);
  QuadOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-12;
  opts.max_levels = 14;
  const double rp = std::sqrt(p);
  const QuadResult q = integrate_singular(
      [&](double u) {
        const JacobiTriple j = jacobi(u, k2);
        return std::cosh(rp * (K - u)) * j.dn * std::pow(j.sn, 2.0 * c);
      },
      0.0, K, 0.0, 0.0, opts);
  return q.value / std::tgamma(2.0 * c + 1.0);
}

double herglotz_violation(const SCRates& r) {
  const double ps[6] = {0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
  double viol = 0.0;
  double prev_ms = std::numeric_limits<double>::infinity();
  double prev_pms = 0.0;
  for (double p : ps) {
    const SpectralResult s = stieltjes_d_ratio(r, {-p, 0.0});
    const double ms = -s.value.real();
    viol = std::max(viol, -ms);                      // positivity
    viol = std::max(viol, ms - prev_ms);             // decreasing in p
    viol = std::max(viol, prev_pms - p * ms);        // p(-S) increasing
    viol = std::max(viol, p * ms - 1.0 - 1e-9);      // bounded by total mass
    prev_ms = ms;
    prev_pms = p * ms;
  }
  return viol;
}

BDOptions bd_opts(bool quick) {
  BDOptions o;
  o.n_trunc = quick ? 60 : 120;
  o.t_max = quick ? 4.0 : 10.0;
  o.snapshot_times = {0.5, 2.0};
  return o;
}

double bd_probability_violation(const SCRates& r, const Trajectory& traj) {
  double viol = 0.0;
  for (const BDState& st : traj.snapshots) {
    double sum = 0.0;
    for (double q : st.probs) {
      viol = std::max(viol, -q - 1e-9);
      viol = std::max(viol, q - 1.0 - 1e-9);
      sum += q;
    }
    viol = std::max(viol, sum - 1.0 - 1e-9);
    const double K = complete_K(r.k2);
    for (double frac : {0.3, 0.6, 0.85}) {
      const double theta = frac * K;
      const double h = generating_value(r, st, theta);
      const double bound = generating_upper_bound(r, theta);
      viol = std::max(viol, -h);
      viol = std::max(viol, h - bound * (1.0 + 1e-12) - 1e-15);
    }
  }
  for (std::size_t i = 1; i < traj.p00.size(); ++i) {
    viol = std::max(viol, traj.p00[i] - traj.p00[i - 1] - 1e-12);
  }
  return viol;
}

}  // namespace

bool SuiteResult::pass() const {
  if (cases.empty()) {
    return false;
  }
  return std::all_of(cases.begin(), cases.end(),
                     [](const CaseResult& c) { return c.pass; });
}

const CaseResult* SuiteResult::worst() const {
  const CaseResult* w = nullptr;
  double worst_ratio = -1.0;
  for (const CaseResult& c : cases) {
    const double ratio = c.tol > 0.0
                             ? c.diff / c.tol
                             : (c.diff > 0.0
                                    ? std::numeric_limits<double>::infinity()
                                    : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      w = &c;
    }
  }
  return w;
}

SuiteResult closed_forms_suite(int jobs) {
  std::vector<Cell> cells;
  for (int id = 1; id <= 8; ++id) {
    for (const CfCell& g : kCfGrid) {
      Cell cell;
      cell.key = fmt("fam%.0f/c%.2f_mu%.2f_sg%+.2f_w%.2f", double(id), g.c,
                     g.mu, g.sigma, g.w) +
                 fmt("_k%.2f", g.k2);
      cell.tol = 1e-6;
      cell.diff = [id, g]() {
        const FamilySpec& spec = family(id);
        const double closed =
            eval_closed_form(spec, g.c, g.mu, g.sigma, g.w, g.k2);
        const AssocParams a =
            family_assoc_params(spec, g.c, g.mu, g.sigma, g.k2);
        const double series = eval_series(series_to_tol(a, 1e-13), g.w);
        return std::abs(closed - series);
      };
      cells.push_back(std::move(cell));
    }
  }
  for (int id = 1; id <= 4; ++id) {
    Cell cell;
    cell.key = fmt("fam%.0f/c0-limit", double(id));
    cell.tol = 1e-8;
    cell.diff = [id]() {
      const FamilySpec& spec = family(id);
      const double mu = 0.5, sigma = 0.8, w = 0.45, k2 = 0.36;
      const double lim = c0_limit(spec, mu, sigma, w, k2);
      const AssocParams a = family_assoc_params(spec, 0.0, mu, sigma, k2);
      const double series = eval_series(series_to_tol(a, 1e-13), w);
      return std::abs(lim - series);
    };
    cells.push_back(std::move(cell));
  }
  SuiteResult r;
  r.name = "closed-forms";
  r.cases = run_cells(std::move(cells), jobs);
  return r;
}

SuiteResult transforms_suite(int jobs) {
  std::vector<Cell> cells;
  for (const ParamSet& set : transform_sets()) {
    for (double w : {0.3, 0.7}) {
      for (Pivot pivot : {Pivot::alpha, Pivot::beta}) {
        const char* pname = pivot == Pivot::alpha ? "alpha" : "beta";
        Cell first;
        first.key =
            std::string("first/") + set.name + "/pivot-" + pname +
            fmt("/w%.2f", w);
        first.tol = 1e-8;
        AssocParams a = set.a;
        first.diff = [a, w, pivot]() {
          return first_transform(a, w, pivot).abs_diff;
        };
        cells.push_back(std::move(first));

        Cell second;
        second.key =
            std::string("second/") + set.name + "/pivot-" + pname +
            fmt("/w%.2f", w);
        second.tol = 1e-8;
        second.diff = [a, w, pivot]() {
          return second_transform(a, w, pivot).abs_diff;
        };
        cells.push_back(std::move(second));
      }
    }
  }

  for (const ParamSet& set : transform_sets()) {
    const AssocParams a = set.a;
    Cell swap_a{std::string("coeff-ratio/") + set.name + "/swap-alpha", 1e-12,
                [a]() {
                  return coeff_ratio_diff(a, map_alpha_gamma_swap(a),
                                          a.c + a.base.alpha,
                                          a.c + a.base.gamma);
                }};
    Cell swap_b{std::string("coeff-ratio/") + set.name + "/swap-beta", 1e-12,
                [a]() {
                  return coeff_ratio_diff(a, map_beta_gamma_swap(a),
                                          a.c + a.base.beta,
                                          a.c + a.base.gamma);
                }};
    Cell shift_a{std::string("coeff-ratio/") + set.name + "/shift-alpha",
                 1e-12, [a]() {
                   return coeff_ratio_diff(a, map_alpha_shift(a),
                                           a.c + a.base.alpha, a.c + 1.0);
                 }};
    Cell shift_b{std::string("coeff-ratio/") + set.name + "/shift-beta", 1e-12,
                 [a]() {
                   return coeff_ratio_diff(a, map_beta_shift(a),
                                           a.c + a.base.beta, a.c + 1.0);
                 }};
    Cell exact{std::string("assoc-shift-exact/") + set.name, 0.0, [a]() {
                 const AssocParams out = map_alpha_shift(a);
                 return out.c == a.c + a.base.alpha - 1.0 ? 0.0 : 1.0;
               }};
    cells.push_back(std::move(swap_a));
    cells.push_back(std::move(swap_b));
    cells.push_back(std::move(shift_a));
    cells.push_back(std::move(shift_b));
    cells.push_back(std::move(exact));
  }

  SuiteResult r;
  r.name = "transforms";
  r.cases = run_cells(std::move(cells), jobs);
  return r;
}

SuiteResult stieltjes_suite(int jobs) {
  std::vector<Cell> cells;
  for (double c : {0.6, 0.75, 1.5}) {
    for (double mu : {0.0, 1.0}) {
      for (double k2 : {0.25, 0.5, 0.81}) {
        for (double z : {-0.5, -1.0, -5.0, -10.0}) {
          Cell cell;
          cell.key = fmt("cross/c%.2f/mu%.0f/k%.2f/z%+.1f", c, mu, k2, z);
          cell.tol = 1e-6;
          cell.diff = [c, mu, k2, z]() {
            SCRates r{c, mu, k2};
            const SpectralResult a = stieltjes_d_ratio(r, {z, 0.0});
            const SpectralResult b = stieltjes_cf(r, {z, 0.0});
            if (a.value.imag() != 0.0 || a.value.real() >= 0.0) {
              return std::numeric_limits<double>::infinity();
            }
            return std::abs(a.value - b.value) / std::abs(b.value);
          };
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  for (double c : {0.6, 1.5}) {
    for (double k2 : {0.25, 0.81}) {
      Cell cell;
      cell.key = fmt("numerator/c%.2f/k%.2f", c, k2);
      cell.tol = 1e-10;
      cell.diff = [c, k2]() {
        const double full = d_integral(c + 1.0, 0.0, {-1.0, 0.0}, k2).real();
        const double simple = numerator_simple(c, 1.0, k2);
        return std::abs(full - simple) / std::abs(simple);
      };
      cells.push_back(std::move(cell));
    }
  }

  cells.push_back(Cell{"herglotz/c0.75_mu0_k0.50", 1e-9, []() {
                         return herglotz_violation(SCRates{0.75, 0.0, 0.5});
                       }});
  cells.push_back(Cell{"moments/m0-m1-exact", 1e-12, []() {
                         SCRates r{0.75, 0.0, 0.5};
                         const std::vector<double> m = moments(r, 4);
                         const double m1 =
                             r.k2 * (2.0 * r.c + 1.0) * (2.0 * r.c + 1.0) +
                             4.0 * r.c * r.c + r.mu;
                         return std::max(std::abs(m[0] - 1.0),
                                         std::abs(m[1] - m1));
                       }});
  cells.push_back(Cell{"moments/laurent-p100", 1e-3, []() {
                         SCRates r{0.75, 0.0, 0.5};
                         const std::vector<double> m = moments(r, 3);
                         const double p = 100.0;
                         double laurent = 0.0;
                         for (int j = 0; j <= 3; ++j) {
                           laurent += (j % 2 == 0 ? 1.0 : -1.0) *
                                      m[static_cast<std::size_t>(j)] /
                                      std::pow(p, j + 1);
                         }
                         const SpectralResult s =
                             stieltjes_d_ratio(r, {-p, 0.0});
                         const double ms = -s.value.real();
                         return std::abs(ms - laurent) / ms;
                       }});
  cells.push_back(Cell{"mass/p1e4", 1e-2, []() {
                         SCRates r{0.75, 0.0, 0.5};
                         const double p = 1e4;
                         const SpectralResult s =
                             stieltjes_d_ratio(r, {-p, 0.0});
                         return std::abs(p * (-s.value.real()) - 1.0);
                       }});
  cells.push_back(Cell{"cf/tail-z-1e6", 1e-3, []() {
                         SCRates r{0.75, 0.0, 0.5};
                         const std::complex<double> z{-1e6, 0.0};
                         const SpectralResult s = stieltjes_cf(r, z);
                         const double a0 = r.birth(0) + r.death(0);
                         return std::abs((1.0 / s.value - z).real() + a0);
                       }});

  SuiteResult r;
  r.name = "stieltjes";
  r.cases = run_cells(std::move(cells), jobs);
  return r;
}

SuiteResult birthdeath_suite(int jobs, bool quick) {
  std::vector<Cell> cells;
  const double mus[2] = {0.0, 1.0};
  for (double mu : mus) {
    Cell cell;
    cell.key = fmt("km/c0.75_mu%.0f_k0.50", mu);
    cell.tol = 1e-3;
    cell.diff = [mu, quick]() {
      SCRates r{0.75, mu, 0.5};
      const BDOptions opts = bd_opts(quick);
      const Trajectory traj = solve_kolmogorov(r, opts);
      double worst = bd_probability_violation(r, traj);
      for (double p : {0.5, 1.0, 2.0, 5.0}) {
        const double lhs = laplace_p00(traj, p);
        const double rhs = -stieltjes_d_ratio(r, {-p, 0.0}).value.real();
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      }
      return worst;
    };
    cells.push_back(std::move(cell));
  }

  cells.push_back(Cell{"laplace/synthetic-exponential", 1e-5, []() {
                         Trajectory traj;
                         const double a = 0.7, dt = 1e-3, t_max = 30.0;
                         const int n = static_cast<int>(t_max / dt) + 1;
                         traj.dt = dt;
                         traj.n_trunc = 1;
                         for (int i = 0; i < n; ++i) {
                           const double t = dt * i;
                           traj.times.push_back(t);
                           traj.p00.push_back(std::exp(-a * t));
                         }
                         const double p = 1.3;
                         return std::abs(laplace_p00(traj, p) -
                                         1.0 / (p + a));
                       }});

  cells.push_back(Cell{"coupling/mu-monotone", 1e-9, []() {
                         BDOptions o;
                         o.n_trunc = 60;
                         o.t_max = 3.0;
                         const Trajectory t0 =
                             solve_kolmogorov(SCRates{0.75, 0.0, 0.5}, o);
                         const Trajectory t1 =
                             solve_kolmogorov(SCRates{0.75, 1.0, 0.5}, o);
                         const std::size_t n =
                             std::min(t0.p00.size(), t1.p00.size());
                         double viol = 0.0;
                         for (std::size_t i = 0; i < n; ++i) {
                           viol = std::max(viol, t1.p00[i] - t0.p00[i]);
                         }
                         return viol;
                       }});

  cells.push_back(Cell{"euler/first-step", 1e-6, []() {
                         SCRates r{0.75, 0.0, 0.5};
                         BDOptions o;
                         o.n_trunc = 60;
                         o.t_max = 0.5;
                         const Trajectory traj = solve_kolmogorov(r, o);
                         const double t1 = traj.times[1];
                         const double a0 = r.birth(0) + r.death(0);
                         return std::abs(traj.p00[1] - (1.0 - a0 * t1));
                       }});

  cells.push_back(Cell{"initial-value/p-large", 1e-2, [quick]() {
                         SCRates r{0.75, 0.0, 0.5};
                         const BDOptions opts = bd_opts(quick);
                         const Trajectory traj = solve_kolmogorov(r, opts);
                         const double p = 2000.0;
                         return std::abs(p * laplace_p00(traj, p) - 1.0);
                       }});

  if (!quick) {
    cells.push_back(Cell{"truncation/refine-80-120", 1e-8, []() {
                           SCRates r{0.75, 0.0, 0.5};
                           BDOptions a;
                           a.n_trunc = 80;
                           a.t_max = 6.0;
                           // Shared step size so the sample grids coincide.
                           a.dt = 0.1 / (r.birth(119) + r.death(119));
                           BDOptions b = a;
                           b.n_trunc = 120;
                           const Trajectory ta = solve_kolmogorov(r, a);
                           const Trajectory tb = solve_kolmogorov(r, b);
                           double worst = 0.0;
                           const std::size_t n =
                               std::min(ta.p00.size(), tb.p00.size());
                           for (std::size_t i = 0; i < n; ++i) {
                             worst = std::max(worst,
                                              std::abs(ta.p00[i] - tb.p00[i]));
                           }
                           return worst;
                         }});
    cells.push_back(Cell{"implicit/agrees-with-rk4", 1e-3, []() {
                           SCRates r{0.75, 0.0, 0.5};
                           BDOptions e;
                           e.n_trunc = 60;
                           e.t_max = 3.0;
                           BDOptions i = e;
                           i.implicit = true;
                           const Trajectory te = solve_kolmogorov(r, e);
                           const Trajectory ti = solve_kolmogorov(r, i);
                           return std::abs(te.p00.back() - ti.p00.back());
                         }});
  }

  SuiteResult r;
  r.name = "bd";
  r.cases = run_cells(std::move(cells), jobs);
  return r;
}

SuiteResult run_suite(const std::string& name, int jobs) {
  if (name == "closed-forms") return closed_forms_suite(jobs);
  if (name == "transforms") return transforms_suite(jobs);
  if (name == "stieltjes") return stieltjes_suite(jobs);
  if (name == "bd") return birthdeath_suite(jobs);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

std::vector<std::string> suite_names() {
  return {"closed-forms", "transforms", "stieltjes", "bd"};
}

}  // namespace heunsc::verify
