#include "heunsc/birthdeath.hpp"
#include "heunsc/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heunsc/heun.hpp"

namespace heunsc {
namespace {

struct RateTable {
  std::vector<double> birth;
  std::vector<double> death;
};

RateTable tabulate(const SCRates& r, int n) {
  RateTable t;
  t.birth.resize(static_cast<std::size_t>(n));
  t.death.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    t.birth[static_cast<std::size_t>(i)] = r.birth(i);
    t.death[static_cast<std::size_t>(i)] = r.death(i);
  }
  return t;
}

// dp_i/dt = birth_{i-1} p_{i-1} - (birth_i + death_i) p_i + death_{i+1}
// p_{i+1}; the state above the truncation level is absorbing.
void derivative(const RateTable& rt, const std::vector<double>& p,
                std::vector<double>& dp) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = -(rt.birth[i] + rt.death[i]) * p[i];
    if (i > 0) s += rt.birth[i - 1] * p[i - 1];
    if (i + 1 < n) s += rt.death[i + 1] * p[i + 1];
    dp[i] = s;
  }
}

void rk4_step(const RateTable& rt, std::vector<double>& p, double dt,
              std::vector<double>& k1, std::vector<double>& k2,
              std::vector<double>& k3, std::vector<double>& k4,
              std::vector<double>& tmp) {
  const std::size_t n = p.size();
  derivative(rt, p, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k1[i];
  derivative(rt, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k2[i];
  derivative(rt, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + dt * k3[i];
  derivative(rt, tmp, k4);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] += w * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  }
}

// One backward-difference step: solve (I - dt A) p_new = p_old with the
// Thomas algorithm on the tridiagonal system.
void implicit_step(const RateTable& rt, std::vector<double>& p, double dt,
                   std::vector<double>& cp, std::vector<double>& dpv) {
  const std::size_t n = p.size();
  // Row i: -dt*birth_{i-1} p_{i-1} + (1 + dt(birth_i+death_i)) p_i
  //        - dt*death_{i+1} p_{i+1} = p_old_i
  double beta = 1.0 + dt * (rt.birth[0] + rt.death[0]);
  cp[0] = (n > 1 ? -dt * rt.death[1] : 0.0) / beta;
  dpv[0] = p[0] / beta;
  for (std::size_t i = 1; i < n; ++i) {
    const double ai = -dt * rt.birth[i - 1];
    const double bi = 1.0 + dt * (rt.birth[i] + rt.death[i]);
    const double ci = i + 1 < n ? -dt * rt.death[i + 1] : 0.0;
    const double denom = bi - ai * cp[i - 1];
    cp[i] = ci / denom;
    dpv[i] = (p[i] - ai * dpv[i - 1]) / denom;
  }
  p[n - 1] = dpv[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    p[i] = dpv[i] - cp[i] * p[i + 1];
  }
}

}  // namespace

Trajectory solve_kolmogorov(const SCRates& r, const BDOptions& opts) {
  r.validate();
  if (opts.n_trunc < 50 || !(opts.t_max > 0.0)) {
    throw std::invalid_argument(
        "solve_kolmogorov: need n_trunc >= 50 and t_max > 0");
  }
  const int n = opts.n_trunc;
  const RateTable rt = tabulate(r, n);

  double dt = opts.dt;
  if (dt <= 0.0) {
    double max_rate = 0.0;
    for (int i = 0; i < n; ++i) {
      max_rate = std::max(max_rate, rt.birth[static_cast<std::size_t>(i)] +
                                        rt.death[static_cast<std::size_t>(i)]);
    }
    dt = opts.implicit ? opts.t_max * 5e-7
                       : opts.stability_factor / max_rate;
  }
  const long long steps =
      std::max(1ll, static_cast<long long>(std::ceil(opts.t_max / dt)));
  dt = opts.t_max / static_cast<double>(steps);
  const long long stride =
      std::max(1ll, steps / std::max(1, opts.max_samples - 1));

  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  p[0] = 1.0;
  std::vector<double> k1(p.size()), k2(p.size()), k3(p.size()), k4(p.size()),
      tmp(p.size());

  std::vector<double> snaps = opts.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;

  Trajectory traj;
  traj.dt = dt * static_cast<double>(stride);
  traj.n_trunc = n;
  traj.times.reserve(static_cast<std::size_t>(steps / stride) + 2);
  traj.p00.reserve(traj.times.capacity());
  traj.times.push_back(0.0);
  traj.p00.push_back(1.0);
  while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
    traj.snapshots.push_back({0.0, p});
    ++next_snap;
  }

  for (long long step = 1; step <= steps; ++step) {
    if (opts.implicit) {
      implicit_step(rt, p, dt, k1, k2);
    } else {
      rk4_step(rt, p, dt, k1, k2, k3, k4, tmp);
    }
    const double t = static_cast<double>(step) * dt;
    if (step % stride == 0 || step == steps) {
      for (double pi : p) {
        if (!(pi > -1e-6 && pi < 1.0 + 1e-6)) {
          throw std::runtime_error(
              "solve_kolmogorov: state left [0,1]; step size unstable for "
              "this truncation");
        }
      }
      traj.times.push_back(t);
      traj.p00.push_back(p[0]);
    }
    while (next_snap < snaps.size() && snaps[next_snap] <= t) {
      traj.snapshots.push_back({t, p});
      ++next_snap;
    }
  }
  return traj;
}

double laplace_p00(const Trajectory& traj, double p) {
  if (traj.times.size() < 4) {
    throw std::invalid_argument("laplace_p00: trajectory too short");
  }
  if (!(p > 0.0)) {
    throw std::domain_error("laplace_p00: p must be positive");
  }
  const std::size_t n = traj.times.size();
  double acc = 0.0;
  double prev = traj.p00[0] * 1.0;  // e^{-p*0}
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = traj.p00[i] * std::exp(-p * traj.times[i]);
    acc += 0.5 * (prev + cur) * (traj.times[i] - traj.times[i - 1]);
    prev = cur;
  }

  // Exponential tail from a least-squares fit of log p00 over the last
  // fifth of the trajectory.
  const double t_end = traj.times.back();
  const double t_lo = 0.8 * t_end;
  double sw = 0.0, st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (traj.times[i] < t_lo || traj.p00[i] <= 0.0) {
      continue;
    }
    const double t = traj.times[i];
    const double y = std::log(traj.p00[i]);
    sw += 1.0;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  if (sw >= 8.0) {
    const double det = sw * stt - st * st;
    const double slope = (sw * sty - st * sy) / det;
    const double icept = (sy - slope * st) / sw;
    if (slope < 0.0 && p - slope > 0.0) {
      acc += std::exp(icept + (slope - p) * t_end) / (p - slope);
      return acc;
    }
  }
  // Without a fittable tail the truncation error is bounded by
  // p00(t_end) e^{-p t_end} / p, negligible only once p * t_end is large.
  if (p * t_end < 20.0) {
    throw std::domain_error(
        "laplace_p00: tail of log p00 not fittable and horizon too short; "
        "need p * t_max >= 20 (t_max >= " +
        std::to_string(20.0 / p) + " here) or a longer trajectory");
  }
  acc += traj.p00.back() * std::exp(-p * t_end) / p;
  return acc;
}

std::vector<KMRow> km_crosscheck(const SCRates& r,
                                 const std::vector<double>& p_list,
                                 const BDOptions& opts) {
  const Trajectory traj = solve_kolmogorov(r, opts);
  std::vector<KMRow> rows;
  rows.reserve(p_list.size());
  for (double p : p_list) {
    KMRow row;
    row.p = p;
    row.lhs = laplace_p00(traj, p);
    const std::complex<double> z{-p, 0.0};
    const SpectralResult s = r.c >= 0.5 ? stieltjes_d_ratio(r, z)
                                        : stieltjes_cf(r, z);
    row.rhs = -s.value.real();
    row.rel_diff = std::abs(row.lhs - row.rhs) / std::abs(row.rhs);
    rows.push_back(row);
  }
  return rows;
}

double generating_value(const SCRates& r, const BDState& state, double theta) {
  const JacobiTriple j = jacobi(theta, r.k2);
  const double w = j.sn * j.sn;
  if (!(w >= 0.0 && w < 1.0)) {
    throw std::domain_error("generating_value: need sn^2(theta) < 1");
  }
  double ratio = 1.0;  // (1+c)_n / (1/2+c)_n
  double wn = std::pow(w, r.c);
  double sum = 0.0;
  for (std::size_t k = 0; k < state.probs.size(); ++k) {
    sum += state.probs[k] * ratio * wn;
    const double dk = static_cast<double>(k);
    ratio *= (1.0 + r.c + dk) / (0.5 + r.c + dk);
    wn *= w;
  }
  return std::sqrt(1.0 - r.k2 * w) * sum;
}

double generating_upper_bound(const SCRates& r, double theta) {
  const JacobiTriple j = jacobi(theta, r.k2);
  const double w = j.sn * j.sn;
  if (!(w >= 0.0 && w < 1.0)) {
    throw std::domain_error("generating_upper_bound: need sn^2(theta) < 1");
  }
  const double f =
      hyp2f1({1.0, 0.0}, {1.0 + r.c, 0.0}, 0.5 + r.c, w).real();
  return std::sqrt(1.0 - r.k2 * w) * std::pow(w, r.c) * f;
}

}  // namespace heunsc
