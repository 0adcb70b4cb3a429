#pragma once

#include <vector>

#include "heunsc/stieltjes.hpp"

namespace heunsc {

struct BDOptions {
  int n_trunc = 120;       // truncation level (absorbing upper boundary)
  double t_max = 10.0;
  double dt = 0.0;         // <= 0: auto, stability_factor / max rate sum
  double stability_factor = 0.1;
  bool implicit = false;   // backward-difference stepping instead of RK4
  int max_samples = 200000;
  std::vector<double> snapshot_times;
};

struct BDState {
  double t = 0.0;
  std::vector<double> probs;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> p00;
  double dt = 0.0;
  int n_trunc = 0;
  std::vector<BDState> snapshots;
};

// Kolmogorov forward equations for occupation probabilities started from
// state 0; mass may exit through the death rate at 0 and through the
// truncation boundary.
Trajectory solve_kolmogorov(const SCRates& r, const BDOptions& opts = {});

// Laplace transform of the stored p00 samples: composite trapezoid plus an
// exponential tail fitted to the last decade of the trajectory.
double laplace_p00(const Trajectory& traj, double p);

struct KMRow {
  double p = 0.0;
  double lhs = 0.0;  // transform of the integrated trajectory
  double rhs = 0.0;  // -S(-p) from the spectral side
  double rel_diff = 0.0;
};

std::vector<KMRow> km_crosscheck(const SCRates& r,
                                 const std::vector<double>& p_list,
                                 const BDOptions& opts = {});

// Weighted generating function of a probability snapshot at w = sn^2(theta):
//   h = sqrt(1 - k2 w) sum_n probs[n] (1+c)_n / (1/2+c)_n w^(n+c),
// bounded above by the t = 0 value
//   sqrt(1 - k2 w) w^c 2F1(1, 1+c; 1/2+c; w).
double generating_value(const SCRates& r, const BDState& state, double theta);
double generating_upper_bound(const SCRates& r, double theta);

}  // namespace heunsc
