#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "heunsc/birthdeath.hpp"
#include "heunsc/elliptic.hpp"

using namespace heunsc;

namespace {

BDOptions quick_opts() {
  BDOptions o;
  o.n_trunc = 60;
  o.t_max = 3.0;
  o.snapshot_times = {0.5, 2.0};
  return o;
}

}  // namespace

TEST_CASE("trajectory basics") {
  SCRates r{0.75, 0.0, 0.5};
  Trajectory traj = solve_kolmogorov(r, quick_opts());
  REQUIRE(traj.times.size() == traj.p00.size());
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.p00.front() == 1.0);
  CHECK(traj.times.back() == doctest::Approx(3.0));
  CHECK(traj.n_trunc == 60);
  REQUIRE(traj.snapshots.size() == 2);
  CHECK(traj.snapshots[0].t == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(traj.snapshots[1].t == doctest::Approx(2.0).epsilon(1e-6));

  // p00 is a survival-type quantity: decreasing from 1.
  for (std::size_t i = 1; i < traj.p00.size(); ++i) {
    CHECK(traj.p00[i] <= traj.p00[i - 1] + 1e-12);
    CHECK(traj.p00[i] >= -1e-9);
  }

  // Mass only leaks out (through state 0 and the truncation boundary).
  for (const BDState& st : traj.snapshots) {
    double sum = std::accumulate(st.probs.begin(), st.probs.end(), 0.0);
    CHECK(sum <= 1.0 + 1e-9);
    CHECK(sum >= 0.0);
    for (double q : st.probs) {
      CHECK(q >= -1e-9);
      CHECK(q <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("options are validated") {
  SCRates r{0.75, 0.0, 0.5};
  BDOptions bad = quick_opts();
  bad.n_trunc = 10;
  CHECK_THROWS_AS(solve_kolmogorov(r, bad), std::invalid_argument);
  bad = quick_opts();
  bad.t_max = 0.0;
  CHECK_THROWS_AS(solve_kolmogorov(r, bad), std::invalid_argument);
}

TEST_CASE("unstable step size is detected") {
  SCRates r{0.75, 0.0, 0.5};
  BDOptions o = quick_opts();
  o.dt = 0.05;  // far beyond the explicit stability limit at n = 60
  CHECK_THROWS_AS(solve_kolmogorov(r, o), std::runtime_error);
}

TEST_CASE("first step agrees with the generator") {
  SCRates r{0.75, 0.0, 0.5};
  BDOptions o = quick_opts();
  Trajectory traj = solve_kolmogorov(r, o);
  REQUIRE(traj.times.size() >= 2);
  const double t1 = traj.times[1];
  const double a0 = r.birth(0) + r.death(0);
  CHECK(std::abs(traj.p00[1] - std::exp(-a0 * t1)) <= 1e-6);
}

TEST_CASE("laplace transform of a synthetic exponential") {
  Trajectory traj;
  const double a = 0.7, dt = 1e-3, t_max = 30.0;
  traj.dt = dt;
  traj.n_trunc = 1;
  const int n = static_cast<int>(t_max / dt) + 1;
  for (int i = 0; i < n; ++i) {
    const double t = dt * i;
    traj.times.push_back(t);
    traj.p00.push_back(std::exp(-a * t));
  }
  for (double p : {0.4, 1.3, 6.0}) {
    CHECK(std::abs(laplace_p00(traj, p) - 1.0 / (p + a)) <= 1e-5);
  }
  CHECK_THROWS_AS(laplace_p00(traj, 0.0), std::domain_error);
  CHECK_THROWS_AS(laplace_p00(traj, -1.0), std::domain_error);

  Trajectory stub;
  stub.times = {0.0, 1.0};
  stub.p00 = {1.0, 0.5};
  CHECK_THROWS_AS(laplace_p00(stub, 1.0), std::invalid_argument);
}

TEST_CASE("short horizon without a fittable tail is refused") {
  // A trajectory that hits zero leaves no tail to fit; with p t_max < 20
  // the transform must refuse rather than return a truncated value.
  Trajectory traj;
  const double dt = 1e-3, t_max = 2.0;
  traj.dt = dt;
  traj.n_trunc = 1;
  const int n = static_cast<int>(t_max / dt) + 1;
  for (int i = 0; i < n; ++i) {
    const double t = dt * i;
    traj.times.push_back(t);
    traj.p00.push_back(std::max(0.0, 1.0 - t));
  }
  CHECK_THROWS_AS(laplace_p00(traj, 1.0), std::domain_error);
  CHECK(std::isfinite(laplace_p00(traj, 15.0)));  // p t_max = 30: tail moot
}

TEST_CASE("spectral cross-check at moderate accuracy") {
  for (double mu : {0.0, 1.0}) {
    SCRates r{0.75, mu, 0.5};
    BDOptions o = quick_opts();
    o.t_max = 4.0;
    std::vector<KMRow> rows = km_crosscheck(r, {0.5, 2.0}, o);
    REQUIRE(rows.size() == 2);
    for (const KMRow& row : rows) {
      CHECK(row.lhs > 0.0);
      CHECK(row.rhs > 0.0);
      CHECK(row.rel_diff <= 1e-3);
    }
  }
}

TEST_CASE("adding mu only speeds the decay") {
  BDOptions o = quick_opts();
  Trajectory t0 = solve_kolmogorov(SCRates{0.75, 0.0, 0.5}, o);
  Trajectory t1 = solve_kolmogorov(SCRates{0.75, 1.0, 0.5}, o);
  REQUIRE(t0.p00.size() == t1.p00.size());
  for (std::size_t i = 0; i < t0.p00.size(); ++i) {
    CHECK(t1.p00[i] <= t0.p00[i] + 1e-9);
  }
}

TEST_CASE("implicit stepping reproduces the explicit solution") {
  SCRates r{0.75, 1.0, 0.5};
  BDOptions o = quick_opts();
  Trajectory ex = solve_kolmogorov(r, o);
  o.implicit = true;
  Trajectory im = solve_kolmogorov(r, o);
  CHECK(std::abs(ex.p00.back() - im.p00.back()) <= 1e-3);
}

TEST_CASE("generating function stays under its initial bound") {
  SCRates r{0.75, 1.0, 0.5};
  BDOptions o = quick_opts();
  Trajectory traj = solve_kolmogorov(r, o);
  const double K = complete_K(r.k2);
  for (const BDState& st : traj.snapshots) {
    for (double frac : {0.3, 0.6, 0.85}) {
      const double theta = frac * K;
      const double h = generating_value(r, st, theta);
      const double bound = generating_upper_bound(r, theta);
      CHECK(h <= bound * (1.0 + 1e-12) + 1e-15);
      CHECK(h >= 0.0);
    }
  }
}
