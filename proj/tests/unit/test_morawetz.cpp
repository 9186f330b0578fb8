#include <cmath>
#include <random>

#include "cutoffs.hpp"
#include "doctest.h"
#include "dynamics.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "functionals.hpp"
#include "groundstate.hpp"
#include "morawetz.hpp"
#include "oracle.hpp"

using namespace nlsv;
using doctest::Approx;

namespace {

const GroundState& gs2() {
  static const GroundState gs = solve_ground_state(2.0, RadialGrid(40.0, 4096));
  return gs;
}

FieldState from_q(const GroundState& gs, double beta) {
  FieldState u = zero_field(gs.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] = beta * gs.q_values[i];
  return u;
}

FieldState chirped(const RadialGrid& grid, double beta, double width = 2.0) {
  return make_field(grid, [&](double r) { return std::polar(std::exp(-r * r / (width * width)), beta * r * r); });
}

const CutoffProfile& cut10() {
  static const CutoffProfile p = build_cutoffs(0.1, 10.0, 2.0);
  return p;
}

}  // namespace

TEST_CASE("morawetz action") {
  const auto& p = cut10();
  const auto& gs = gs2();
  CHECK(morawetz_action(from_q(gs, 1.0), p) == 0.0);
  const auto u = chirped(gs.grid, 0.3);
  const double m = morawetz_action(u, p);
  CHECK(m > 0.0);

  // Oracle: u_r = (-2r/w^2 + 2 i beta r) u, so 2 Im(conj(u) u_r) = 4 beta r |u|^2.
  const double ref = oracle::radial3d(
      [&](double r) { return p.psi(r) * r * 4 * 0.3 * r * std::exp(-2 * r * r / 4.0); }, 40.0);
  CHECK(m == Approx(ref).epsilon(1e-7));

  // phase invariance and time-reversal sign change
  auto v = u;
  for (auto& x : v.values) x *= std::polar(1.0, 0.8);
  CHECK(morawetz_action(v, p) == Approx(m).epsilon(1e-13));
  for (auto& x : v.values) x = std::conj(x);
  CHECK(morawetz_action(v, p) == Approx(-m).epsilon(1e-13));

  // |M_R| <= C R ||u|| ||grad u|| with psi |x| <= C R
  double c_psi = 0.0;
  for (double r = 0.01; r < 40; r += 0.01) c_psi = std::max(c_psi, p.psi(r) * r / p.radius());
  CHECK(std::abs(m) <= 2 * c_psi * p.radius() * std::sqrt(mass(u) * gradient_sq(u)));
}

TEST_CASE("identity residual on a defocusing run, angular term zero") {
  SolverConfig cfg;
  cfg.grid = RadialGrid(40.0, 4096);
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.sign = Sign::Defocusing;
  cfg.snapshot_stride = 10;
  const auto spec = PotentialSpec::yukawa(1, 0.5, 1);
  const auto traj = evolve(gaussian_field(cfg.grid, 1.0, 1.0), cfg, spec);
  REQUIRE(traj.outcome == Outcome::Completed);
  const auto series = morawetz_identity_residual(traj, cut10(), spec, Sign::Defocusing, 2.0);
  CHECK(series.max_residual <= 1e-2);
  for (const auto& s : series.samples) CHECK(s.terms.angular == 0.0);

  Trajectory tiny = traj;
  tiny.snapshots.resize(2);
  CHECK_THROWS_AS(morawetz_identity_residual(tiny, cut10(), spec, Sign::Defocusing, 2.0), Error);
}

TEST_CASE("soliton: both sides near zero") {
  const auto& gs = solve_ground_state(2.0, RadialGrid(20.0, 2048), 1e-9);
  SolverConfig cfg;
  cfg.grid = gs.grid;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;
  cfg.scheme = Scheme::CrankNicolsonRelaxed;
  cfg.snapshot_stride = 10;
  const auto traj = evolve(discrete_ground_state(gs), cfg, PotentialSpec::zero());
  const auto p = build_cutoffs(0.1, 5.0, 2.0);
  const auto series = morawetz_identity_residual(traj, p, PotentialSpec::zero(), Sign::Focusing, 2.0);
  const double h1 = gs.mass + gs.grad_sq;
  for (const auto& s : series.samples) {
    CHECK(std::abs(s.dmdt - s.terms.sum()) <= 1e-4 * p.radius() * h1);
    CHECK(std::abs(s.dmdt) <= 1e-4 * p.radius() * h1);
  }
}

TEST_CASE("galilean shift") {
  const auto& gs = gs2();
  const auto& p = cut10();
  CHECK(galilean_shift(from_q(gs, 1.0), p, 0.0) == 0.0);
  CHECK(galilean_shift(zero_field(gs.grid), p, 0.0) == 0.0);
  // e^{i k x3} g with g supported well inside chi: xi = -k
  const auto g = gaussian_field(gs.grid, 1.0, 1.5);
  for (double k : {0.5, -1.3, 2.0}) CHECK(galilean_shift(g, p, 0.0, k) == Approx(-k).epsilon(1e-6));
  // after the shift the localized momentum vanishes
  const auto u = chirped(gs.grid, 0.4, 3.0);
  for (double z : {0.0, 5.0}) {
    for (double k : {0.0, 0.7}) {
      const double xi = galilean_shift(u, p, z, k);
      const double scale = std::sqrt(mass(u) * gradient_sq(u));
      CHECK(std::abs(localized_momentum(u, p, z, k + xi)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("interaction integrand is invariant under Galilean boosts") {
  const auto& gs = gs2();
  const auto& p = cut10();
  const auto u = chirped(gs.grid, 0.4, 3.0);
  const double base = interaction_integrand(u, p, 5.0, {0, 0, 0}).value();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int k = 0; k < 10; ++k) {
    const double v = interaction_integrand(u, p, 5.0, {d(rng), d(rng), d(rng)}).value();
    CHECK(std::abs(v - base) <= 1e-8 * std::abs(base));
  }
}

TEST_CASE("interaction action") {
  const auto& gs = gs2();
  CHECK(interaction_action(from_q(gs, 1.0), cut10()) == 0.0);
  const auto u = chirped(gs.grid, 0.3, 2.0);
  const double m10 = interaction_action(u, cut10());
  const double m20 = interaction_action(u, build_cutoffs(0.1, 20.0, 2.0));
  CHECK(std::isfinite(m10));
  const double bound = std::pow(mass(u), 1.5) * std::sqrt(gradient_sq(u));
  CHECK(std::abs(m10) <= 4 * 10.0 * bound);
  CHECK(std::abs(m20) <= 4 * 20.0 * bound);
  CHECK(std::abs(m20) <= 2.2 * std::abs(m10));
}

TEST_CASE("coercivity examples") {
  const auto& gs = gs2();
  const auto p20 = build_cutoffs(0.1, 20.0, 2.0);
  const auto sc = sharp_constants(gs);
  const auto half = from_q(gs, 0.5);
  // rho inside the scattering margin of 0.5 Q (half of it)
  const double margin = 1.0 - scattering_quantity(half, 2.0) / sc.threshold_scat;
  const auto r = coercivity_check(half, p20, 0.0, gs, 0.5 * margin);
  CHECK(r.holds);
  CHECK(r.lhs >= r.rhs);

  const auto z = coercivity_check(zero_field(gs.grid), p20, 0.0, gs, 0.5);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);

  const auto tiny = from_q(gs, 1e-3);
  const auto t = coercivity_check(tiny, p20, 0.0, gs, 1.0);
  CHECK(t.rhs == Approx(t.grad_sq).epsilon(1e-12));
  CHECK(t.lhs < t.grad_sq);
  CHECK(t.lhs == Approx(t.grad_sq).epsilon(1e-5));
}
