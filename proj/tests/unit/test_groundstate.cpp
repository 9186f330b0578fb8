#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "doctest.h"
#include "errors.hpp"
#include "field.hpp"
#include "functionals.hpp"
#include "groundstate.hpp"

using namespace nlsv;
using doctest::Approx;

namespace {

// At r_max = 20 the profile reaches about 2.4e-10 Q(0), so the decay tolerance
// is relaxed to 1e-9 there.
const GroundState& gs_at(double alpha, std::size_t n = 4096, double r_max = 20.0) {
  static std::map<std::tuple<double, std::size_t, double>, GroundState> cache;
  auto key = std::make_tuple(alpha, n, r_max);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, solve_ground_state(alpha, RadialGrid(r_max, n), r_max < 30 ? 1e-9 : 1e-10)).first;
  return it->second;
}

}  // namespace

TEST_CASE("critical exponents") {
  auto e2 = critical_exponents(2.0);
  CHECK(e2.gamma_c == Approx(0.5).epsilon(1e-15));
  CHECK(e2.sigma_c == Approx(1.0).epsilon(1e-15));
  auto e3 = critical_exponents(3.0);
  CHECK(e3.gamma_c == Approx(5.0 / 6).epsilon(1e-15));
  CHECK(e3.sigma_c == Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(critical_exponents(4.0 / 3.0), Error);
  CHECK_THROWS_AS(critical_exponents(4.0), Error);
  // sigma_c = (1 - gamma_c) / gamma_c
  for (double a : {1.5, 2.5, 3.5}) {
    auto e = critical_exponents(a);
    CHECK(e.sigma_c == Approx((1 - e.gamma_c) / e.gamma_c).epsilon(1e-13));
  }
}

TEST_CASE("alpha = 2 ground state: Pohozaev and refinement") {
  const auto& gs = gs_at(2.0);
  auto res = pohozaev_residuals(gs);
  CHECK(std::abs(res.res1) <= 1e-6);
  CHECK(std::abs(res.res2) <= 1e-6);
  CHECK(gs.grad_sq / gs.mass == Approx(3.0).epsilon(1e-6));

  // Independent oracle: re-solve on a 4x finer grid, Richardson on Q(0) (O(h^4)).
  const auto& fine = gs_at(2.0, 16384);
  const auto& mid = gs_at(2.0, 8192);
  const double extrap = mid.q0 + (mid.q0 - gs.q0) / 15.0;
  CHECK(gs.q0 == Approx(extrap).epsilon(1e-6));
  CHECK(fine.q0 == Approx(extrap).epsilon(1e-7));
  CHECK(std::abs(mid.q0 - gs.q0) / gs.q0 <= 1e-5);
}

TEST_CASE("profile shape invariants") {
  for (double alpha : {1.5, 2.0, 3.0}) {
    const auto& gs = gs_at(alpha, 4096, 30.0);
    const auto& q = gs.q_values;
    for (std::size_t i = 1; i + 1 < q.size(); ++i) {
      REQUIRE(q[i] > 0.0);
      REQUIRE(q[i] < q[i - 1]);
    }
    CHECK(q.back() < 1e-10 * gs.q0);
  }
}

TEST_CASE("Pohozaev ratios") {
  const auto& g3 = gs_at(3.0);
  CHECK(g3.lp_norm / g3.mass == Approx(10.0).epsilon(1e-5));
  for (double alpha : {1.5, 2.0, 3.0}) {
    const auto& gs = gs_at(alpha);
    auto res = pohozaev_residuals(gs);
    CHECK(std::abs(res.res1) <= 1e-5);
    CHECK(std::abs(res.res2) <= 1e-5);
    CHECK(gs.grad_sq / gs.mass == Approx(3 * alpha / (4 - alpha)).epsilon(1e-5));
  }
}

TEST_CASE("scaled profile breaks the second Pohozaev identity") {
  GroundState gs = gs_at(2.0);
  const double before = std::abs(pohozaev_residuals(gs).res2);
  for (auto& v : gs.q_values) v *= 2.0;
  for (auto& v : gs.q_prime) v *= 2.0;
  refresh_norms(gs);
  const double after = std::abs(pohozaev_residuals(gs).res2);
  CHECK(after > 1e3 * before);
  CHECK(after > 0.5);
}

TEST_CASE("sharp constants") {
  for (double alpha : {1.5, 2.0, 3.0}) {
    const auto& gs = gs_at(alpha, 16384);
    const auto sc = sharp_constants(gs);
    const double s = gs.sigma_c;
    const double direct =
        gs.lp_norm / (std::pow(gs.grad_sq, 0.75 * alpha) * std::pow(gs.mass, (4 - alpha) / 4));
    CHECK(sc.c_opt == Approx(direct).epsilon(1e-8));
    CHECK(sc.e0_q == Approx((3 * alpha - 4) / (6 * alpha) * gs.grad_sq).epsilon(1e-8));
    CHECK(sc.threshold_energy ==
          Approx((3 * alpha - 4) / (4 * (alpha + 2)) * gs.lp_norm * std::pow(gs.mass, s)).epsilon(1e-8));
    CHECK(sc.threshold_grad == Approx(std::sqrt(gs.grad_sq) * std::pow(gs.mass, s / 2)).epsilon(1e-14));
    CHECK(sc.threshold_scat == Approx(gs.lp_norm * std::pow(gs.mass, s)).epsilon(1e-14));
  }
  const auto& g2 = gs_at(2.0);
  CHECK(sharp_constants(g2).e0_q / g2.grad_sq == Approx(1.0 / 6).epsilon(1e-5));
}

TEST_CASE("threshold quantities stable under refinement") {
  const auto a = sharp_constants(gs_at(2.0, 4096));
  const auto b = sharp_constants(gs_at(2.0, 8192));
  CHECK(a.threshold_energy == Approx(b.threshold_energy).epsilon(1e-4));
  CHECK(a.threshold_grad == Approx(b.threshold_grad).epsilon(1e-4));
  CHECK(a.threshold_scat == Approx(b.threshold_scat).epsilon(1e-4));
}

TEST_CASE("GN optimality against random Gaussian bumps") {
  const auto& gs = gs_at(2.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(0.1, 3.0), wid(0.3, 3.0), ctr(0.0, 4.0);
  for (int k = 0; k < 20; ++k) {
    const double a1 = amp(rng), w1 = wid(rng), c1 = ctr(rng), a2 = amp(rng), w2 = wid(rng);
    auto f = make_field(gs.grid, [&](double r) {
      return cplx(a1 * std::exp(-std::pow((r - c1) / w1, 2)) + a2 * std::exp(-r * r / (w2 * w2)), 0.0);
    });
    CHECK(gn_ratio(f, 2.0) < gs.c_opt);
  }
}

TEST_CASE("bracket failure on a tiny box") {
  CHECK_THROWS_AS(solve_ground_state(2.0, RadialGrid(2.0, 256)), Error);
}
