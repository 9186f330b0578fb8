#include <cmath>

#include "cutoffs.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace nlsv;
using doctest::Approx;

TEST_CASE("chi shape") {
  for (double eta : {0.05, 0.1, 0.3}) {
    double prev = 1.0;
    for (int k = 0; k <= 2000; ++k) {
      const double s = 1.2 * k / 2000.0;
      const double c = cutoff_chi(s, eta);
      if (s <= 1 - eta) CHECK(c == 1.0);
      if (s > 1) CHECK(c == 0.0);
      CHECK(c <= prev);
      prev = c;
    }
    // derivative matches a finite difference
    for (double s = 1 - eta + 1e-3; s < 1; s += eta / 7) {
      const double h = 1e-6;
      CHECK(cutoff_chi_prime(s, eta) ==
            Approx((cutoff_chi(s + h, eta) - cutoff_chi(s - h, eta)) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("phi(0) against the defining integral") {
  const auto p = build_cutoffs(0.1, 10.0, 2.0);
  // (1/(omega_3 R^3)) int chi_R^4 = 3 int_0^1 s^2 chi^4(s) ds
  const double ref = 3.0 * oracle::simpson([](double s) { return s * s * std::pow(cutoff_chi(s, 0.1), 4); }, 0, 1, 200000);
  CHECK(p.phi(0.0) > 0.0);
  CHECK(p.phi(0.0) <= 1.0);
  CHECK(p.phi(0.0) == Approx(ref).epsilon(1e-9));
}

TEST_CASE("pointwise properties of the tables") {
  for (double R : {5.0, 10.0, 20.0}) {
    const auto p = build_cutoffs(0.1, R, 2.0);
    const auto& r = p.table_r();
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(p.table_psi()[i] - p.table_phi()[i] >= -1e-12);
      if (r[i] >= 2 * R) CHECK(p.table_phi()[i] == 0.0);
    }
    for (double x = 2 * R; x < 6 * R; x += 0.37) CHECK(p.phi(x) == 0.0);
  }
}

TEST_CASE("psi - phi vanishes at the origin") {
  const auto p = build_cutoffs(0.1, 10.0, 2.0);
  double prev = INFINITY;
  for (double h : {0.8, 0.4, 0.2, 0.1}) {
    const double d = std::abs(p.psi(h) - p.phi(h));
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("verify_cutoff_properties, eta halving and R doubling") {
  const auto a = verify_cutoff_properties(build_cutoffs(0.1, 10.0, 2.0));
  const auto b = verify_cutoff_properties(build_cutoffs(0.05, 10.0, 2.0));
  const auto c = verify_cutoff_properties(build_cutoffs(0.1, 20.0, 2.0));
  CHECK(a.holds);
  CHECK(b.holds);
  CHECK(c.holds);
  CHECK(a.min_psi_minus_phi >= -1e-12);
  CHECK(a.max_phi_beyond_2R == 0.0);
  CHECK(std::abs(a.c_phi_minus_phi1 - b.c_phi_minus_phi1) <= 0.2 * a.c_phi_minus_phi1);
  CHECK(c.c_grad_psi == Approx(a.c_grad_psi).epsilon(0.1));
  CHECK(c.c_grad_phi == Approx(a.c_grad_phi).epsilon(0.1));
  CHECK(c.c_psi_minus_phi == Approx(a.c_psi_minus_phi).epsilon(0.1));
  CHECK(c.c_phi_minus_phi1 == Approx(a.c_phi_minus_phi1).epsilon(0.1));
}

TEST_CASE("psi derivative identity") {
  const auto p = build_cutoffs(0.1, 10.0, 2.0);
  for (double r = 0.5; r < 40; r += 0.71) {
    const double h = 1e-4;
    const double fd = (p.psi(r + h) - p.psi(r - h)) / (2 * h);
    CHECK(p.psi_prime(r) == Approx(fd).epsilon(1e-4).scale(1e-3));
  }
}
