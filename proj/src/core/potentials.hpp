#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadrature.hpp"

namespace nlsv {

enum class PotentialFamily { Zero, Yukawa, InversePower };

// V(r) = c r^{-sigma} e^{-a r} (Yukawa), c r^{-sigma} (InversePower) or 0.
// Construction does not enforce the family ranges; validate_assumptions
// reports them so that invalid configurations can still be described.
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::Zero;
  double c = 0.0;
  double sigma = 0.0;
  double a = 0.0;
  bool radial = true;  // non-radial specs are accepted but never validated

  static PotentialSpec zero() { return {}; }
  static PotentialSpec yukawa(double c, double sigma, double a) {
    return {PotentialFamily::Yukawa, c, sigma, a, true};
  }
  static PotentialSpec inverse_power(double c, double sigma) {
    return {PotentialFamily::InversePower, c, sigma, 0.0, true};
  }

  bool is_zero() const { return family == PotentialFamily::Zero || c == 0.0; }
  bool operator==(const PotentialSpec&) const = default;
};

std::string family_name(PotentialFamily f);
PotentialFamily parse_family(const std::string& name);

double eval_potential(const PotentialSpec& spec, double r);
double radial_derivative(const PotentialSpec& spec, double r);

// The part min(V, 0) as a spec of the same family (or Zero).
PotentialSpec negative_part(const PotentialSpec& spec);

double yukawa_lq_norm_closed(const PotentialSpec& spec, double q);
double yukawa_kato_norm_closed(const PotentialSpec& spec);

// (4 pi int |V|^q r^2 dr)^{1/q}; q = inf is not accepted here.
double lq_norm_numeric(const PotentialSpec& spec, double q, const QuadratureSettings& quad = {});

struct KatoProfile {
  double norm = 0.0;
  double maximizing_radius = 0.0;
  std::vector<double> radii;   // radii[0] == 0 is the origin limit
  std::vector<double> values;  // g(|x|) = int |V(y)| / |x - y| dy
};

// Evaluates the radial Kato integral on a radius grid and returns its
// supremum. Throws Divergence when int |V| r dr is infinite.
KatoProfile kato_norm_numeric(const PotentialSpec& spec, const QuadratureSettings& quad = {});

// g(x) for a single radius (x = 0 allowed).
double kato_integral_at(const PotentialSpec& spec, double x, const QuadratureSettings& quad = {});

enum class Theorem {
  ScatteringCriterionFocusing,
  ScatteringCriterionDefocusing,
  BelowThreshold,
  AtThreshold,
  InversePowerTheorems,
};

std::string theorem_name(Theorem t);
Theorem parse_theorem(const std::string& name);

struct AssumptionReport {
  Theorem theorem = Theorem::BelowThreshold;
  bool family_range_ok = true;
  bool in_kato_class = false;
  bool in_L_3_2 = false;
  double kato_norm_of_negative_part = 0.0;
  bool smallness_4pi_satisfied = false;
  bool nonnegative = false;
  bool radially_symmetric = true;
  bool radial_derivative_nonpositive = false;
  // Strict per-q membership for q in {3/2, 2, 4, inf}; q = inf encoded as +inf.
  std::vector<std::pair<double, bool>> radial_derivative_Lq_range;
  // d_r V in L^q + L^inf for some q >= 3/2.
  bool radial_derivative_Lq_relaxed = false;
  bool passed = false;
  std::vector<std::string> messages;
};

AssumptionReport validate_assumptions(const PotentialSpec& spec, Theorem theorem);

}  // namespace nlsv
