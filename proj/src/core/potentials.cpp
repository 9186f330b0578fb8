#include "potentials.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace nlsv {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

void require_positive_radius(double r, const char* what) {
  if (!(r > 0.0)) fail(ErrorKind::Domain, std::string(what) + ": r must be > 0 (potential is singular at the origin)");
}

// Length scale used to place the Kato radius grid.
double length_scale(const PotentialSpec& s) {
  return (s.family == PotentialFamily::Yukawa && s.a > 0.0) ? 1.0 / s.a : 1.0;
}

// Throws when int |V| r dr over (0, inf) is infinite.
void require_kato_finite(const PotentialSpec& s) {
  if (s.is_zero()) return;
  switch (s.family) {
    case PotentialFamily::Yukawa:
      if (!(s.a > 0.0)) fail(ErrorKind::Divergence, "Kato norm diverges: Yukawa decay rate a must be > 0");
      if (!(s.sigma < 2.0)) fail(ErrorKind::Divergence, "Kato norm diverges: int r^{1-sigma} e^{-ar} dr needs sigma < 2");
      return;
    case PotentialFamily::InversePower:
      fail(ErrorKind::Divergence,
           "Kato norm diverges for c|x|^{-sigma}: int r^{1-sigma} dr is infinite at the origin or at infinity");
    case PotentialFamily::Zero:
      return;
  }
}

// Finite L^q norm of V itself (q finite).
bool lq_finite(const PotentialSpec& s, double q) {
  if (s.is_zero()) return true;
  switch (s.family) {
    case PotentialFamily::Yukawa: return s.a > 0.0 && q * s.sigma < 3.0;
    case PotentialFamily::InversePower: return false;
    case PotentialFamily::Zero: return true;
  }
  return false;
}

}  // namespace

std::string family_name(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::Zero: return "zero";
    case PotentialFamily::Yukawa: return "yukawa";
    case PotentialFamily::InversePower: return "inverse_power";
  }
  return "zero";
}

PotentialFamily parse_family(const std::string& name) {
  if (name == "zero" || name == "none") return PotentialFamily::Zero;
  if (name == "yukawa") return PotentialFamily::Yukawa;
  if (name == "inverse_power") return PotentialFamily::InversePower;
  fail(ErrorKind::Config, "unknown potential family '" + name + "'");
}

double eval_potential(const PotentialSpec& s, double r) {
  require_positive_radius(r, "eval_potential");
  switch (s.family) {
    case PotentialFamily::Zero: return 0.0;
    case PotentialFamily::Yukawa: return s.c * std::pow(r, -s.sigma) * std::exp(-s.a * r);
    case PotentialFamily::InversePower: return s.c * std::pow(r, -s.sigma);
  }
  return 0.0;
}

double radial_derivative(const PotentialSpec& s, double r) {
  require_positive_radius(r, "radial_derivative");
  switch (s.family) {
    case PotentialFamily::Zero: return 0.0;
    case PotentialFamily::Yukawa:
      return s.c * std::exp(-s.a * r) * (-s.sigma * std::pow(r, -s.sigma - 1.0) - s.a * std::pow(r, -s.sigma));
    case PotentialFamily::InversePower: return -s.c * s.sigma * std::pow(r, -s.sigma - 1.0);
  }
  return 0.0;
}

PotentialSpec negative_part(const PotentialSpec& s) {
  if (s.is_zero() || s.c >= 0.0) return PotentialSpec::zero();
  return s;
}

double yukawa_lq_norm_closed(const PotentialSpec& s, double q) {
  if (s.family != PotentialFamily::Yukawa) fail(ErrorKind::Domain, "yukawa_lq_norm_closed: spec is not Yukawa");
  if (!(q >= 1.0)) fail(ErrorKind::Domain, "yukawa_lq_norm_closed: q must be >= 1");
  if (s.c == 0.0) return 0.0;
  if (!(q * s.sigma < 3.0))
    fail(ErrorKind::Divergence, "L^q norm diverges: need q*sigma < 3, got q*sigma = " + fmt(q * s.sigma));
  if (!(s.a > 0.0)) fail(ErrorKind::Divergence, "L^q norm diverges: Yukawa decay rate a must be > 0");
  const double inner = kFourPi * std::pow(s.a * q, q * s.sigma - 3.0) * std::tgamma(3.0 - q * s.sigma);
  return std::abs(s.c) * std::pow(inner, 1.0 / q);
}

double yukawa_kato_norm_closed(const PotentialSpec& s) {
  if (s.family != PotentialFamily::Yukawa) fail(ErrorKind::Domain, "yukawa_kato_norm_closed: spec is not Yukawa");
  if (!(s.sigma > 0.0 && s.sigma < 2.0))
    fail(ErrorKind::Domain, "yukawa_kato_norm_closed: sigma must lie in (0, 2), got " + fmt(s.sigma));
  if (!(s.a > 0.0)) fail(ErrorKind::Domain, "yukawa_kato_norm_closed: a must be > 0");
  // The supremum sits at the origin: 4 pi |c| int r^{1-sigma} e^{-ar} dr.
  return kFourPi * std::abs(s.c) * std::pow(s.a, s.sigma - 2.0) * std::tgamma(2.0 - s.sigma);
}

double lq_norm_numeric(const PotentialSpec& s, double q, const QuadratureSettings& quad) {
  if (!(q >= 1.0) || std::isinf(q)) fail(ErrorKind::Domain, "lq_norm_numeric: q must be finite and >= 1");
  if (s.is_zero()) return 0.0;
  if (!lq_finite(s, q)) fail(ErrorKind::Divergence, "L^q norm diverges for q = " + fmt(q));
  QuadratureSettings qs = quad;
  qs.r_split = length_scale(s);
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    return std::pow(std::abs(eval_potential(s, r)), q) * r * r;
  };
  return std::pow(kFourPi * integrate_half_line(f, qs), 1.0 / q);
}

double kato_integral_at(const PotentialSpec& s, double x, const QuadratureSettings& quad) {
  if (x < 0.0) fail(ErrorKind::Domain, "kato_integral_at: radius must be >= 0");
  require_kato_finite(s);
  if (s.is_zero()) return 0.0;
  QuadratureSettings qs = quad;
  qs.r_split = length_scale(s);
  auto abs_v = [&](double r) { return r <= 0.0 ? 0.0 : std::abs(eval_potential(s, r)); };
  auto outer = [&](double r) { return abs_v(r) * r; };
  if (x == 0.0) return kFourPi * integrate_half_line(outer, qs);
  auto inner = [&](double r) { return abs_v(r) * r * r; };
  return kFourPi * (integrate_to(inner, x, qs) / x + integrate_from(outer, x, qs));
}

KatoProfile kato_norm_numeric(const PotentialSpec& s, const QuadratureSettings& quad) {
  require_kato_finite(s);
  KatoProfile out;
  const double L = length_scale(s);
  constexpr int kRadii = 240;
  out.radii.reserve(kRadii + 1);
  out.radii.push_back(0.0);
  const double lo = std::log(1e-4 * L), hi = std::log(60.0 * L);
  for (int k = 0; k < kRadii; ++k) out.radii.push_back(std::exp(lo + (hi - lo) * k / (kRadii - 1)));
  out.values.reserve(out.radii.size());
  for (double x : out.radii) out.values.push_back(kato_integral_at(s, x, quad));
  out.norm = -kInf;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (out.values[i] > out.norm) {
      out.norm = out.values[i];
      out.maximizing_radius = out.radii[i];
    }
  }
  return out;
}

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::ScatteringCriterionFocusing: return "scattering_criterion_focusing";
    case Theorem::ScatteringCriterionDefocusing: return "scattering_criterion_defocusing";
    case Theorem::BelowThreshold: return "below_threshold";
    case Theorem::AtThreshold: return "at_threshold";
    case Theorem::InversePowerTheorems: return "inverse_power";
  }
  return "below_threshold";
}

Theorem parse_theorem(const std::string& name) {
  for (Theorem t : {Theorem::ScatteringCriterionFocusing, Theorem::ScatteringCriterionDefocusing,
                    Theorem::BelowThreshold, Theorem::AtThreshold, Theorem::InversePowerTheorems})
    if (theorem_name(t) == name) return t;
  fail(ErrorKind::Config, "unknown theorem '" + name + "'");
}

namespace {

// Membership of d_r V in L^q: analytic near the origin, analytic/quadrature
// away from it.
struct DerivativeIntegrability {
  std::vector<std::pair<double, bool>> per_q;
  bool relaxed = false;
};

DerivativeIntegrability derivative_integrability(const PotentialSpec& s) {
  DerivativeIntegrability out;
  const double qs[] = {1.5, 2.0, 4.0, kInf};
  if (s.is_zero()) {
    for (double q : qs) out.per_q.emplace_back(q, true);
    out.relaxed = true;
    return out;
  }
  // Near the origin |d_r V| ~ r^{-(sigma+1)} for both families.
  const double p = s.sigma + 1.0;
  const bool decays = s.family == PotentialFamily::Yukawa ? s.a > 0.0 : false;
  for (double q : qs) {
    bool ok;
    if (std::isinf(q)) {
      ok = p <= 0.0;
    } else {
      const bool origin_ok = q * p < 3.0;
      const bool tail_ok = decays || (s.family == PotentialFamily::InversePower && q * p > 3.0);
      ok = origin_ok && tail_ok;
    }
    out.per_q.emplace_back(q, ok);
  }
  // L^q + L^inf: the origin piece needs q p < 3 for some q >= 3/2, the
  // remainder only needs boundedness away from 0, which both families have.
  const bool tail_bounded = s.family == PotentialFamily::InversePower || decays;
  out.relaxed = 1.5 * p < 3.0 && tail_bounded;
  return out;
}

}  // namespace

AssumptionReport validate_assumptions(const PotentialSpec& s, Theorem theorem) {
  AssumptionReport rep;
  rep.theorem = theorem;
  rep.radially_symmetric = s.radial;
  auto note = [&](const std::string& m) { rep.messages.push_back(m); };

  // Family ranges.
  if (s.family == PotentialFamily::Yukawa) {
    if (!(s.sigma > 0.0 && s.sigma < 2.0)) {
      rep.family_range_ok = false;
      note("Yukawa family range violated: sigma must lie in (0, 2), got " + fmt(s.sigma));
    }
    if (!(s.a > 0.0)) {
      rep.family_range_ok = false;
      note("Yukawa family range violated: a must be > 0, got " + fmt(s.a));
    }
  } else if (s.family == PotentialFamily::InversePower) {
    if (!(s.sigma > 0.0 && s.sigma < 2.0)) {
      rep.family_range_ok = false;
      note("inverse-power range violated: sigma must lie in (0, 2), got " + fmt(s.sigma));
    }
  }

  // Kato class and L^{3/2}.
  try {
    (void)kato_norm_numeric(s);
    rep.in_kato_class = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Divergence) throw;
    rep.in_kato_class = false;
  }
  rep.in_L_3_2 = lq_finite(s, 1.5);

  const PotentialSpec neg = negative_part(s);
  try {
    rep.kato_norm_of_negative_part = neg.is_zero() ? 0.0 : kato_norm_numeric(neg).norm;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Divergence) throw;
    rep.kato_norm_of_negative_part = kInf;
  }
  rep.smallness_4pi_satisfied = rep.kato_norm_of_negative_part < kFourPi;
  rep.nonnegative = s.is_zero() || s.c >= 0.0;
  rep.radial_derivative_nonpositive = s.is_zero() || s.c >= 0.0;  // both families: d_r V = -c(...)

  const auto di = derivative_integrability(s);
  rep.radial_derivative_Lq_range = di.per_q;
  rep.radial_derivative_Lq_relaxed = di.relaxed;

  // Which hypotheses the chosen theorem imposes.
  bool need_radial = false, need_k = false, need_small = false, need_nonneg = false, need_mono = false,
       need_deriv = false, need_range = true;
  switch (theorem) {
    case Theorem::ScatteringCriterionFocusing:
    case Theorem::BelowThreshold:
    case Theorem::AtThreshold:
      need_radial = need_k = need_nonneg = need_mono = need_deriv = true;
      break;
    case Theorem::ScatteringCriterionDefocusing:
      need_radial = need_k = need_small = need_mono = need_deriv = true;
      break;
    case Theorem::InversePowerTheorems:
      need_range = true;
      break;
  }

  bool ok = true;
  auto require = [&](bool needed, bool holds, const std::string& what) {
    if (needed && !holds) {
      ok = false;
      note(what);
    }
  };
  if (theorem == Theorem::InversePowerTheorems) {
    require(true, s.family == PotentialFamily::InversePower || s.is_zero(),
            "inverse-power results need V = c|x|^{-sigma}");
    require(true, s.c > 0.0, "inverse-power results need repulsive amplitude c > 0, got " + fmt(s.c));
    require(true, s.sigma > 0.0 && s.sigma < 2.0, "inverse-power results need 0 < sigma < 2");
    if (!rep.in_kato_class)
      note("info: c|x|^{-sigma} is outside the Kato class; the inverse-power results do not use it");
  } else {
    require(need_range, rep.family_range_ok, "potential parameters outside the family range");
    if (!s.radial) {
      ok = false;
      note("non-radial potential: the concave-Hessian branch is accepted but not validated");
    }
    require(need_radial, rep.radially_symmetric, "V must be radially symmetric");
    require(need_k, rep.in_kato_class, "V must belong to the Kato class K (sup_x int |V(y)|/|x-y| dy < inf)");
    require(need_k, rep.in_L_3_2, "V must belong to L^{3/2}");
    require(need_small, rep.smallness_4pi_satisfied,
            "negative part too large: ||V_-||_K = " + fmt(rep.kato_norm_of_negative_part) + " must be < 4 pi");
    require(need_nonneg, rep.nonnegative, "V must be nonnegative (c >= 0)");
    require(need_mono, rep.radial_derivative_nonpositive, "x . grad V <= 0 (d_r V <= 0) violated");
    require(need_deriv, rep.radial_derivative_Lq_relaxed,
            "d_r V must lie in L^q + L^inf for some q >= 3/2 (near-origin exponent (sigma+1)*q < 3)");
    if (need_deriv)
      for (const auto& [q, in] : rep.radial_derivative_Lq_range)
        if (!in) note("info: d_r V is not in L^" + (std::isinf(q) ? std::string("inf") : fmt(q)));
  }
  rep.passed = ok;
  return rep;
}

}  // namespace nlsv
