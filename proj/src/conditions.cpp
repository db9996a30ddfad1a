#include "diracshell/conditions.hpp"

#include <algorithm>
#include <cmath>

namespace dshell {

namespace {

// |1 - d w^2| is affine in w^2, so its extremes on [a, b] sit at the ends
// unless it vanishes inside.
struct AffineRange {
  bool vanishes = false;
  double min_abs = 0.0;
  double max_abs = 0.0;
};

AffineRange one_minus_d_omega2(double d, double a, double b) {
  const double fa = 1.0 - d * a * a, fb = 1.0 - d * b * b;
  AffineRange r;
  r.vanishes = (fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0);
  r.min_abs = r.vanishes ? 0.0 : std::min(std::abs(fa), std::abs(fb));
  r.max_abs = std::max(std::abs(fa), std::abs(fb));
  return r;
}

ConditionCheck lt(std::string name, std::string statement, double lhs, double rhs, bool applicable = true) {
  ConditionCheck c{std::move(name), std::move(statement), applicable, false, lhs, rhs};
  c.holds = applicable && std::isfinite(lhs) && lhs < rhs;
  return c;
}

}  // namespace

ConditionReport check_selfadjointness_conditions(const InteractionStrengths& s, const OmegaBounds& b, double norm_c) {
  if (!(b.omega_min > 0.0) || b.omega_max < b.omega_min) throw DomainError("omega bounds must satisfy 0 < min <= max");
  const double d = s.d(), wmin = b.omega_min, wmax = b.omega_max;
  const double lam = std::abs(s.lambda);
  const double sum = std::abs(s.eta) + std::abs(s.tau) + lam;
  const AffineRange f = one_minus_d_omega2(d, wmin, wmax);
  ConditionReport rep;
  rep.omega_min = wmin;
  rep.omega_max = wmax;
  rep.norm_c = norm_c;
  auto& cs = rep.conditions;

  // (i): when lambda = 0 the quotient is 0 and only the non-vanishing matters
  {
    const double q = lam == 0.0 ? 0.0 : (f.vanishes ? INFINITY : 2.0 * lam * wmax / f.min_abs);
    cs.push_back(lt("i", "1 - d w^2 != 0 on [w_min, w_max] and max |2 lambda w_max / (1 - d w^2)| < 1", q, 1.0,
                    !f.vanishes));
  }
  {
    const double q = lam == 0.0 ? INFINITY : f.max_abs / (lam * wmin * (1.0 + 4.0 * wmin * wmin));
    cs.push_back(lt("ii", "lambda != 0 and max |(1 - d w^2) / (lambda w_min (1 + 4 w_min^2))| < 1", q, 1.0,
                    lam != 0.0));
  }
  {
    const double den = std::abs(4.0 - lam * lam) * (1.0 + 4.0 * wmin * wmin);
    const double q = den == 0.0 ? INFINITY : 4.0 * std::abs(d + 4.0) * (1.0 + wmax * lam) * wmax * wmax / den;
    cs.push_back(lt("iii", "lambda^2 != 4 and 4|d+4|(1 + w_max|lambda|) w_max^2 / (|4 - lambda^2|(1 + 4 w_min^2)) < 1",
                    q, 1.0, lam * lam != 4.0));
  }
  {
    ConditionCheck c{"iv", "eta = tau = 0 and lambda^2 != 4", true, false, lam * lam, 4.0};
    c.holds = s.eta == 0.0 && s.tau == 0.0 && lam * lam != 4.0;
    cs.push_back(c);
  }
  cs.push_back(lt("v", "|eta| + |tau| + |lambda| < 1 / w_max", sum, 1.0 / wmax));
  {
    // written as 4 w_max < |d| / sum
    ConditionCheck c{"vi", "|eta| + |tau| + |lambda| != 0 and |d| / (|eta| + |tau| + |lambda|) > 4 w_max", sum != 0.0,
                     false, sum != 0.0 ? std::abs(d) / sum : 0.0, 4.0 * wmax};
    c.holds = c.applicable && c.lhs > c.rhs;
    cs.push_back(c);
  }
  const bool have_norm = norm_c > 0.0;
  cs.push_back(lt("lambda0_small_d", "lambda = 0 and d < 1 / ||C_z||^2", d, have_norm ? 1.0 / (norm_c * norm_c) : 0.0,
                  s.lambda == 0.0 && have_norm));
  {
    ConditionCheck c{"lambda0_large_d", "lambda = 0 and d > 16 ||C_z||^2", s.lambda == 0.0 && have_norm, false, d,
                     16.0 * norm_c * norm_c};
    c.holds = c.applicable && c.lhs > c.rhs;
    cs.push_back(c);
  }

  // the two lambda = 0 conditions are special cases of (i), so only (i)-(vi) decide
  rep.certified = std::any_of(cs.begin(), cs.begin() + 6, [](const ConditionCheck& c) { return c.holds; });
  rep.verdict = rep.certified ? "self-adjoint: sufficient condition satisfied"
                              : "not certified: no sufficient condition holds at these bounds";
  return rep;
}

}  // namespace dshell
