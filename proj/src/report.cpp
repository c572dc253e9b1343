#include "tomo/report.hpp"

#include <algorithm>
#include <cmath>

namespace tomo {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_with_bound: return "holds-with-bound";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::reported: return "reported";
  }
  return "unknown";
}

double pooled_se(const Estimate& lhs, const Estimate& rhs) {
  const double se = std::hypot(lhs.std_error, rhs.std_error);
  const double scale = std::max({1.0, std::abs(lhs.value), std::abs(rhs.value)});
  return std::max(se, 1e-12 * scale);
}

void decide_inequality(InequalityReport& r, bool bound_substituted) {
  const double se = pooled_se(r.lhs, r.rhs);
  const double gap = r.lhs.value - r.rhs.value;
  r.margin_se = -gap / se;
  if (gap > 3.0 * se) {
    r.verdict = Verdict::violated;
  } else if (gap > 1e-12 * std::max({1.0, std::abs(r.lhs.value), std::abs(r.rhs.value)})) {
    r.verdict = Verdict::inconclusive;
  } else {
    r.verdict = bound_substituted ? Verdict::holds_with_bound : Verdict::holds;
  }
}

void decide_equality(InequalityReport& r) {
  const double se = pooled_se(r.lhs, r.rhs);
  const double gap = r.lhs.value - r.rhs.value;
  r.margin_se = -gap / se;
  r.verdict = std::abs(gap) > 3.0 * se ? Verdict::violated : Verdict::holds;
}

void decide_identity(InequalityReport& r, double rel_tol) {
  const double scale = std::max({1.0, std::abs(r.lhs.value), std::abs(r.rhs.value)});
  const double gap = r.lhs.value - r.rhs.value;
  r.margin_se = -gap / pooled_se(r.lhs, r.rhs);
  r.verdict = std::abs(gap) > rel_tol * scale ? Verdict::violated : Verdict::holds;
}

}  // namespace tomo
