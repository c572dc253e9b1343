#pragma once

#include "tomo/estimate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tomo {

enum class Verdict {
  holds,
  holds_with_bound,  // a non-exact distance bound was substituted
  violated,
  inconclusive,
  reported,  // quantity is reported only; nothing is asserted
};

std::string to_string(Verdict v);

struct ConstantUsed {
  std::string symbol;
  double value = 0.0;
  std::string provenance;
};

/// Outcome of one check of an inequality lhs <= rhs.
struct InequalityReport {
  std::string check_id;
  std::string body_k;
  std::string body_l;
  int n = 0;
  int k = 0;
  std::optional<double> p;
  Estimate lhs;
  Estimate rhs;
  std::vector<ConstantUsed> constants;
  /// (rhs - lhs) / pooled standard error; positive means slack.
  double margin_se = 0.0;
  Verdict verdict = Verdict::reported;
  std::vector<std::string> notes;
};

/// Pooled standard error of lhs - rhs, floored at 1e-12 times the scale of
/// the two sides so that exact comparisons tolerate rounding.
double pooled_se(const Estimate& lhs, const Estimate& rhs);

/// Sets margin_se and verdict for lhs <= rhs:
///   violated      lhs - rhs > 3 pooled SE
///   inconclusive  lhs exceeds rhs, but within 3 pooled SE
///   holds / holds_with_bound otherwise.
void decide_inequality(InequalityReport& r, bool bound_substituted);

/// Sets margin_se and verdict for lhs == rhs: violated when the two sides
/// differ by more than 3 pooled SE, holds otherwise.
void decide_equality(InequalityReport& r);

/// Deterministic identity: violated when |lhs - rhs| exceeds
/// rel_tol * max(1, |lhs|, |rhs|).
void decide_identity(InequalityReport& r, double rel_tol);

}  // namespace tomo
