#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

namespace caterlab {

/// Absolute/relative tolerance pair defining "equal" and "violated".
struct Band {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;

  double width(double lhs, double rhs) const {
    return std::max(abs_tol, rel_tol * std::max(std::abs(lhs), std::abs(rhs)));
  }
};

enum class Verdict { holds, equality, violated };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::violated: return "violated";
  }
  return "?";
}

/// Orientation of a checked inequality.
enum class Relation {
  at_least,  // lhs >= rhs, margin = lhs - rhs
  at_most,   // lhs <= rhs, margin = rhs - lhs
};

/// One inequality check: both sides, signed margin and the verdict under a band.
struct EvalReport {
  std::string claim;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  Verdict verdict = Verdict::holds;
  double abs_tol = 0;
  double rel_tol = 0;
  Relation relation = Relation::at_least;
  bool strict = false;
  // False when the inputs do not meet the claim's hypotheses; the report is then
  // informational and a violation is not a contradiction.
  bool claimed = true;
  std::optional<bool> expected_equality;
  std::string note;
  std::string inputs_digest;

  /// Satisfied in the claimed sense (strict claims need a margin beyond the band).
  bool satisfied() const {
    return strict ? verdict == Verdict::holds : verdict != Verdict::violated;
  }

  /// The report numerically falsifies a claim whose hypotheses hold.
  bool contradicts() const {
    if (!claimed) return false;
    if (verdict == Verdict::violated) return true;
    return expected_equality.value_or(false) && verdict != Verdict::equality;
  }
};

inline EvalReport make_report(std::string claim, double lhs, double rhs, Relation relation,
                              const Band& band, bool strict, std::string digest) {
  EvalReport r;
  r.claim = std::move(claim);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = relation;
  r.margin = relation == Relation::at_least ? lhs - rhs : rhs - lhs;
  r.abs_tol = band.abs_tol;
  r.rel_tol = band.rel_tol;
  r.strict = strict;
  r.inputs_digest = std::move(digest);
  const double w = band.width(lhs, rhs);
  if (std::abs(r.margin) <= w) {
    r.verdict = Verdict::equality;
  } else if (r.margin < -w) {
    r.verdict = Verdict::violated;
  } else {
    r.verdict = Verdict::holds;
  }
  return r;
}

/// Records the predicted equality status and annotates any mismatch.
inline void set_expected_equality(EvalReport& r, bool expected) {
  r.expected_equality = expected;
  const bool observed = r.verdict == Verdict::equality;
  if (expected && !observed) {
    r.note = "predicted equality not observed";
  } else if (!expected && observed && r.note.empty()) {
    r.note = "noteworthy: equality within band where none is predicted";
  }
}

}  // namespace caterlab
