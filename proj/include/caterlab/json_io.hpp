#pragma once

// JSON views of the library's result types (requires nlohmann/json).

#include "json.hpp"

#include "caterlab/batteries.hpp"
#include "caterlab/explorer.hpp"
#include "caterlab/rearrangement.hpp"
#include "caterlab/report.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {

inline constexpr int kSchemaVersion = 1;

inline nlohmann::json to_json(const Permutation& p) { return p.one_based(); }

inline nlohmann::json to_json(const EvalReport& r) {
  return {
      {"claim", r.claim},
      {"lhs", r.lhs},
      {"rhs", r.rhs},
      {"relation", r.relation == Relation::at_least ? ">=" : "<="},
      {"margin", r.margin},
      {"verdict", to_string(r.verdict)},
      {"strict", r.strict},
      {"claimed", r.claimed},
      {"expected_equality", r.expected_equality ? nlohmann::json(*r.expected_equality) : nlohmann::json()},
      {"abs_tol", r.abs_tol},
      {"rel_tol", r.rel_tol},
      {"note", r.note},
      {"inputs_digest", r.inputs_digest},
  };
}

inline nlohmann::json to_json(const PositiveTuple& t) { return t.vector(); }

inline nlohmann::json to_json(const PermScan& s) {
  return {
      {"count", s.count},
      {"min_value", s.min_value},
      {"min_perm", to_json(s.min_perm)},
      {"max_value", s.max_value},
      {"max_perm", to_json(s.max_perm)},
  };
}

inline nlohmann::json to_json(const SwapChain& c) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : c.steps) {
    steps.push_back({
        {"position_low", s.position_low},
        {"position_high", s.position_high},
        {"perm_before", to_json(s.perm_before)},
        {"perm_after", to_json(s.perm_after)},
        {"f_before", s.f_before},
        {"f_after", s.f_after},
    });
  }
  return {{"start_perm", to_json(c.start_perm)}, {"end_perm", to_json(c.end_perm)}, {"steps", steps}};
}

inline nlohmann::json to_json(const SearchFinding& f) {
  return {
      {"sample_index", f.sample_index},
      {"tuple", to_json(f.tuple)},
      {"margin", f.margin},
      {"recheck_margin", f.recheck_margin},
      {"hypothesis_H", f.hypothesis_h},
      {"seed", f.seed},
  };
}

inline nlohmann::json to_json(const SearchConfig& c) {
  return {
      {"n", c.n},
      {"region", to_string(c.region)},
      {"samples", c.samples},
      {"seed", c.seed},
      {"lo", c.lo},
      {"hi", c.hi},
      {"target", to_string(c.target)},
      {"abs_tol", c.band.abs_tol},
      {"rel_tol", c.band.rel_tol},
  };
}

inline nlohmann::json to_json(const SearchReport& r) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : r.findings) findings.push_back(to_json(f));
  return {
      {"config", to_json(r.config)},
      {"summary",
       {
           {"samples", r.samples},
           {"findings", r.findings.size()},
           {"rejected_draws", r.rejected_draws},
           {"hypothesis_true", r.hypothesis_true},
           {"min_margin", r.min_margin},
           {"claims_no_findings", r.config.claims_no_findings()},
           {"contradiction", r.contradiction()},
       }},
      {"findings", findings},
  };
}

inline nlohmann::json to_json(const BatteryResult& b) {
  return {
      {"name", b.name},
      {"seed", b.seed},
      {"checked", b.checked},
      {"holds", b.holds},
      {"equality", b.equality},
      {"violated", b.violated},
      {"contradictions", b.contradictions},
      {"noteworthy", b.noteworthy},
      {"min_margin", b.min_margin},
      {"worst_digest", b.worst_digest},
      {"first_contradiction", b.first_contradiction},
      {"passed", b.passed()},
  };
}

inline nlohmann::json to_json(const InfimumSeries& s) {
  return {
      {"m", s.m},
      {"parity", s.parity == Parity::even ? "even" : "odd"},
      {"limit", s.limit},
      {"deltas", s.deltas},
      {"values", s.values},
      {"above_limit", s.above_limit},
      {"converging", s.converging},
      {"final_distance", s.final_distance},
  };
}

inline nlohmann::json to_json(const ConvergenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({
        {"n", row.n},
        {"riemann_mean", row.riemann_mean},
        {"riemann_upper_mean", row.riemann_upper_mean},
        {"integral_mean", row.integral_mean},
        {"gap", row.gap},
        {"slack", row.slack},
    });
  }
  return {
      {"integral", r.integral},
      {"integral_error", r.integral_error},
      {"variation", r.variation},
      {"gap_shrinks", r.gap_shrinks},
      {"rows", rows},
  };
}

}  // namespace caterlab
