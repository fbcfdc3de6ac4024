#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eaqec/rational.hpp"

namespace eaqec::lpsolver {

enum class Rel { Eq, Le, Ge };

struct Variable {
  std::string name;
  Rat lower = 0;
  std::optional<Rat> upper;
  bool integral = false;
};

struct Row {
  std::vector<std::pair<int, Rat>> coeffs;  // (variable index, coefficient)
  Rel rel = Rel::Eq;
  Rat rhs;
  std::string tag;
};

struct ConstraintSystem {
  std::vector<Variable> vars;
  std::vector<Row> rows;

  int add_variable(std::string name, Rat lower = 0,
                   std::optional<Rat> upper = std::nullopt, bool integral = false);
  void add_row(Row row);
  void add_row(std::vector<std::pair<int, Rat>> coeffs, Rel rel, Rat rhs,
               std::string tag = {});
};

enum class Status { Feasible, Infeasible, ResourceLimit };

struct Verdict {
  Status status = Status::ResourceLimit;
  std::vector<Rat> witness;  // one value per variable when feasible
  long node_count = 0;
  long pivot_count = 0;
  std::string detail;
};

struct SolveOptions {
  long pivot_budget = 2'000'000;
  long node_budget = 100'000;
};

// Phase-one simplex over exact rationals with Bland's rule.  Feasible
// verdicts carry a witness that is re-verified by substitution.
Verdict lp_feasible(const ConstraintSystem& sys, const SolveOptions& opt = {});

// Depth-first branch and bound on the integral variables: most fractional
// variable first, floor branch explored before ceil.  Every integral
// variable must have finite bounds.
Verdict ilp_feasible(const ConstraintSystem& sys, const SolveOptions& opt = {});

// Exact substitution check of a candidate assignment.
bool check_witness(const ConstraintSystem& sys, const std::vector<Rat>& w,
                   std::string* first_violation = nullptr);

// Plain-text dump, one row per line, coefficients as p/q.
void dump(const ConstraintSystem& sys, std::ostream& out);

}  // namespace eaqec::lpsolver
