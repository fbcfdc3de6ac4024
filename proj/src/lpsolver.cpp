#include "eaqec/lpsolver.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace eaqec::lpsolver {

int ConstraintSystem::add_variable(std::string name, Rat lower,
                                   std::optional<Rat> upper, bool integral) {
  for (const auto& v : vars)
    if (v.name == name) throw std::invalid_argument("duplicate variable name: " + name);
  vars.push_back(Variable{std::move(name), std::move(lower), std::move(upper), integral});
  return static_cast<int>(vars.size()) - 1;
}

void ConstraintSystem::add_row(Row row) {
  for (const auto& [idx, coef] : row.coeffs)
    if (idx < 0 || idx >= static_cast<int>(vars.size()))
      throw std::out_of_range("row references unknown variable");
  rows.push_back(std::move(row));
}

void ConstraintSystem::add_row(std::vector<std::pair<int, Rat>> coeffs, Rel rel,
                               Rat rhs, std::string tag) {
  add_row(Row{std::move(coeffs), rel, std::move(rhs), std::move(tag)});
}

namespace {

// Simplex working problem: rows are equalities A x = b with b >= 0 over
// shifted variables x >= 0; bound rows come first so branching only appends.
struct Standardized {
  long nvars = 0;                 // shifted structural variables
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  std::vector<int> slack_of_row;  // structural column of this row's slack, -1 if none
};

Standardized standardize(const ConstraintSystem& sys,
                         const std::vector<Rat>& extra_lower,
                         const std::vector<std::optional<Rat>>& extra_upper) {
  const long n = static_cast<long>(sys.vars.size());
  Standardized st;

  std::vector<Rat> lower(n);
  std::vector<std::optional<Rat>> upper(n);
  for (long j = 0; j < n; ++j) {
    lower[j] = std::max(sys.vars[j].lower, extra_lower[j]);
    upper[j] = sys.vars[j].upper;
    if (extra_upper[j] && (!upper[j] || *extra_upper[j] < *upper[j]))
      upper[j] = extra_upper[j];
  }

  struct WorkRow {
    std::vector<std::pair<int, Rat>> coeffs;
    Rel rel;
    Rat rhs;
  };
  std::vector<WorkRow> work;
  for (long j = 0; j < n; ++j) {
    if (!upper[j]) continue;
    if (*upper[j] < lower[j]) {
      // empty box: emit an unsatisfiable row
      work.push_back({{{static_cast<int>(j), Rat(0)}}, Rel::Eq, Rat(1)});
      continue;
    }
    work.push_back({{{static_cast<int>(j), Rat(1)}}, Rel::Le, *upper[j] - lower[j]});
  }
  for (const auto& row : sys.rows) {
    Rat rhs = row.rhs;
    std::vector<std::pair<int, Rat>> cs;
    for (const auto& [idx, coef] : row.coeffs) {
      if (coef == 0) continue;
      rhs -= coef * lower[idx];  // substitute x = x' + lb
      cs.emplace_back(idx, coef);
    }
    work.push_back({std::move(cs), row.rel, std::move(rhs)});
  }

  const long m = static_cast<long>(work.size());
  long nslack = 0;
  for (const auto& w : work)
    if (w.rel != Rel::Eq) ++nslack;

  st.nvars = n + nslack;
  st.a.assign(m, std::vector<Rat>(st.nvars, Rat(0)));
  st.b.assign(m, Rat(0));
  st.slack_of_row.assign(m, -1);

  long scol = n;
  for (long i = 0; i < m; ++i) {
    auto& w = work[i];
    int sign = 1;
    if (w.rel == Rel::Ge) sign = -1;  // -a x <= -rhs
    for (auto& [idx, coef] : w.coeffs) st.a[i][idx] = Rat(sign) * coef;
    Rat rhs = Rat(sign) * w.rhs;
    if (w.rel != Rel::Eq) {
      st.a[i][scol] = 1;
      st.slack_of_row[i] = static_cast<int>(scol);
      ++scol;
    }
    if (rhs < 0) {
      for (auto& v : st.a[i]) v = -v;
      rhs = -rhs;
      if (st.slack_of_row[i] >= 0) st.slack_of_row[i] = -1;  // slack coef now -1
    }
    st.b[i] = std::move(rhs);
  }
  return st;
}

struct SimplexResult {
  bool feasible = false;
  bool out_of_budget = false;
  std::vector<Rat> x;  // values of structural (shifted) variables
  long pivots = 0;
};

// Phase-one simplex, Bland's rule: minimize the sum of artificials.
SimplexResult phase_one(const Standardized& st, long pivot_budget) {
  const long m = static_cast<long>(st.a.size());
  const long n = st.nvars;
  SimplexResult res;
  if (m == 0) {
    res.feasible = true;
    res.x.assign(n, Rat(0));
    return res;
  }

  // Columns: structural 0..n-1, artificial n..n+m-1 (artificial i skipped
  // when row i's slack can serve as the initial basic variable).
  std::vector<long> art_col(m, -1);
  long total = n;
  for (long i = 0; i < m; ++i) {
    if (st.slack_of_row[i] >= 0)
      continue;  // slack has +1 coefficient and rhs >= 0: valid basis column
    art_col[i] = total++;
  }

  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(total + 1, Rat(0)));
  std::vector<long> basis(m);
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) T[i][j] = st.a[i][j];
    T[i][total] = st.b[i];
    if (art_col[i] >= 0) {
      T[i][art_col[i]] = 1;
      basis[i] = art_col[i];
    } else {
      basis[i] = st.slack_of_row[i];
    }
  }

  // objective row: z = sum of artificials.  Start from the artificial costs,
  // then zero the reduced costs of the initial basis by subtracting the
  // artificial rows.
  std::vector<Rat> obj(total + 1, Rat(0));
  for (long i = 0; i < m; ++i)
    if (art_col[i] >= 0) obj[art_col[i]] = 1;
  for (long i = 0; i < m; ++i) {
    if (art_col[i] < 0) continue;
    for (long j = 0; j <= total; ++j) obj[j] -= T[i][j];
  }

  auto pivot = [&](long prow, long pcol) {
    Rat inv = Rat(1) / T[prow][pcol];
    for (long j = 0; j <= total; ++j)
      if (T[prow][j] != 0) T[prow][j] *= inv;
    for (long i = 0; i < m; ++i) {
      if (i == prow || T[i][pcol] == 0) continue;
      Rat f = T[i][pcol];
      for (long j = 0; j <= total; ++j)
        if (T[prow][j] != 0) T[i][j] -= f * T[prow][j];
    }
    if (obj[pcol] != 0) {
      Rat f = obj[pcol];
      for (long j = 0; j <= total; ++j)
        if (T[prow][j] != 0) obj[j] -= f * T[prow][j];
    }
    basis[prow] = pcol;
  };

  while (true) {
    // Bland: entering = lowest-index column with negative reduced cost
    long pcol = -1;
    for (long j = 0; j < total; ++j)
      if (obj[j] < 0) { pcol = j; break; }
    if (pcol < 0) break;
    // ratio test; Bland tie-break on lowest basis index
    long prow = -1;
    Rat best;
    for (long i = 0; i < m; ++i) {
      if (T[i][pcol] <= 0) continue;
      Rat ratio = T[i][total] / T[i][pcol];
      if (prow < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[prow])) {
        prow = i;
        best = ratio;
      }
    }
    if (prow < 0) break;  // unbounded below cannot happen for phase one
    pivot(prow, pcol);
    if (++res.pivots > pivot_budget) {
      res.out_of_budget = true;
      return res;
    }
  }

  // optimum value = -obj[total]
  if (obj[total] != 0) {
    res.feasible = false;
    return res;
  }
  res.feasible = true;
  res.x.assign(n, Rat(0));
  for (long i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = T[i][total];
  return res;
}

struct NodeBounds {
  std::vector<Rat> lower;
  std::vector<std::optional<Rat>> upper;
};

Verdict solve_lp(const ConstraintSystem& sys, const NodeBounds& nb,
                 const SolveOptions& opt) {
  Verdict v;
  auto st = standardize(sys, nb.lower, nb.upper);
  auto res = phase_one(st, opt.pivot_budget);
  v.pivot_count = res.pivots;
  if (res.out_of_budget) {
    v.status = Status::ResourceLimit;
    v.detail = "pivot budget exhausted";
    return v;
  }
  if (!res.feasible) {
    v.status = Status::Infeasible;
    return v;
  }
  v.status = Status::Feasible;
  const long n = static_cast<long>(sys.vars.size());
  v.witness.resize(n);
  for (long j = 0; j < n; ++j) {
    Rat lb = std::max(sys.vars[j].lower, nb.lower[j]);
    v.witness[j] = res.x[j] + lb;
  }
  return v;
}

NodeBounds root_bounds(const ConstraintSystem& sys) {
  NodeBounds nb;
  nb.lower.assign(sys.vars.size(), Rat(0));
  for (std::size_t j = 0; j < sys.vars.size(); ++j) nb.lower[j] = sys.vars[j].lower;
  nb.upper.assign(sys.vars.size(), std::nullopt);
  return nb;
}

bool is_integer(const Rat& v) { return v.get_den() == 1; }

Rat floor_rat(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return Rat(q);
}

}  // namespace

Verdict lp_feasible(const ConstraintSystem& sys, const SolveOptions& opt) {
  Verdict v = solve_lp(sys, root_bounds(sys), opt);
  if (v.status == Status::Feasible) {
    std::string why;
    if (!check_witness(sys, v.witness, &why))
      throw std::logic_error("lp_feasible: witness failed verification: " + why);
  }
  return v;
}

Verdict ilp_feasible(const ConstraintSystem& sys, const SolveOptions& opt) {
  for (const auto& var : sys.vars)
    if (var.integral && !var.upper)
      throw std::invalid_argument("ilp_feasible: integral variable " + var.name +
                                  " needs a finite upper bound");

  Verdict out;
  out.status = Status::Infeasible;
  long nodes = 0;
  bool budget_hit = false;

  struct Node {
    NodeBounds nb;
  };
  std::vector<Node> stack;
  stack.push_back({root_bounds(sys)});

  while (!stack.empty()) {
    if (++nodes > opt.node_budget) {
      budget_hit = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();

    Verdict lp = solve_lp(sys, node.nb, opt);
    out.pivot_count += lp.pivot_count;
    if (lp.status == Status::ResourceLimit) {
      budget_hit = true;
      break;
    }
    if (lp.status == Status::Infeasible) continue;

    // most fractional integral variable
    long branch_var = -1;
    Rat best_dist(0);
    for (long j = 0; j < static_cast<long>(sys.vars.size()); ++j) {
      if (!sys.vars[j].integral || is_integer(lp.witness[j])) continue;
      Rat fl = floor_rat(lp.witness[j]);
      Rat frac = lp.witness[j] - fl;
      Rat dist = frac <= Rat(1, 2) ? frac : Rat(1) - frac;
      if (branch_var < 0 || dist > best_dist) {
        branch_var = j;
        best_dist = dist;
      }
    }
    if (branch_var < 0) {
      out.status = Status::Feasible;
      out.witness = lp.witness;
      out.node_count = nodes;
      std::string why;
      if (!check_witness(sys, out.witness, &why))
        throw std::logic_error("ilp_feasible: witness failed verification: " + why);
      return out;
    }

    Rat fl = floor_rat(lp.witness[branch_var]);
    Node down = node, up = std::move(node);
    if (!down.nb.upper[branch_var] || fl < *down.nb.upper[branch_var])
      down.nb.upper[branch_var] = fl;
    if (fl + 1 > up.nb.lower[branch_var]) up.nb.lower[branch_var] = fl + 1;
    // depth-first, floor branch first
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }

  out.node_count = nodes;
  if (budget_hit) {
    out.status = Status::ResourceLimit;
    out.detail = "search budget exhausted";
  }
  return out;
}

bool check_witness(const ConstraintSystem& sys, const std::vector<Rat>& w,
                   std::string* first_violation) {
  if (w.size() != sys.vars.size()) {
    if (first_violation) *first_violation = "wrong witness length";
    return false;
  }
  for (std::size_t j = 0; j < sys.vars.size(); ++j) {
    const auto& var = sys.vars[j];
    if (w[j] < var.lower || (var.upper && w[j] > *var.upper) ||
        (var.integral && w[j].get_den() != 1)) {
      if (first_violation) *first_violation = "variable bound: " + var.name;
      return false;
    }
  }
  for (const auto& row : sys.rows) {
    Rat lhs(0);
    for (const auto& [idx, coef] : row.coeffs) lhs += coef * w[idx];
    bool ok = row.rel == Rel::Eq ? lhs == row.rhs
              : row.rel == Rel::Le ? lhs <= row.rhs
                                   : lhs >= row.rhs;
    if (!ok) {
      if (first_violation) *first_violation = "row: " + (row.tag.empty() ? "?" : row.tag);
      return false;
    }
  }
  return true;
}

void dump(const ConstraintSystem& sys, std::ostream& out) {
  auto rat_str = [](const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
  };
  for (const auto& v : sys.vars) {
    out << (v.integral ? "int " : "var ") << v.name << " >= " << rat_str(v.lower);
    if (v.upper) out << " <= " << rat_str(*v.upper);
    out << "\n";
  }
  for (const auto& row : sys.rows) {
    bool first = true;
    for (const auto& [idx, coef] : row.coeffs) {
      if (!first) out << " + ";
      out << rat_str(coef) << " " << sys.vars[idx].name;
      first = false;
    }
    if (first) out << "0";
    out << (row.rel == Rel::Eq ? " = " : row.rel == Rel::Le ? " <= " : " >= ")
        << rat_str(row.rhs);
    if (!row.tag.empty()) out << "  # " << row.tag;
    out << "\n";
  }
}

}  // namespace eaqec::lpsolver
