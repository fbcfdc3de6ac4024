#include "eaqec/feasibility.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "eaqec/krawtchouk.hpp"

namespace eaqec::feasibility {

namespace {

using lpsolver::ConstraintSystem;
using lpsolver::Rel;
using lpsolver::Status;
using lpsolver::Verdict;

// number of phase-free Paulis with the given split weight profile
Int profile_count(long n, long i, long c, long j) {
  return binomial(n, i) * pow3(i) * binomial(c, j) * pow3(j);
}

std::string vname(const char* base, long i, long j) {
  return std::string(base) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

void validate(const CodeParams& p) {
  if (p.n < 1 || p.n > 64) throw std::invalid_argument("code params: need 1 <= n <= 64");
  if (p.k < 0 || p.c < 0 || p.c > p.n - p.k)
    throw std::invalid_argument("code params: need 0 <= c <= n-k");
  if (p.d < 1 || p.d > p.n) throw std::invalid_argument("code params: need 1 <= d <= n");
}

std::string ParityCase::label() const {
  if (type2) return "II";
  return "I/III(" + pauli::to_string(s_side) + "," + pauli::to_string(dual_iso) +
         "," + pauli::to_string(dual_total) + ")";
}

std::vector<ParityCase> parity_cases(const CodeParams& p) {
  validate(p);
  auto allowed = [](long pairs) {
    return pairs == 0 ? std::vector<GenType>{GenType::I}
                      : std::vector<GenType>{GenType::I, GenType::III};
  };
  std::vector<ParityCase> out;
  for (GenType s : allowed(p.c))
    for (GenType di : allowed(p.k))
      for (GenType dt : allowed(p.k + p.c)) {
        // coinciding groups must carry the same tag
        if (p.c == 0 && dt != di) continue;
        if (p.k == 0 && dt != s) continue;
        out.push_back(ParityCase{false, s, di, dt});
      }
  if (p.r() >= 1) out.push_back(ParityCase{true});
  return out;
}

lpsolver::ConstraintSystem build_constraints(const CodeParams& p, const ParityCase& pc) {
  validate(p);
  const long n = p.n, k = p.k, d = p.d, c = p.c, r = p.r();
  if (pc.type2 && r < 1) throw std::invalid_argument("type II case needs r >= 1");

  auto tn = kraw::build_table(n);
  kraw::Table tc;
  if (c >= 1) tc = kraw::build_table(c);
  auto kc = [&](long i, long j) -> Int { return c >= 1 ? tc.at(i, j) : Int(1); };

  ConstraintSystem sys;
  const Int group_a = pow2(n - k + c), group_p = pow2(n + k + c);
  auto idxA = [&](long i, long j) { return static_cast<int>(i * (c + 1) + j); };
  auto idxP = [&](long i, long j) {
    return static_cast<int>((n + 1) * (c + 1) + i * (c + 1) + j);
  };
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j)
      sys.add_variable(vname("A", i, j), Rat(0),
                       Rat(std::min(profile_count(n, i, c, j), group_a)), true);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j)
      sys.add_variable(vname("Ap", i, j), Rat(0),
                       Rat(std::min(profile_count(n, i, c, j), group_p)), true);

  sys.add_row({{idxA(0, 0), Rat(1)}}, Rel::Eq, Rat(1), "A_0_0 = 1");
  sys.add_row({{idxP(0, 0), Rat(1)}}, Rel::Eq, Rat(1), "Ap_0_0 = 1");

  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) {
      if (i == 0 && j == 0) continue;
      sys.add_row({{idxP(i, j), Rat(1)}, {idxA(i, j), Rat(-1)}}, Rel::Ge, Rat(0),
                  vname("dominance", i, j));
    }

  for (long i = 1; i <= d - 1; ++i)
    sys.add_row({{idxA(i, 0), Rat(1)}, {idxP(i, 0), Rat(-1)}}, Rel::Eq, Rat(0),
                "A=Ap below distance, i=" + std::to_string(i));
  for (long j = 1; j <= c; ++j) {
    sys.add_row({{idxA(0, j), Rat(1)}}, Rel::Eq, Rat(0), vname("A zero row", 0, j));
    sys.add_row({{idxP(0, j), Rat(1)}}, Rel::Eq, Rat(0), vname("Ap zero row", 0, j));
  }

  {
    std::vector<std::pair<int, Rat>> iso, total, iso_p, total_p;
    for (long w = 0; w <= n; ++w) {
      iso.emplace_back(idxA(w, 0), Rat(1));
      iso_p.emplace_back(idxP(w, 0), Rat(1));
      for (long j = 0; j <= c; ++j) {
        total.emplace_back(idxA(w, j), Rat(1));
        total_p.emplace_back(idxP(w, j), Rat(1));
      }
    }
    sys.add_row(iso, Rel::Eq, Rat(pow2(n - k - c)), "sum A_{w,0} = 2^(n-k-c)");
    sys.add_row(total, Rel::Eq, Rat(pow2(n - k + c)), "sum A = 2^(n-k+c)");
    sys.add_row(iso_p, Rel::Eq, Rat(pow2(n + k - c)), "sum Ap_{w,0} = 2^(n+k-c)");
    sys.add_row(total_p, Rel::Eq, Rat(pow2(n + k + c)), "sum Ap = 2^(n+k+c)");
  }

  // exact MacWilliams equalities
  const Int scale = pow2(n + c - k);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) {
      std::vector<std::pair<int, Rat>> row;
      for (long u = 0; u <= n; ++u)
        for (long v = 0; v <= c; ++v) {
          Int coef = tn.at(i, u) * kc(j, v);
          if (coef != 0) row.emplace_back(idxA(u, v), Rat(coef));
        }
      row.emplace_back(idxP(i, j), Rat(-scale));
      sys.add_row(row, Rel::Eq, Rat(0), vname("macwilliams", i, j));
    }

  // shadow inequalities on the isotropic distribution
  for (long w = 0; w <= n; ++w) {
    std::vector<std::pair<int, Rat>> row;
    for (long wp = 0; wp <= n; ++wp) {
      Int coef = tn.at(w, wp);
      if (wp & 1) coef = -coef;
      if (coef != 0) row.emplace_back(idxA(wp, 0), Rat(coef));
    }
    sys.add_row(row, Rel::Ge, Rat(0), "shadow w=" + std::to_string(w));
  }

  // strict distance inequality, exact under integrality
  sys.add_row({{idxP(d, 0), Rat(1)}, {idxA(d, 0), Rat(-1)}}, Rel::Ge, Rat(1),
              "Ap_{d,0} >= A_{d,0} + 1");

  // parity-case equalities on even-weight sums
  {
    std::vector<std::pair<int, Rat>> a_total, a_iso, p_iso, p_total;
    for (long w = 0; w <= n; w += 2) {
      a_iso.emplace_back(idxA(w, 0), Rat(1));
      p_iso.emplace_back(idxP(w, 0), Rat(1));
      for (long j = 0; j <= c; ++j) {
        a_total.emplace_back(idxA(w, j), Rat(1));
        p_total.emplace_back(idxP(w, j), Rat(1));
      }
    }
    if (pc.type2) {
      sys.add_row(a_total, Rel::Eq, Rat(pauli::closed_form_even(GenType::II, c, r)),
                  "even sum A (II)");
      sys.add_row(p_iso, Rel::Eq, Rat(pauli::closed_form_even(GenType::II, k, r)),
                  "even sum Ap_{w,0} (II)");
      sys.add_row(p_total, Rel::Eq, Rat(pauli::closed_form_even(GenType::II, k + c, r)),
                  "even sum Ap (II)");
      sys.add_row(a_iso, Rel::Eq, Rat(pow2(n - k - c - 1)), "even sum A_{w,0} (II)");
    } else {
      sys.add_row(a_total, Rel::Eq, Rat(pauli::closed_form_even(pc.s_side, c, r)),
                  "even sum A (" + pauli::to_string(pc.s_side) + ")");
      sys.add_row(p_iso, Rel::Eq, Rat(pauli::closed_form_even(pc.dual_iso, k, r)),
                  "even sum Ap_{w,0} (" + pauli::to_string(pc.dual_iso) + ")");
      sys.add_row(p_total, Rel::Eq, Rat(pauli::closed_form_even(pc.dual_total, k + c, r)),
                  "even sum Ap (" + pauli::to_string(pc.dual_total) + ")");
      sys.add_row(a_iso, Rel::Eq, Rat(pow2(n - k - c)), "even sum A_{w,0} (I/III)");
    }
  }

  return sys;
}

namespace {

Distribution witness_matrix(const CodeParams& p, const std::vector<Rat>& w, bool dual) {
  const long n = p.n, c = p.c;
  long base = dual ? (n + 1) * (c + 1) : 0;
  Distribution m(n + 1, std::vector<Int>(c + 1));
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) m[i][j] = w[base + i * (c + 1) + j].get_num();
  return m;
}

}  // namespace

CompatResult code_compatible(const CodeParams& p, const lpsolver::SolveOptions& opt,
                             int threads) {
  auto cases = parity_cases(p);
  CompatResult res;
  res.cases.resize(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) res.cases[i].pc = cases[i];

  if (threads <= 1) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      auto sys = build_constraints(p, cases[i]);
      res.cases[i].verdict = lpsolver::ilp_feasible(sys, opt);
      res.cases[i].solved = true;
      if (res.cases[i].verdict.status == Status::Feasible) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= cases.size()) break;
        auto sys = build_constraints(p, cases[i]);
        res.cases[i].verdict = lpsolver::ilp_feasible(sys, opt);
        res.cases[i].solved = true;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(cases.size())); ++t)
      pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool any_limit = false;
  res.status = Status::Infeasible;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!res.cases[i].solved) continue;
    res.total_nodes += res.cases[i].verdict.node_count;
    if (res.cases[i].verdict.status == Status::Feasible) {
      res.status = Status::Feasible;
      res.witness_case = cases[i];
      res.witness_a = witness_matrix(p, res.cases[i].verdict.witness, false);
      res.witness_aperp = witness_matrix(p, res.cases[i].verdict.witness, true);
      break;
    }
    if (res.cases[i].verdict.status == Status::ResourceLimit) any_limit = true;
  }
  if (res.status != Status::Feasible && any_limit) res.status = Status::ResourceLimit;
  return res;
}

DistanceScanResult lp_distance_bound(long n, long k, long c, long d_max_scan,
                                     const lpsolver::SolveOptions& opt, int threads) {
  if (d_max_scan <= 0 || d_max_scan > n) d_max_scan = n;
  DistanceScanResult out;
  out.capped_at = d_max_scan;
  out.resolved = true;
  for (long d = 1; d <= d_max_scan; ++d) {
    CodeParams p{n, k, d, c};
    auto res = code_compatible(p, opt, threads);
    out.trace.emplace_back(d, res.status);
    if (res.status == Status::Feasible) {
      out.upper = d;
      continue;
    }
    if (res.status == Status::ResourceLimit) out.resolved = false;
    return out;
  }
  return out;
}

std::optional<Distribution> dual_transform(const CodeParams& p, const Distribution& A) {
  const long n = p.n, c = p.c;
  if (static_cast<long>(A.size()) != n + 1) return std::nullopt;
  auto tn = kraw::build_table(n);
  kraw::Table tc;
  if (c >= 1) tc = kraw::build_table(c);
  auto kc = [&](long i, long j) -> Int { return c >= 1 ? tc.at(i, j) : Int(1); };
  const Int scale = pow2(n + c - p.k);
  Distribution out(n + 1, std::vector<Int>(c + 1));
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) {
      Int acc(0);
      for (long u = 0; u <= n; ++u)
        for (long v = 0; v <= c; ++v) acc += A[u][v] * tn.at(i, u) * kc(j, v);
      if (acc < 0 || !mpz_divisible_p(acc.get_mpz_t(), scale.get_mpz_t()))
        return std::nullopt;
      Int q;
      mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), scale.get_mpz_t());
      out[i][j] = q;
    }
  return out;
}

VerifyResult verify_distribution(const CodeParams& p, const Distribution& A,
                                 const ParityCase& pc) {
  validate(p);
  const long n = p.n, c = p.c;
  if (static_cast<long>(A.size()) != n + 1)
    throw std::invalid_argument("verify_distribution: shape mismatch");
  for (const auto& row : A)
    if (static_cast<long>(row.size()) != c + 1)
      throw std::invalid_argument("verify_distribution: shape mismatch");

  VerifyResult vr;
  auto dual = dual_transform(p, A);
  if (!dual) {
    vr.violations.push_back("MacWilliams transform is not a nonnegative integer matrix");
    return vr;
  }
  vr.a_perp = *dual;

  auto sys = build_constraints(p, pc);
  std::vector<Rat> assign;
  assign.reserve(2 * (n + 1) * (c + 1));
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) assign.emplace_back(A[i][j]);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) assign.emplace_back(vr.a_perp[i][j]);

  for (std::size_t v = 0; v < sys.vars.size(); ++v) {
    const auto& var = sys.vars[v];
    if (assign[v] < var.lower)
      vr.violations.push_back("variable below lower bound: " + var.name);
    else if (var.upper && assign[v] > *var.upper)
      vr.violations.push_back("variable above upper bound: " + var.name);
  }
  for (const auto& row : sys.rows) {
    Rat lhs(0);
    for (const auto& [idx, coef] : row.coeffs) lhs += coef * assign[idx];
    bool ok = row.rel == Rel::Eq ? lhs == row.rhs
              : row.rel == Rel::Le ? lhs <= row.rhs
                                   : lhs >= row.rhs;
    if (!ok) vr.violations.push_back(row.tag.empty() ? "unnamed row" : row.tag);
  }
  vr.ok = vr.violations.empty();
  return vr;
}

// ---- refined enumerators ----

long RefinedKernel::pair_index(long j, long l) const {
  return l * (u + 1) - l * (l - 1) / 2 + j;
}

const Int& RefinedKernel::at(long j2, long l2, long j, long l) const {
  return entries[pair_index(j2, l2) * stride + pair_index(j, l)];
}

RefinedKernel refined_kernel(long u) {
  if (u < 0) throw std::invalid_argument("refined_kernel: u >= 0");
  RefinedKernel ker;
  ker.u = u;
  ker.stride = (u + 1) * (u + 2) / 2;
  ker.entries.assign(ker.stride * ker.stride, Int(0));

  for (long l = 0; l <= u; ++l)
    for (long j = 0; j + l <= u; ++j) {
      // expand (y0+y1+2y2)^(u-j-l) (y0+y1-2y2)^j (y0-y1)^l
      std::vector<std::vector<Int>> poly{{Int(1)}};
      auto mul_linear = [&](long c0, long c1, long c2) {
        long deg = static_cast<long>(poly.size());  // new degree
        std::vector<std::vector<Int>> next(deg + 1, std::vector<Int>(deg + 1, Int(0)));
        for (long a = 0; a < deg; ++a)
          for (long b = 0; a + b < deg; ++b) {
            const Int& v = poly[a][b];
            if (v == 0) continue;
            if (c0 != 0) next[a][b] += c0 * v;
            if (c1 != 0) next[a + 1][b] += c1 * v;
            if (c2 != 0) next[a][b + 1] += c2 * v;
          }
        poly = std::move(next);
      };
      for (long rep = 0; rep < u - j - l; ++rep) mul_linear(1, 1, 2);
      for (long rep = 0; rep < j; ++rep) mul_linear(1, 1, -2);
      for (long rep = 0; rep < l; ++rep) mul_linear(1, -1, 0);
      long in = ker.pair_index(j, l);
      for (long l2 = 0; l2 <= u; ++l2)
        for (long j2 = 0; j2 + l2 <= u; ++j2)
          ker.entries[ker.pair_index(j2, l2) * ker.stride + in] = poly[j2][l2];
    }
  return ker;
}

std::vector<std::vector<std::vector<Int>>> refined_distribution(
    const std::vector<pauli::Element>& elems, long n, long u) {
  if (u < 0 || u > n) throw std::invalid_argument("refined_distribution: 0 <= u <= n");
  long m = n - u;
  std::vector<std::vector<std::vector<Int>>> out(
      m + 1, std::vector<std::vector<Int>>(u + 1, std::vector<Int>(u + 1, Int(0))));
  std::uint64_t lowmask = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
  for (const auto& e : elems) {
    if (e.n != n) throw std::invalid_argument("refined_distribution: length mismatch");
    std::uint64_t bz = e.z >> m, bx = e.x >> m;
    long i = __builtin_popcountll((e.z | e.x) & lowmask);
    long l = __builtin_popcountll(bz);            // Y or Z on the block
    long j = __builtin_popcountll(bx & ~bz);      // pure X on the block
    out[i][j][l] += 1;
  }
  return out;
}

lpsolver::ConstraintSystem refined_constraints(const CodeParams& p,
                                               const ParityCase& pc, long u) {
  validate(p);
  if (p.c != 0) throw std::invalid_argument("refined_constraints: c = 0 path only");
  if (u < 0 || u > p.n) throw std::invalid_argument("refined_constraints: 0 <= u <= n");
  const long n = p.n, k = p.k, m = n - u;

  auto sys = build_constraints(p, pc);
  auto idxA = [&](long w) { return static_cast<int>(w); };
  auto idxP = [&](long w) { return static_cast<int>(n + 1 + w); };

  auto ker = refined_kernel(u);
  std::vector<std::vector<Int>> kx(m + 1, std::vector<Int>(m + 1, Int(1)));
  if (m >= 1) {
    auto t = kraw::build_table(m);
    kx = t.values;
  }

  const Int group_a = pow2(n - k), group_p = pow2(n + k);
  // refined variables, even l only (odd-l entries vanish by commutation with
  // the X block)
  std::vector<std::vector<std::vector<int>>> ra(
      m + 1, std::vector<std::vector<int>>(u + 1, std::vector<int>(u + 1, -1)));
  auto rp = ra;
  for (long i = 0; i <= m; ++i)
    for (long l = 0; l <= u; l += 2)
      for (long j = 0; j + l <= u; ++j) {
        Int prof = binomial(m, i) * pow3(i) * binomial(u, j) *
                   binomial(u - j, l) * pow2(l);
        ra[i][j][l] = sys.add_variable(
            "R_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(l),
            Rat(0), Rat(std::min(prof, group_a)), true);
        rp[i][j][l] = sys.add_variable(
            "Rp_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(l),
            Rat(0), Rat(std::min(prof, group_p)), true);
      }

  // marginalization ties to the base weight distributions
  for (long w = 0; w <= n; ++w) {
    std::vector<std::pair<int, Rat>> rowa{{idxA(w), Rat(-1)}};
    std::vector<std::pair<int, Rat>> rowp{{idxP(w), Rat(-1)}};
    for (long i = 0; i <= std::min(w, m); ++i)
      for (long l = 0; l <= u; l += 2) {
        long j = w - i - l;
        if (j < 0 || j + l > u) continue;
        rowa.emplace_back(ra[i][j][l], Rat(1));
        rowp.emplace_back(rp[i][j][l], Rat(1));
      }
    sys.add_row(rowa, Rel::Eq, Rat(0), "refined marginal w=" + std::to_string(w));
    sys.add_row(rowp, Rel::Eq, Rat(0), "refined dual marginal w=" + std::to_string(w));
  }

  // the assumed weight-u element I^(n-u) x X^u
  if (u >= 1)
    sys.add_row({{ra[0][u][0], Rat(1)}}, Rel::Ge, Rat(1), "known element X^u");

  // refined MacWilliams: 2^(n-k) Rp = K (x) R applied to the refined counts;
  // odd output components must vanish
  const Int scale = pow2(n - k);
  for (long i2 = 0; i2 <= m; ++i2)
    for (long l2 = 0; l2 <= u; ++l2)
      for (long j2 = 0; j2 + l2 <= u; ++j2) {
        std::vector<std::pair<int, Rat>> row;
        for (long i = 0; i <= m; ++i)
          for (long l = 0; l <= u; l += 2)
            for (long j = 0; j + l <= u; ++j) {
              Int coef = kx[i2][i] * ker.at(j2, l2, j, l);
              if (coef != 0) row.emplace_back(ra[i][j][l], Rat(coef));
            }
        std::string tag = "refined macwilliams (" + std::to_string(i2) + "," +
                          std::to_string(j2) + "," + std::to_string(l2) + ")";
        if (l2 % 2 == 0) {
          row.emplace_back(rp[i2][j2][l2], Rat(-scale));
          sys.add_row(row, Rel::Eq, Rat(0), tag);
        } else {
          sys.add_row(row, Rel::Eq, Rat(0), tag + " odd");
        }
      }

  return sys;
}

lpsolver::ConstraintSystem refined_seeded_system(const CodeParams& p, long u,
                                                 const std::vector<Int>& Aw) {
  validate(p);
  if (p.c != 0) throw std::invalid_argument("refined_seeded_system: c = 0 path only");
  if (u < 1 || u > p.n) throw std::invalid_argument("refined_seeded_system: 1 <= u <= n");
  const long n = p.n, k = p.k, m = n - u;
  if (static_cast<long>(Aw.size()) != n + 1)
    throw std::invalid_argument("refined_seeded_system: Aw must have n+1 entries");
  if (Aw[0] != 1) throw std::invalid_argument("refined_seeded_system: A_0 must be 1");
  if (Aw[u] < 1)
    throw std::invalid_argument("refined_seeded_system: A_u must be positive for the X^u element");
  {
    Int total(0);
    for (const auto& v : Aw) total += v;
    if (total != pow2(n - k))
      throw std::invalid_argument("refined_seeded_system: sum A_w must be 2^(n-k)");
  }

  // dual weight distribution by the plain transform; candidate distributions
  // that fail integrality cannot come from a group
  auto tn = kraw::build_table(n);
  const Int scale = pow2(n - k);
  std::vector<Int> Pw(n + 1);
  for (long w = 0; w <= n; ++w) {
    Int acc(0);
    for (long wp = 0; wp <= n; ++wp) acc += Aw[wp] * tn.at(w, wp);
    if (acc < 0 || !mpz_divisible_p(acc.get_mpz_t(), scale.get_mpz_t()))
      throw std::invalid_argument("refined_seeded_system: dual transform not integral");
    mpz_divexact(Pw[w].get_mpz_t(), acc.get_mpz_t(), scale.get_mpz_t());
  }

  auto ker = refined_kernel(u);
  std::vector<std::vector<Int>> kx(m + 1, std::vector<Int>(m + 1, Int(1)));
  if (m >= 1) kx = kraw::build_table(m).values;

  // kernel antisymmetry under the mirror (j,l) -> (u-j-l,l): odd output rows
  // cancel on mirror-merged variables, even output rows coincide with their
  // mirrored counterpart
  for (long l2 = 0; l2 <= u; ++l2)
    for (long j2 = 0; j2 + l2 <= u; ++j2)
      for (long l = 0; l <= u; ++l)
        for (long j = 0; j + l <= u; ++j) {
          const Int& a = ker.at(j2, l2, j, l);
          const Int& b = ker.at(j2, l2, u - j - l, l);
          if (l2 % 2 == 1 ? (a != -b) : (a != b))
            throw std::logic_error("refined kernel mirror symmetry violated");
        }

  lpsolver::ConstraintSystem sys;

  // orbit variables: profile (i,j,l) merged with its X^u-translate
  // (i,u-j-l,l); a profile whose own or mirrored total weight is outside the
  // candidate support is identically zero and never becomes a variable
  struct Orbit {
    long i, j, l;  // canonical: j <= u-j-l
  };
  std::vector<Orbit> orbits;
  std::vector<std::vector<std::vector<int>>> ovar(
      m + 1, std::vector<std::vector<int>>(u + 1, std::vector<int>(u + 1, -1)));
  auto in_support = [&](long w) { return w >= 0 && w <= n && Aw[w] > 0; };
  for (long i = 0; i <= m; ++i)
    for (long l = 0; l <= u; l += 2)
      for (long j = 0; j + l <= u; ++j) {
        long jm = u - j - l;
        if (j > jm) continue;  // canonical half
        long w = i + j + l, wm = i + jm + l;
        if (!in_support(w) || !in_support(wm)) continue;
        Int prof = binomial(m, i) * pow3(i) * binomial(u, j) * binomial(u - j, l) * pow2(l);
        Int prof_m = binomial(m, i) * pow3(i) * binomial(u, jm) * binomial(u - jm, l) * pow2(l);
        Int ub = std::min(std::min(prof, prof_m), std::min(Aw[w], Aw[wm]));
        int var = sys.add_variable("R_" + std::to_string(i) + "_" + std::to_string(j) +
                                       "_" + std::to_string(l),
                                   Rat(0), Rat(ub), true);
        ovar[i][j][l] = var;
        orbits.push_back({i, j, l});
      }

  // marginal rows over the support
  for (long w = 0; w <= n; ++w) {
    if (Aw[w] == 0) continue;
    std::vector<std::pair<int, Rat>> row;
    for (const auto& ob : orbits) {
      long jm = u - ob.j - ob.l;
      long w1 = ob.i + ob.j + ob.l, w2 = ob.i + jm + ob.l;
      long mult = (w1 == w ? 1 : 0) + (ob.j != jm && w2 == w ? 1 : 0);
      if (mult > 0) row.emplace_back(ovar[ob.i][ob.j][ob.l], Rat(mult));
    }
    sys.add_row(row, Rel::Eq, Rat(Aw[w]), "refined marginal w=" + std::to_string(w));
  }

  // the X^u element occupies the orbit of the identity profile
  if (ovar[0][0][0] < 0) throw std::logic_error("identity orbit missing");
  sys.add_row({{ovar[0][0][0], Rat(1)}}, Rel::Ge, Rat(1), "known element X^u");

  // transform rows (dual refined variables eliminated): for canonical even
  // outputs the value 2^(n-k) Rp_{i2,j2,l2} must be nonnegative, and zero
  // whenever both its own and its mirrored weight class are outside the dual
  // support
  auto in_dual_support = [&](long w) { return w >= 0 && w <= n && Pw[w] > 0; };
  for (long i2 = 0; i2 <= m; ++i2)
    for (long l2 = 0; l2 <= u; l2 += 2)
      for (long j2 = 0; j2 + l2 <= u; ++j2) {
        long jm2 = u - j2 - l2;
        if (j2 > jm2) continue;  // mirrored rows coincide
        std::vector<std::pair<int, Rat>> row;
        for (const auto& ob : orbits) {
          long jm = u - ob.j - ob.l;
          Int coef = kx[i2][ob.i] * ker.at(j2, l2, ob.j, ob.l);
          if (ob.j != jm) coef += kx[i2][ob.i] * ker.at(j2, l2, jm, ob.l);
          if (coef != 0) row.emplace_back(ovar[ob.i][ob.j][ob.l], Rat(coef));
        }
        long w2 = i2 + j2 + l2, w2m = i2 + jm2 + l2;
        std::string tag = "refined dual (" + std::to_string(i2) + "," +
                          std::to_string(j2) + "," + std::to_string(l2) + ")";
        bool zero = !(in_dual_support(w2) && in_dual_support(w2m));
        if (row.empty()) {
          if (zero) continue;  // 0 = 0
          continue;            // 0 >= 0
        }
        sys.add_row(row, zero ? Rel::Eq : Rel::Ge, Rat(0), tag);
      }

  return sys;
}

std::string report_json(const CodeParams& p, const CompatResult& res,
                        double elapsed_seconds) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["params"] = {{"n", p.n}, {"k", p.k}, {"d", p.d}, {"c", p.c}};
  j["verdict"] = res.status == Status::Feasible     ? "feasible"
                 : res.status == Status::Infeasible ? "infeasible"
                                                    : "resource_limit";
  j["cases"] = nlohmann::json::array();
  for (const auto& cr : res.cases) {
    nlohmann::json c;
    c["case"] = cr.pc.label();
    if (!cr.solved) {
      c["status"] = "skipped";
    } else {
      c["status"] = cr.verdict.status == Status::Feasible     ? "feasible"
                    : cr.verdict.status == Status::Infeasible ? "infeasible"
                                                              : "resource_limit";
      c["nodes"] = cr.verdict.node_count;
      c["pivots"] = cr.verdict.pivot_count;
    }
    j["cases"].push_back(c);
  }
  if (res.status == Status::Feasible) {
    nlohmann::json w;
    w["case"] = res.witness_case->label();
    auto dump = [](const Distribution& mat) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : mat) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : r) row.push_back(v.get_str());
        rows.push_back(row);
      }
      return rows;
    };
    w["a"] = dump(res.witness_a);
    w["a_perp"] = dump(res.witness_aperp);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["stats"] = {{"elapsed_seconds", elapsed_seconds}, {"nodes", res.total_nodes}};
  return j.dump(2);
}

}  // namespace eaqec::feasibility
