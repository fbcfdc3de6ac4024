#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eaqec/lpsolver.hpp"
#include "eaqec/pauli.hpp"
#include "eaqec/rational.hpp"

namespace eaqec::feasibility {

struct CodeParams {
  long n = 0, k = 0, d = 0, c = 0;
  long r() const { return n - k - c; }
  bool max_entanglement() const { return c == n - k; }
};

// 0 <= c <= n-k <= n and 1 <= d <= n
void validate(const CodeParams& p);

using GenType = pauli::GroupType;

// One disjunct of the parity constraint block: either the all-even-isotropic
// branch with an independent I/III choice per even-sum row, or the
// odd-isotropic branch (type II everywhere).
struct ParityCase {
  bool type2 = false;
  GenType s_side = GenType::I;      // group with c pairs, r isotropic
  GenType dual_iso = GenType::I;    // group with k pairs, r isotropic
  GenType dual_total = GenType::I;  // group with k+c pairs, r isotropic
  std::string label() const;
};

std::vector<ParityCase> parity_cases(const CodeParams& p);

// Integer program over A_{i,j}, A^perp_{i,j} (i <= n, j <= c): unit and
// zero rows, cardinality sums, exact MacWilliams equalities, shadow
// inequalities, the strict distance row (as +1 under integrality), and the
// selected parity-case equalities.
lpsolver::ConstraintSystem build_constraints(const CodeParams& p, const ParityCase& pc);

using Distribution = std::vector<std::vector<Int>>;  // (n+1) x (c+1)

struct CaseResult {
  ParityCase pc;
  lpsolver::Verdict verdict;
  bool solved = false;  // false when skipped after an earlier feasible case
};

struct CompatResult {
  lpsolver::Status status = lpsolver::Status::ResourceLimit;
  std::vector<CaseResult> cases;
  std::optional<ParityCase> witness_case;
  Distribution witness_a, witness_aperp;
  long total_nodes = 0;
};

// Feasible iff some parity case admits an integer solution; infeasible only
// when every case is infeasible.
CompatResult code_compatible(const CodeParams& p,
                             const lpsolver::SolveOptions& opt = {},
                             int threads = 1);

struct DistanceScanResult {
  long upper = 0;
  bool resolved = false;  // false when a resource limit interrupted the scan
  long capped_at = 0;     // scan cap that was applied
  std::vector<std::pair<long, lpsolver::Status>> trace;
};

// Largest d such that the integer program is feasible, scanning upward.
DistanceScanResult lp_distance_bound(long n, long k, long c, long d_max_scan = 0,
                                     const lpsolver::SolveOptions& opt = {},
                                     int threads = 1);

// MacWilliams transform (1/2^(n+c-k)) sum A K K; nullopt when an entry is
// not a nonnegative integer.
std::optional<Distribution> dual_transform(const CodeParams& p, const Distribution& A);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> violations;
  Distribution a_perp;
};

// Substitute a candidate split distribution (dual derived by transform) into
// every constraint of the given parity case.
VerifyResult verify_distribution(const CodeParams& p, const Distribution& A,
                                 const ParityCase& pc);

// ---- refined weight enumerators (c = 0 path, S contains I^(n-u) X^u) ----

// Transform kernel of the u-fold refined functional: entry at output pair
// (j2,l2), input pair (j,l) is the y1^j2 y2^l2 coefficient of
// (y0+y1+2y2)^(u-j-l) (y0+y1-2y2)^j (y0-y1)^l.
struct RefinedKernel {
  long u = 0;
  long stride = 0;                       // number of (j,l) pairs with j+l <= u
  std::vector<Int> entries;              // [out * stride + in]
  long pair_index(long j, long l) const;
  const Int& at(long j2, long l2, long j, long l) const;
};

RefinedKernel refined_kernel(long u);

// Per-element refined profile counts: out[i][j][l] over i <= n-u (weight off
// the block), j X's and l Y/Z's on the block.
std::vector<std::vector<std::vector<Int>>> refined_distribution(
    const std::vector<pauli::Element>& elems, long n, long u);

// Base system extended with refined variables A_{i,j,l}, A^perp_{i,j,l}
// (even l only), marginalization ties, the known-element row, and the
// refined MacWilliams equalities.
lpsolver::ConstraintSystem refined_constraints(const CodeParams& p,
                                               const ParityCase& pc, long u);

// Refined system with the base weight distribution pinned to a known
// candidate: dual refined variables are eliminated through the transform and
// mirror-symmetric profiles (multiplication by the X block) are merged,
// which keeps the exact-rational solve small.  Infeasibility of this system
// rules the distribution out.
lpsolver::ConstraintSystem refined_seeded_system(const CodeParams& p, long u,
                                                 const std::vector<Int>& Aw);

std::string report_json(const CodeParams& p, const CompatResult& res,
                        double elapsed_seconds);

}  // namespace eaqec::feasibility
