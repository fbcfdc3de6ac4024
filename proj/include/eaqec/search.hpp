#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "eaqec/pauli.hpp"

namespace eaqec::search {

// Standard-form check matrix for a maximal-entanglement code: identity
// blocks fix the syndromes of the first s qubits, the remaining columns are
// free.  m = n-k+c rows.
struct StandardFormTemplate {
  long n = 0, k = 0, c = 0, s = 0, m = 0;
};

// Requires c = n-k (nondegenerate form) and s = c >= d-1.
StandardFormTemplate standard_form_template(long n, long k, long c, long d);

struct CheckMatrix {
  long n = 0;
  std::vector<pauli::Element> rows;
};

// Streams every assignment where each free qubit receives a syndrome triple
// (s^x, s^z, s^x xor s^z) of distinct nonzero values unused by any other
// qubit.  Free qubits take triples in increasing order of the triple
// minimum: permuting qubits preserves rank(H Lambda H^T) and syndrome
// distinctness, so one representative per permutation orbit suffices.
// Returns the number of candidates emitted; cb returning false stops.
long enumerate_candidates(const StandardFormTemplate& tmpl, long d,
                          const std::function<bool(const CheckMatrix&)>& cb);

// rank(H Lambda H^T) = 2c
bool admissible(const CheckMatrix& H, long c);

enum class Outcome { Exists, NonExistent, Inconclusive };

struct SearchResult {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<CheckMatrix> witness;
  long candidates = 0;
  long admissible_count = 0;
};

// Scans the stream; an existence witness must pass both the rank test and
// the brute-force distance check.
SearchResult exists_by_search(long n, long k, long d, long c,
                              long budget = 100'000'000);

// Brute force over the dual space minus the isotropic part.
bool verify_distance(const CheckMatrix& H, long n, long k, long c, long d);

}  // namespace eaqec::search
