#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eaqec/rational.hpp"

namespace eaqec::pauli {

// Phase-free Pauli operator on n qubits (n <= 64), stored as the image
// (z, x) of the binary map: bit q of z / x is the Z / X exponent on qubit q.
struct Element {
  long n = 0;
  std::uint64_t z = 0, x = 0;

  long weight() const { return __builtin_popcountll(z | x); }
  bool is_identity() const { return (z | x) == 0; }
  bool operator==(const Element&) const = default;
};

Element identity(long n);
Element make_element(long n, std::uint64_t z, std::uint64_t x);
Element mul(const Element& g, const Element& h);

// 0 iff the operators commute.
int symplectic_inner(const Element& g, const Element& h);

// wt(gh) mod 2, computed from the product itself.
int product_weight_parity(const Element& g, const Element& h);

// c symplectic pairs (g_i, h_i) plus r pairwise-commuting isotropic
// generators, all independent over GF(2).
struct GeneratorSet {
  long n = 0;
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<Element> isotropic;

  long c() const { return static_cast<long>(pairs.size()); }
  long r() const { return static_cast<long>(isotropic.size()); }
  std::vector<Element> flat() const;
};

// Throws std::invalid_argument if the commutation relations fail or the
// generators are dependent.
void validate(const GeneratorSet& gens);

// All 2^(2c+r) elements of the generated group, phases discarded.
// Enumeration cap 2^24.
std::vector<Element> enumerate_group(const GeneratorSet& gens);

struct SplitDistribution {
  long n = 0, c = 0;
  std::vector<std::vector<Int>> a;  // (n+1) x (c+1)
};

// Elements live on n + c qubits; the trailing c qubits are the B side.
SplitDistribution split_distribution(const std::vector<Element>& elems, long n, long c);

// Plain weight distribution (c = 0 view) of a set of n-qubit elements.
std::vector<Int> weight_distribution(const std::vector<Element>& elems, long n);

// GF(2) rank of the tau-images.
long rank(const std::vector<Element>& elems);

// Basis of { h : <h,g> = 0 for all generators g }, dimension 2n - rank.
std::vector<Element> dual_basis(const std::vector<Element>& span_basis, long ambient_n);
std::vector<Element> dual_basis(const GeneratorSet& gens, long ambient_n);

// Symplectic Gram-Schmidt: split a GF(2) basis into symplectic pairs and an
// isotropic remainder generating the same span.
GeneratorSet symplectic_decompose(std::vector<Element> basis, long n);

enum class GroupType { I, II, III };
std::string to_string(GroupType t);

// Equivalent generating set (same span) whose generators match one of the
// three weight-parity patterns, plus the pattern tag.
std::pair<GeneratorSet, GroupType> canonicalize_type(const GeneratorSet& gens);

// (number of even-weight elements, number of odd-weight elements)
std::pair<Int, Int> even_odd_counts(const std::vector<Element>& elems);

// Closed forms for the even/odd element counts of a type-i group with c
// pairs and r isotropic generators.
Int closed_form_even(GroupType t, long c, long r);
Int closed_form_odd(GroupType t, long c, long r);

// rank(H Lambda H^T) over GF(2), where rows are the tau-images.
long symplectic_rank(const std::vector<Element>& rows);

// Weight distribution of the shadow { E : <E,g> = wt(g) mod 2 for all g }
// of an Abelian group, by scanning all 4^n Paulis.  Requires c() == 0 and
// n <= 10.
std::vector<Int> shadow_distribution(const GeneratorSet& gens);

// Check-matrix text format: one row per line, 2n characters over {0,1},
// Z part then X part.
std::vector<Element> parse_check_matrix(std::istream& in, long n);
std::vector<Element> parse_check_matrix(const std::string& text, long n);
std::string format_check_matrix(const std::vector<Element>& rows);

}  // namespace eaqec::pauli
