#include "eaqec/pauli.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace eaqec::pauli {

namespace {

void check_n(long n) {
  if (n < 0 || n > 64) throw std::invalid_argument("pauli: qubit count must be in [0,64]");
}

void check_same_n(const Element& g, const Element& h) {
  if (g.n != h.n) throw std::invalid_argument("pauli: length mismatch");
}

int parity64(std::uint64_t v) { return __builtin_parityll(v); }

// 2n-bit row vector (z | x) for GF(2) linear algebra.
struct Vec2n {
  std::uint64_t z = 0, x = 0;
  bool zero() const { return (z | x) == 0; }
  Vec2n operator^(const Vec2n& o) const { return {z ^ o.z, x ^ o.x}; }
  bool get(long bit, long n) const {
    return bit < n ? ((z >> bit) & 1) : ((x >> (bit - n)) & 1);
  }
};

long gauss_rank(std::vector<Vec2n> rows, long n) {
  long rank = 0;
  for (long col = 0; col < 2 * n; ++col) {
    long pivot = -1;
    for (long i = rank; i < static_cast<long>(rows.size()); ++i)
      if (rows[i].get(col, n)) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (long i = 0; i < static_cast<long>(rows.size()); ++i)
      if (i != rank && rows[i].get(col, n)) rows[i] = rows[i] ^ rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace

Element identity(long n) {
  check_n(n);
  return Element{n, 0, 0};
}

Element make_element(long n, std::uint64_t z, std::uint64_t x) {
  check_n(n);
  std::uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  if ((z & ~mask) || (x & ~mask))
    throw std::invalid_argument("pauli: bits beyond qubit count");
  return Element{n, z, x};
}

Element mul(const Element& g, const Element& h) {
  check_same_n(g, h);
  return Element{g.n, g.z ^ h.z, g.x ^ h.x};
}

int symplectic_inner(const Element& g, const Element& h) {
  check_same_n(g, h);
  return parity64((g.z & h.x) ^ (g.x & h.z));
}

int product_weight_parity(const Element& g, const Element& h) {
  return static_cast<int>(mul(g, h).weight() & 1);
}

std::vector<Element> GeneratorSet::flat() const {
  std::vector<Element> out;
  for (const auto& [g, h] : pairs) {
    out.push_back(g);
    out.push_back(h);
  }
  for (const auto& g : isotropic) out.push_back(g);
  return out;
}

void validate(const GeneratorSet& gens) {
  long c = gens.c(), r = gens.r();
  auto all = gens.flat();
  for (const auto& e : all)
    if (e.n != gens.n) throw std::invalid_argument("generator set: length mismatch");
  // pair relations: <g_i,h_i> = 1, everything else commutes
  for (long i = 0; i < c; ++i) {
    if (symplectic_inner(gens.pairs[i].first, gens.pairs[i].second) != 1)
      throw std::invalid_argument("generator set: symplectic pair must anticommute");
    for (long j = i + 1; j < c; ++j) {
      if (symplectic_inner(gens.pairs[i].first, gens.pairs[j].first) ||
          symplectic_inner(gens.pairs[i].first, gens.pairs[j].second) ||
          symplectic_inner(gens.pairs[i].second, gens.pairs[j].first) ||
          symplectic_inner(gens.pairs[i].second, gens.pairs[j].second))
        throw std::invalid_argument("generator set: distinct pairs must commute");
    }
  }
  for (long i = 0; i < r; ++i) {
    for (long j = i + 1; j < r; ++j)
      if (symplectic_inner(gens.isotropic[i], gens.isotropic[j]))
        throw std::invalid_argument("generator set: isotropic generators must commute");
    for (long j = 0; j < c; ++j)
      if (symplectic_inner(gens.isotropic[i], gens.pairs[j].first) ||
          symplectic_inner(gens.isotropic[i], gens.pairs[j].second))
        throw std::invalid_argument("generator set: isotropic must commute with pairs");
  }
  if (rank(all) != 2 * c + r)
    throw std::invalid_argument("generator set: generators are dependent");
}

std::vector<Element> enumerate_group(const GeneratorSet& gens) {
  validate(gens);
  auto flat = gens.flat();
  long m = static_cast<long>(flat.size());
  if (m > 24) throw std::length_error("enumerate_group: more than 2^24 elements");
  std::vector<Element> out;
  out.reserve(1ULL << m);
  Element cur = identity(gens.n);
  out.push_back(cur);
  // Gray-code walk: element k differs from k-1 by one generator.
  for (std::uint64_t k = 1; k < (1ULL << m); ++k) {
    long bit = __builtin_ctzll(k);
    cur = mul(cur, flat[bit]);
    out.push_back(cur);
  }
  return out;
}

SplitDistribution split_distribution(const std::vector<Element>& elems, long n, long c) {
  SplitDistribution d;
  d.n = n;
  d.c = c;
  d.a.assign(n + 1, std::vector<Int>(c + 1, Int(0)));
  std::uint64_t amask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  for (const auto& e : elems) {
    if (e.n != n + c) throw std::invalid_argument("split_distribution: length mismatch");
    std::uint64_t sup = e.z | e.x;
    long wa = __builtin_popcountll(sup & amask);
    long wb = (c == 0) ? 0 : __builtin_popcountll(sup >> n);
    d.a[wa][wb] += 1;
  }
  return d;
}

std::vector<Int> weight_distribution(const std::vector<Element>& elems, long n) {
  std::vector<Int> w(n + 1, Int(0));
  for (const auto& e : elems) {
    if (e.n != n) throw std::invalid_argument("weight_distribution: length mismatch");
    w[e.weight()] += 1;
  }
  return w;
}

long rank(const std::vector<Element>& elems) {
  if (elems.empty()) return 0;
  long n = elems[0].n;
  std::vector<Vec2n> rows;
  rows.reserve(elems.size());
  for (const auto& e : elems) rows.push_back({e.z, e.x});
  return gauss_rank(std::move(rows), n);
}

std::vector<Element> dual_basis(const std::vector<Element>& span_basis, long ambient_n) {
  check_n(ambient_n);
  long n = ambient_n;
  // <v, y> = v.z & y.x ^ v.x & y.z: y orthogonal to all v iff the swapped
  // rows (v.x | v.z) annihilate y = (y.z | y.x).
  std::vector<Vec2n> rows;
  for (const auto& e : span_basis) {
    if (e.n != n) throw std::invalid_argument("dual_basis: length mismatch");
    rows.push_back({e.x, e.z});
  }
  long m = static_cast<long>(rows.size());
  // Gaussian elimination to row echelon, tracking pivot columns.
  std::vector<long> pivot_col;
  long rr = 0;
  for (long col = 0; col < 2 * n && rr < m; ++col) {
    long pivot = -1;
    for (long i = rr; i < m; ++i)
      if (rows[i].get(col, n)) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(rows[rr], rows[pivot]);
    for (long i = 0; i < m; ++i)
      if (i != rr && rows[i].get(col, n)) rows[i] = rows[i] ^ rows[rr];
    pivot_col.push_back(col);
    ++rr;
  }
  std::vector<bool> is_pivot(2 * n, false);
  for (long c : pivot_col) is_pivot[c] = true;
  std::vector<Element> basis;
  for (long free = 0; free < 2 * n; ++free) {
    if (is_pivot[free]) continue;
    Vec2n y{0, 0};
    auto set_bit = [&](long bit) {
      if (bit < n)
        y.z |= 1ULL << bit;
      else
        y.x |= 1ULL << (bit - n);
    };
    set_bit(free);
    for (long i = 0; i < rr; ++i)
      if (rows[i].get(free, n)) set_bit(pivot_col[i]);
    basis.push_back(Element{n, y.z, y.x});
  }
  return basis;
}

std::vector<Element> dual_basis(const GeneratorSet& gens, long ambient_n) {
  validate(gens);
  return dual_basis(gens.flat(), ambient_n);
}

GeneratorSet symplectic_decompose(std::vector<Element> basis, long n) {
  GeneratorSet out;
  out.n = n;
  std::vector<Element> work = std::move(basis);
  while (true) {
    long gi = -1, hi = -1;
    for (long i = 0; i < static_cast<long>(work.size()) && gi < 0; ++i)
      for (long j = i + 1; j < static_cast<long>(work.size()); ++j)
        if (symplectic_inner(work[i], work[j]) == 1) {
          gi = i;
          hi = j;
          break;
        }
    if (gi < 0) break;
    Element g = work[gi], h = work[hi];
    std::vector<Element> rest;
    for (long i = 0; i < static_cast<long>(work.size()); ++i) {
      if (i == gi || i == hi) continue;
      Element e = work[i];
      if (symplectic_inner(e, h)) e = mul(e, g);
      if (symplectic_inner(e, g)) e = mul(e, h);
      if (!e.is_identity()) rest.push_back(e);
    }
    out.pairs.emplace_back(g, h);
    work = std::move(rest);
  }
  // remove redundancies in the isotropic remainder
  std::vector<Element> iso;
  for (const auto& e : work) {
    iso.push_back(e);
    if (rank(iso) != static_cast<long>(iso.size())) iso.pop_back();
  }
  out.isotropic = std::move(iso);
  return out;
}

std::string to_string(GroupType t) {
  switch (t) {
    case GroupType::I: return "I";
    case GroupType::II: return "II";
    case GroupType::III: return "III";
  }
  return "?";
}

std::pair<GeneratorSet, GroupType> canonicalize_type(const GeneratorSet& gens) {
  validate(gens);
  GeneratorSet g = gens;
  long c = g.c(), r = g.r();
  auto odd = [](const Element& e) { return (e.weight() & 1) != 0; };

  // Odd isotropic generator present: fold it into every other odd generator.
  long oi = -1;
  for (long i = 0; i < r; ++i)
    if (odd(g.isotropic[i])) { oi = i; break; }
  if (oi >= 0) {
    const Element piv = g.isotropic[oi];
    for (long i = 0; i < r; ++i)
      if (i != oi && odd(g.isotropic[i])) g.isotropic[i] = mul(g.isotropic[i], piv);
    for (auto& [a, b] : g.pairs) {
      if (odd(a)) a = mul(a, piv);
      if (odd(b)) b = mul(b, piv);
    }
    std::swap(g.isotropic[0], g.isotropic[oi]);
    validate(g);
    return {g, GroupType::II};
  }

  // All isotropic even.  With no pairs the group is all-even: type I.
  if (c == 0) {
    validate(g);
    return {g, GroupType::I};
  }

  // Arrange an odd generator at pair 0 position g_1 if any pair member is odd.
  long opair = -1;
  for (long i = 0; i < c; ++i)
    if (odd(g.pairs[i].first) || odd(g.pairs[i].second)) { opair = i; break; }
  if (opair < 0) {
    validate(g);
    return {g, GroupType::I};
  }
  std::swap(g.pairs[0], g.pairs[opair]);
  if (!odd(g.pairs[0].first)) std::swap(g.pairs[0].first, g.pairs[0].second);

  // Clear odd weights from the other pairs, patching h_1 to keep the
  // cross-commutation relations.
  for (long i = 1; i < c; ++i) {
    if (odd(g.pairs[i].first)) {
      g.pairs[i].first = mul(g.pairs[i].first, g.pairs[0].first);
      g.pairs[0].second = mul(g.pairs[0].second, g.pairs[i].second);
    }
    if (odd(g.pairs[i].second)) {
      g.pairs[i].second = mul(g.pairs[i].second, g.pairs[0].first);
      g.pairs[0].second = mul(g.pairs[0].second, g.pairs[i].first);
    }
  }

  if (odd(g.pairs[0].second)) {
    validate(g);
    return {g, GroupType::III};
  }
  g.pairs[0].first = mul(g.pairs[0].first, g.pairs[0].second);
  validate(g);
  return {g, GroupType::I};
}

std::pair<Int, Int> even_odd_counts(const std::vector<Element>& elems) {
  Int even(0), odd(0);
  for (const auto& e : elems)
    (e.weight() & 1) ? ++odd : ++even;
  return {even, odd};
}

Int closed_form_even(GroupType t, long c, long r) {
  switch (t) {
    case GroupType::I: return pow2(r) * (pow4(c) + pow2(c)) / 2;
    case GroupType::III: return pow2(r) * (pow4(c) - pow2(c)) / 2;
    case GroupType::II:
      if (r < 1) throw std::domain_error("type II needs r >= 1");
      return pow2(2 * c + r - 1);
  }
  throw std::logic_error("unreachable");
}

Int closed_form_odd(GroupType t, long c, long r) {
  return pow2(2 * c + r) - closed_form_even(t, c, r);
}

long symplectic_rank(const std::vector<Element>& rows) {
  long m = static_cast<long>(rows.size());
  for (const auto& e : rows)
    if (!rows.empty() && e.n != rows[0].n)
      throw std::invalid_argument("symplectic_rank: dimension mismatch");
  // M = H Lambda H^T over GF(2)
  std::vector<std::uint64_t> M(m, 0);
  if (m > 64) throw std::length_error("symplectic_rank: more than 64 rows");
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      if (symplectic_inner(rows[i], rows[j])) M[i] |= 1ULL << j;
  long rank = 0;
  for (long col = 0; col < m; ++col) {
    long pivot = -1;
    for (long i = rank; i < m; ++i)
      if ((M[i] >> col) & 1) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(M[rank], M[pivot]);
    for (long i = 0; i < m; ++i)
      if (i != rank && ((M[i] >> col) & 1)) M[i] ^= M[rank];
    ++rank;
  }
  return rank;
}

std::vector<Int> shadow_distribution(const GeneratorSet& gens) {
  validate(gens);
  if (gens.c() != 0) throw std::invalid_argument("shadow_distribution: group must be Abelian");
  long n = gens.n;
  if (n > 10) throw std::length_error("shadow_distribution: brute-force cap is n <= 10");
  std::vector<Int> dist(n + 1, Int(0));
  std::vector<int> parities;
  for (const auto& g : gens.isotropic) parities.push_back(static_cast<int>(g.weight() & 1));
  std::uint64_t lim = 1ULL << n;
  for (std::uint64_t z = 0; z < lim; ++z) {
    for (std::uint64_t x = 0; x < lim; ++x) {
      Element e{n, z, x};
      bool in_shadow = true;
      for (std::size_t i = 0; i < gens.isotropic.size() && in_shadow; ++i)
        in_shadow = symplectic_inner(e, gens.isotropic[i]) == parities[i];
      if (in_shadow) dist[e.weight()] += 1;
    }
  }
  return dist;
}

std::vector<Element> parse_check_matrix(std::istream& in, long n) {
  check_n(n);
  std::vector<Element> rows;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (static_cast<long>(line.size()) != 2 * n)
      throw std::invalid_argument("check matrix row must have 2n characters");
    std::uint64_t z = 0, x = 0;
    for (long q = 0; q < n; ++q) {
      char cz = line[q], cx = line[n + q];
      if ((cz != '0' && cz != '1') || (cx != '0' && cx != '1'))
        throw std::invalid_argument("check matrix rows are over {0,1}");
      if (cz == '1') z |= 1ULL << q;
      if (cx == '1') x |= 1ULL << q;
    }
    rows.push_back(Element{n, z, x});
  }
  return rows;
}

std::vector<Element> parse_check_matrix(const std::string& text, long n) {
  std::istringstream in(text);
  return parse_check_matrix(in, n);
}

std::string format_check_matrix(const std::vector<Element>& rows) {
  std::string out;
  for (const auto& e : rows) {
    for (long q = 0; q < e.n; ++q) out += ((e.z >> q) & 1) ? '1' : '0';
    for (long q = 0; q < e.n; ++q) out += ((e.x >> q) & 1) ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace eaqec::pauli
