#include "eaqec/search.hpp"

#include <stdexcept>
#include <unordered_set>

namespace eaqec::search {

StandardFormTemplate standard_form_template(long n, long k, long c, long d) {
  if (n < 1 || k < 0 || c < 0) throw std::invalid_argument("template: bad parameters");
  if (c != n - k)
    throw std::invalid_argument("template: standard-form search covers maximal entanglement (c = n-k)");
  if (d < 3) throw std::invalid_argument("template: need d >= 3");
  long s = c;
  if (s < d - 1) throw std::invalid_argument("template: need identity block s = c >= d-1");
  long m = n - k + c;
  if (m > 20) throw std::length_error("template: syndrome space above 2^20");
  if (s > n) throw std::invalid_argument("template: s exceeds n");
  return StandardFormTemplate{n, k, c, s, m};
}

namespace {

struct Assignment {
  std::vector<std::uint32_t> sx, sz;  // per qubit
};

CheckMatrix assemble(const StandardFormTemplate& t, const Assignment& asg) {
  CheckMatrix h;
  h.n = t.n;
  h.rows.reserve(t.m);
  for (long i = 0; i < t.m; ++i) {
    std::uint64_t z = 0, x = 0;
    for (long q = 0; q < t.n; ++q) {
      if ((asg.sx[q] >> (t.m - 1 - i)) & 1) z |= 1ULL << q;
      if ((asg.sz[q] >> (t.m - 1 - i)) & 1) x |= 1ULL << q;
    }
    h.rows.push_back(pauli::Element{t.n, z, x});
  }
  return h;
}

}  // namespace

long enumerate_candidates(const StandardFormTemplate& t, long d,
                          const std::function<bool(const CheckMatrix&)>& cb) {
  if (d < 3) throw std::invalid_argument("enumerate_candidates: need d >= 3");
  const std::uint32_t space = 1u << t.m;
  std::vector<bool> used(space, false);
  used[0] = true;

  Assignment asg;
  asg.sx.assign(t.n, 0);
  asg.sz.assign(t.n, 0);
  for (long q = 0; q < t.s; ++q) {
    std::uint32_t sx = 1u << (t.m - 1 - q);
    std::uint32_t sz = 1u << (t.m - 1 - t.s - q);
    asg.sx[q] = sx;
    asg.sz[q] = sz;
    used[sx] = used[sz] = used[sx ^ sz] = true;
  }

  long count = 0;
  bool stop = false;

  // free qubits t.s .. t.n-1, triples in increasing order of their minimum
  std::function<void(long, std::uint32_t)> rec = [&](long q, std::uint32_t prev_min) {
    if (stop) return;
    if (q == t.n) {
      ++count;
      if (!cb(assemble(t, asg))) stop = true;
      return;
    }
    for (std::uint32_t mn = prev_min + 1; mn < space && !stop; ++mn) {
      if (used[mn]) continue;
      for (std::uint32_t b = mn + 1; b < space && !stop; ++b) {
        if (used[b]) continue;
        std::uint32_t y = mn ^ b;
        if (y < b || used[y]) continue;  // y < b would repeat the set
        used[mn] = used[b] = used[y] = true;
        const std::uint32_t tri[3] = {mn, b, y};
        for (int ix = 0; ix < 3 && !stop; ++ix)
          for (int iz = 0; iz < 3 && !stop; ++iz) {
            if (ix == iz) continue;
            asg.sx[q] = tri[ix];
            asg.sz[q] = tri[iz];
            rec(q + 1, mn);
          }
        used[mn] = used[b] = used[y] = false;
      }
    }
  };
  rec(t.s, 0);
  return count;
}

bool admissible(const CheckMatrix& h, long c) {
  return pauli::symplectic_rank(h.rows) == 2 * c;
}

bool verify_distance(const CheckMatrix& h, long n, long k, long c, long d) {
  (void)k;
  (void)c;
  long m = static_cast<long>(h.rows.size());
  if (pauli::rank(h.rows) != m)
    throw std::invalid_argument("verify_distance: dependent check-matrix rows");
  long dual_dim = 2 * n - m;
  if (dual_dim > 24) throw std::length_error("verify_distance: dual space above 2^24");
  if (n > 32) throw std::length_error("verify_distance: n above packing limit");

  // radical = row space intersected with its symplectic orthogonal, from the
  // nullspace of the Gram matrix H Lambda H^T
  std::vector<std::uint64_t> gram(m, 0);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      if (pauli::symplectic_inner(h.rows[i], h.rows[j])) gram[i] |= 1ULL << j;
  // nullspace of gram over GF(2), coefficients lambda with lambda G = 0
  std::vector<std::uint64_t> rowsg = gram;
  std::vector<long> pivot_col;
  long rr = 0;
  for (long col = 0; col < m && rr < m; ++col) {
    long piv = -1;
    for (long i = rr; i < m; ++i)
      if ((rowsg[i] >> col) & 1) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rowsg[rr], rowsg[piv]);
    for (long i = 0; i < m; ++i)
      if (i != rr && ((rowsg[i] >> col) & 1)) rowsg[i] ^= rowsg[rr];
    pivot_col.push_back(col);
    ++rr;
  }
  // gram is symmetric, so the row nullspace doubles as the lambda space
  std::vector<bool> is_pivot(m, false);
  for (long cidx : pivot_col) is_pivot[cidx] = true;
  std::vector<pauli::Element> radical_basis;
  for (long free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    std::uint64_t lambda = 1ULL << free;
    for (long i = 0; i < rr; ++i)
      if ((rowsg[i] >> free) & 1) lambda |= 1ULL << pivot_col[i];
    pauli::Element e = pauli::identity(n);
    for (long i = 0; i < m; ++i)
      if ((lambda >> i) & 1) e = pauli::mul(e, h.rows[i]);
    radical_basis.push_back(e);
  }
  std::unordered_set<std::uint64_t> radical;
  {
    long rb = static_cast<long>(radical_basis.size());
    pauli::Element cur = pauli::identity(n);
    radical.insert(0);
    for (std::uint64_t kk = 1; kk < (1ULL << rb); ++kk) {
      cur = pauli::mul(cur, radical_basis[__builtin_ctzll(kk)]);
      radical.insert(cur.z << n | cur.x);
    }
  }

  auto basis = pauli::dual_basis(h.rows, n);
  if (static_cast<long>(basis.size()) != dual_dim)
    throw std::logic_error("verify_distance: dual dimension mismatch");
  pauli::Element cur = pauli::identity(n);
  for (std::uint64_t kk = 1; kk < (1ULL << dual_dim); ++kk) {
    cur = pauli::mul(cur, basis[__builtin_ctzll(kk)]);
    if (cur.weight() < d && !radical.count(cur.z << n | cur.x)) return false;
  }
  return true;
}

SearchResult exists_by_search(long n, long k, long d, long c, long budget) {
  auto tmpl = standard_form_template(n, k, c, d);
  SearchResult res;
  bool budget_hit = false;
  long seen = 0;
  res.candidates = enumerate_candidates(tmpl, d, [&](const CheckMatrix& h) {
    if (++seen > budget) {
      budget_hit = true;
      return false;
    }
    if (admissible(h, c)) {
      ++res.admissible_count;
      if (verify_distance(h, n, k, c, d)) {
        res.witness = h;
        return false;
      }
    }
    return true;
  });
  if (res.witness) {
    res.outcome = Outcome::Exists;
  } else if (budget_hit) {
    res.outcome = Outcome::Inconclusive;
  } else {
    res.outcome = Outcome::NonExistent;
  }
  return res;
}

}  // namespace eaqec::search
