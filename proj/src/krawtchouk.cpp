#include "eaqec/krawtchouk.hpp"

#include <stdexcept>
#include <type_traits>

namespace eaqec::kraw {

namespace {

void check_degree(long i, long n) {
  if (i < 0 || i > n) throw std::domain_error("krawtchouk: degree out of range");
}

// (i+1) K_{i+1}(x) = (3n - 2i - 4x) K_i(x) - 3(n - i + 1) K_{i-1}(x)
template <typename V, typename X>
std::vector<V> recurrence(long imax, const X& x, long n) {
  std::vector<V> k(imax + 1);
  k[0] = 1;
  if (imax >= 1) k[1] = V(3 * n) - V(4) * x;
  for (long i = 1; i < imax; ++i) {
    V next = (V(3 * n - 2 * i) - V(4) * x) * k[i] - V(3 * (n - i + 1)) * k[i - 1];
    if constexpr (std::is_same_v<V, Int>) {
      Int q;
      mpz_divexact_ui(q.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(i + 1));
      k[i + 1] = q;
    } else {
      k[i + 1] = next / (i + 1);
    }
  }
  return k;
}

}  // namespace

std::vector<Int> eval_all(long imax, long x, long n) {
  check_degree(imax, n);
  return recurrence<Int, long>(imax, x, n);
}

std::vector<Rat> eval_all(long imax, const Rat& x, long n) {
  check_degree(imax, n);
  return recurrence<Rat, Rat>(imax, x, n);
}

Int eval(long i, long x, long n) {
  check_degree(i, n);
  return eval_all(i, x, n)[i];
}

Rat eval(long i, const Rat& x, long n) {
  check_degree(i, n);
  return eval_all(i, x, n)[i];
}

Table build_table(long n) {
  if (n < 1) throw std::domain_error("build_table: n must be >= 1");
  Table t;
  t.n = n;
  t.values.assign(n + 1, std::vector<Int>(n + 1));
  for (long j = 0; j <= n; ++j) {
    auto col = eval_all(n, j, n);
    for (long i = 0; i <= n; ++i) t.values[i][j] = col[i];
  }
  return t;
}

Int alpha(long l, long i, long j, long r, long n) {
  if (l < 0 || i < 0 || j < 0 || r < 0) return 0;
  long m = 2 * l + 2 * r - i - j;
  Int b1 = binomial(l, m);
  if (b1 == 0) return 0;
  Int b2 = binomial(n - l, r);
  if (b2 == 0) return 0;
  Int b3 = binomial(m, l + r - j);
  if (b3 == 0) return 0;
  // m <= l forces the 2-exponent i + j - 2r - l >= 0
  long e2 = i + j - 2 * r - l;
  return b1 * b2 * b3 * pow2(static_cast<unsigned long>(e2)) *
         pow3(static_cast<unsigned long>(r));
}

RootBracket smallest_root(long t, long n, const Rat& width_target) {
  if (t < 1 || t > n) throw std::domain_error("smallest_root: need 1 <= t <= n");
  if (width_target <= 0) throw std::domain_error("smallest_root: width_target must be positive");
  long lo_int = -1;
  Int lo_val;
  for (long x = 0; x <= n; ++x) {
    Int v = eval(t, x, n);
    if (x == 0 && v <= 0) throw std::logic_error("smallest_root: K_t(0) not positive");
    if (v > 0) {
      lo_int = x;
      lo_val = v;
    } else {
      break;
    }
  }
  if (lo_int < 0 || lo_int == n) throw std::runtime_error("smallest_root: no real root in range");

  RootBracket b;
  b.t = t;
  b.n = n;
  b.lo = Rat(lo_int);
  b.hi = Rat(lo_int + 1);
  while (b.width() > width_target) {
    Rat mid = (b.lo + b.hi) / 2;
    Rat v = eval(t, mid, n);
    if (v > 0)
      b.lo = mid;
    else
      b.hi = mid;
  }
  return b;
}

Expansion expand(const std::vector<std::vector<Rat>>& samples) {
  if (samples.empty()) throw std::invalid_argument("expand: empty sample grid");
  long n = static_cast<long>(samples.size()) - 1;
  long c = static_cast<long>(samples[0].size()) - 1;
  for (const auto& row : samples)
    if (static_cast<long>(row.size()) != c + 1)
      throw std::invalid_argument("expand: ragged sample grid");

  Table tn = build_table(n);
  Table tc;
  if (c > 0) tc = build_table(c);

  Expansion e;
  e.n = n;
  e.c = c;
  e.coeffs.assign(n + 1, std::vector<Rat>(c + 1));
  Rat scale = Rat(1) / Rat(pow4(static_cast<unsigned long>(n + c)));
  const Int one(1);
  for (long i = 0; i <= n; ++i) {
    for (long j = 0; j <= c; ++j) {
      Rat acc(0);
      for (long u = 0; u <= n; ++u) {
        Rat inner(0);
        for (long v = 0; v <= c; ++v)
          inner += samples[u][v] * Rat(c > 0 ? tc.at(v, j) : one);
        acc += inner * Rat(tn.at(u, i));
      }
      e.coeffs[i][j] = acc * scale;
    }
  }
  return e;
}

Rat reconstruct(const Expansion& e, long x, long y) {
  auto kx = eval_all(e.n, x, e.n);
  std::vector<Int> ky;
  if (e.c > 0)
    ky = eval_all(e.c, y, e.c);
  else
    ky = {Int(1)};
  Rat acc(0);
  for (long i = 0; i <= e.n; ++i) {
    Rat inner(0);
    for (long j = 0; j <= e.c; ++j) inner += e.coeffs[i][j] * Rat(ky[j]);
    acc += inner * Rat(kx[i]);
  }
  return acc;
}

}  // namespace eaqec::kraw
