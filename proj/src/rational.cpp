#include "eaqec/rational.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace eaqec {

namespace {
std::mutex g_binom_mutex;
std::deque<std::vector<Int>> g_binom_rows;  // row n = { C(n,0), ..., C(n,n) }
}  // namespace

Int binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::lock_guard<std::mutex> lock(g_binom_mutex);
  while (static_cast<long>(g_binom_rows.size()) <= n) {
    long m = static_cast<long>(g_binom_rows.size());
    std::vector<Int> row(m + 1);
    row[0] = 1;
    for (long j = 1; j <= m; ++j) {
      // C(m, j) = C(m, j-1) * (m - j + 1) / j, division exact
      Int t = row[j - 1] * (m - j + 1);
      mpz_divexact_ui(row[j].get_mpz_t(), t.get_mpz_t(), j);
    }
    g_binom_rows.push_back(std::move(row));
  }
  return g_binom_rows[n][k];
}

Int pow_int(unsigned long base, unsigned long exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

Rat binomial_rat(const Rat& x, long k) {
  if (k < 0) return Rat(0);
  Rat num(1);
  for (long j = 0; j < k; ++j) num *= x - j;
  Rat den(1);
  for (long j = 2; j <= k; ++j) den *= j;
  return num / den;
}

Rat pow4_lower(const Rat& a, unsigned bits) {
  // 4^a = 2^(2a).  Write 2a = w + p/q with 0 <= p < q, then
  // 2^(p/q) ~= root(2^(p + q*bits), q) / 2^bits, rounded down.
  Rat e = 2 * a;
  e.canonicalize();
  Int p = e.get_num(), q = e.get_den();
  Int w, rem;
  mpz_fdiv_qr(w.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (!w.fits_slong_p()) throw std::overflow_error("pow4_lower: exponent too large");
  long wl = w.get_si();
  Rat base;
  if (rem == 0) {
    base = 1;
  } else {
    unsigned long ql = q.get_ui();
    Int arg = pow2(rem.get_ui() + ql * bits);
    Int root;
    mpz_root(root.get_mpz_t(), arg.get_mpz_t(), ql);
    base = Rat(root) / Rat(pow2(bits));
  }
  if (wl >= 0) return base * Rat(pow2(static_cast<unsigned long>(wl)));
  return base / Rat(pow2(static_cast<unsigned long>(-wl)));
}

double to_double(const Rat& v) { return v.get_d(); }

std::string decimal_string(const Rat& v, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  if (v == 0) return "0";
  Rat av = abs(v);
  // Find exponent e with 10^e <= av < 10^(e+1).
  long e = 0;
  Rat t = av;
  while (t >= 10) { t /= 10; ++e; }
  while (t < 1) { t *= 10; --e; }
  // digits = round(av * 10^(sig-1-e))
  long shift = significant_digits - 1 - e;
  Rat scaled = av;
  if (shift >= 0)
    scaled *= Rat(pow_int(10, static_cast<unsigned long>(shift)));
  else
    scaled /= Rat(pow_int(10, static_cast<unsigned long>(-shift)));
  Int digits = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string ds = digits.get_str();
  if (static_cast<int>(ds.size()) > significant_digits) {
    // rounding bumped 999.. to 1000..: drop the extra trailing zero
    ds.pop_back();
    ++e;
  }
  std::string out;
  if (sgn(v) < 0) out += "-";
  if (e >= 0 && e < significant_digits) {
    out += ds.substr(0, e + 1);
    std::string frac = ds.substr(e + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  } else if (e < 0 && e > -5) {
    out += "0.";
    out += std::string(-e - 1, '0');
    std::string frac = ds;
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    out += frac;
  } else {
    out += ds.substr(0, 1);
    std::string frac = ds.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e);
  }
  return out;
}

double log2_approx(const Rat& v) {
  if (sgn(v) <= 0) throw std::domain_error("log2_approx: nonpositive argument");
  signed long ne = 0, de = 0;
  double nd = mpz_get_d_2exp(&ne, v.get_num().get_mpz_t());
  double dd = mpz_get_d_2exp(&de, v.get_den().get_mpz_t());
  return (std::log2(nd) + ne) - (std::log2(dd) + de);
}

}  // namespace eaqec
