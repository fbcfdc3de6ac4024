#include "eaqec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace eaqec::bounds {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

// sum over s of alpha(j, p, i, s; n) with support-exact limits; equal to the
// full-range [0, n-j] sum because every skipped term has a vanishing
// binomial.
Int alpha_sum(long j, long p, long i, long n) {
  long lo = std::max({0L, p - j, i - j, (p + i - 2 * j + 1) / 2});
  long hi = std::min(n - j, (p + i - j) / 2);
  Int acc(0);
  for (long s = lo; s <= hi; ++s) acc += kraw::alpha(j, p, i, s, n);
  return acc;
}

// Coefficients s_l of (sum_{i<=t} K_i(x))^2 in the Krawtchouk basis.
std::vector<Int> hamming_alpha_sums(long n, long t) {
  std::vector<Int> s(n + 1, Int(0));
  for (long l = 0; l <= n; ++l)
    for (long i = 0; i <= t; ++i)
      for (long j = 0; j <= t; ++j) s[l] += alpha_sum(l, i, j, n);
  return s;
}

// F_l = (sum_{i<=t} K_i(l))^2 for l = 0..lmax.
std::vector<Int> hamming_square_values(long n, long t, long lmax) {
  std::vector<Int> f(lmax + 1);
  for (long l = 0; l <= lmax; ++l) {
    auto k = kraw::eval_all(t, l, n);
    Int sum(0);
    for (long i = 0; i <= t; ++i) sum += k[i];
    f[l] = sum * sum;
  }
  return f;
}

long select_t(long n, long d) {
  require(n >= 1 && d >= 1 && d <= n, "lp1: need 1 <= d <= n");
  double t0 = 0.75 * n - 0.5 * d - 0.5 * std::sqrt(3.0 * d * (n - d));
  long t = std::clamp(static_cast<long>(std::lround(t0)) - 2, 1L, n - 1);
  auto neg = [&](long tt) { return kraw::eval(tt, d, n) < 0; };
  if (neg(t)) {
    while (t > 1 && neg(t - 1)) --t;
  } else {
    while (t < n - 1 && !neg(t)) ++t;
    if (!neg(t)) throw std::runtime_error("lp1: no admissible degree t below n");
  }
  return t;
}

struct LP1Data {
  long n = 0, d = 0, t = 0;
  // S1[j][i] = sum_s alpha(j, t+1, i, s), S2[j][i] = sum_s alpha(j, t, i, s)
  std::vector<std::vector<Int>> S1, S2;
  std::vector<long> zero_coeff;  // j < d with F_j identically zero
};

LP1Data lp1_data(long n, long d, long t, long jmax) {
  LP1Data data;
  data.n = n;
  data.d = d;
  data.t = t;
  data.S1.assign(jmax + 1, std::vector<Int>(t + 1));
  data.S2.assign(jmax + 1, std::vector<Int>(t + 1));
  for (long j = 0; j <= jmax; ++j) {
    bool all_zero = true;
    for (long i = 0; i <= t; ++i) {
      data.S1[j][i] = alpha_sum(j, t + 1, i, n);
      data.S2[j][i] = alpha_sum(j, t, i, n);
      if (data.S1[j][i] != 0 || data.S2[j][i] != 0) all_zero = false;
    }
    if (all_zero && j < d) data.zero_coeff.push_back(j);
  }
  return data;
}

// K_0(a)..K_{t+1}(a) with the sign pattern certifying a in (r_{t+1}, r_t):
// K_i(a) > 0 for i <= t and K_{t+1}(a) < 0.  Together with alpha >= 0 this
// makes every coefficient F_j nonnegative.
std::vector<Rat> checked_kraw_at(long n, long t, const Rat& a) {
  auto k = kraw::eval_all(t + 1, a, n);
  for (long i = 0; i <= t; ++i)
    if (k[i] <= 0) throw std::domain_error("lp1: a outside the root interval");
  if (k[t + 1] >= 0) throw std::domain_error("lp1: a outside the root interval");
  return k;
}

struct LP1Eval {
  Rat kta, kt1a;
  std::vector<Rat> weight;  // K_i(a) / (3^i C(n,i))
  Rat constant;             // 4 * 3^t * C(n,t) / (t+1)
};

LP1Eval lp1_eval_data(long n, long t, const std::vector<Rat>& k) {
  LP1Eval ev;
  ev.kta = k[t];
  ev.kt1a = k[t + 1];
  ev.weight.resize(t + 1);
  for (long i = 0; i <= t; ++i) ev.weight[i] = k[i] / Rat(pow3(i) * binomial(n, i));
  ev.constant = frac(Int(4) * pow3(t) * binomial(n, t), Int(t + 1));
  return ev;
}

Rat lp1_coeff(const LP1Data& data, const LP1Eval& ev, long j) {
  Rat s1(0), s2(0);
  for (long i = 0; i <= data.t; ++i) {
    if (data.S1[j][i] != 0) s1 += ev.weight[i] * Rat(data.S1[j][i]);
    if (data.S2[j][i] != 0) s2 += ev.weight[i] * Rat(data.S2[j][i]);
  }
  return ev.constant * (ev.kta * s1 - ev.kt1a * s2);
}

// F at integer x through the Christoffel-Darboux product form (no division
// by a - x needed).
Rat lp1_value(long n, long t, const LP1Eval& ev, long x) {
  auto kx = kraw::eval_all(t + 1, x, n);
  Rat inner(0);
  for (long i = 0; i <= t; ++i) inner += ev.weight[i] * Rat(kx[i]);
  Rat bracket = Rat(kx[t + 1]) * ev.kta - Rat(kx[t]) * ev.kt1a;
  return ev.constant * bracket * inner;
}

double entropy2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace

BoundResult generic_bound(const std::vector<std::vector<Rat>>& samples,
                          const std::vector<std::vector<Rat>>& coeffs,
                          long n, long d, long c, bool nondegenerate,
                          const std::string& method) {
  require(n >= 1 && d >= 1 && c >= 0, "generic_bound: bad parameters");
  if (static_cast<long>(samples.size()) != n + 1 ||
      static_cast<long>(coeffs.size()) != n + 1)
    throw std::invalid_argument("generic_bound: sample/coefficient grid must be (n+1)x(c+1)");
  for (long i = 0; i <= n; ++i)
    if (static_cast<long>(samples[i].size()) != c + 1 ||
        static_cast<long>(coeffs[i].size()) != c + 1)
      throw std::invalid_argument("generic_bound: sample/coefficient grid must be (n+1)x(c+1)");

  BoundResult res;
  res.method = method;

  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j)
      if (coeffs[i][j] < 0)
        throw std::invalid_argument("polynomial inadmissible: negative coefficient at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
  for (long x = 0; x <= n; ++x)
    for (long y = 0; y <= c; ++y)
      if ((x >= d || y >= 1) && samples[x][y] > 0)
        throw std::invalid_argument("polynomial inadmissible: positive sample at (" +
                                    std::to_string(x) + "," + std::to_string(y) + ")");

  long lmax = std::min(d - 1, n);
  for (long l = 0; l <= lmax; ++l) {
    if (coeffs[l][0] == 0) {
      res.applicable = false;
      res.reason = "f_{l,0} vanishes at l=" + std::to_string(l);
      return res;
    }
  }

  Rat best;
  long argmax = -1;
  bool tie = false;
  long last = nondegenerate ? 0 : lmax;
  for (long l = 0; l <= last; ++l) {
    Rat ratio = samples[l][0] / coeffs[l][0];
    if (argmax < 0 || ratio > best) {
      best = ratio;
      argmax = l;
      tie = false;
    } else if (ratio == best) {
      tie = true;
    }
  }
  res.value = best / Rat(pow2(n + c));
  res.params.l_argmax = argmax;
  res.params.tie = tie;
  return res;
}

namespace {

// Samples and coefficients of the Singleton polynomial: the x part takes
// value 4^(n-d+1) C(n-x, n-d+1)/C(n, d-1) on the grid, the y part is the
// polynomial with unit Krawtchouk coefficients (4^c at y = 0, zero at
// y = 1..c).
void singleton_grids(long n, long d, long c,
                     std::vector<std::vector<Rat>>& samples,
                     std::vector<std::vector<Rat>>& coeffs) {
  Int denom = binomial(n, d - 1);
  require(denom > 0, "singleton: need d <= n+1");
  samples.assign(n + 1, std::vector<Rat>(c + 1, Rat(0)));
  coeffs.assign(n + 1, std::vector<Rat>(c + 1, Rat(0)));
  for (long x = 0; x <= n; ++x)
    samples[x][0] = frac(pow4(n + c - d + 1) * binomial(n - x, n - d + 1), denom);
  for (long i = 0; i <= n; ++i)
    for (long j = 0; j <= c; ++j) coeffs[i][j] = frac(binomial(n - i, d - 1), denom);
}

}  // namespace

BoundResult singleton_bound(long n, long d, long c) {
  std::vector<std::vector<Rat>> samples, coeffs;
  singleton_grids(n, d, c, samples, coeffs);
  BoundResult res = generic_bound(samples, coeffs, n, d, c, false, "singleton");
  if (res.applicable && 2 * d <= n + 2 && res.value != Rat(pow2(n + c - 2 * (d - 1))))
    throw std::logic_error("singleton: closed form mismatch");
  return res;
}

BoundResult refined_singleton(long n, long d, long c, const Rat& a_min,
                              const Rat& a_max, const Rat& a_step) {
  require(a_step > 0 && a_min <= a_max, "refined_singleton: bad grid");
  std::vector<std::vector<Rat>> samples, coeffs;
  singleton_grids(n, d, c, samples, coeffs);

  BoundResult res;
  res.method = "refined_singleton";
  long lmax = std::min(d - 1, n);

  BoundResult plain = singleton_bound(n, d, c);
  std::optional<Rat> best;
  std::optional<Rat> best_a;
  long best_arg = -1;
  if (plain.applicable) {
    best = plain.value;
    best_arg = plain.params.l_argmax;
  }

  Rat scale = frac(Int(1), pow2(n + c));
  Rat coeff_scale = frac(Int(1), pow4(n + c));
  Rat span = (a_max - a_min) / a_step;
  long steps = static_cast<long>(mpz_class(span.get_num() / span.get_den()).get_si());
  for (long step = 0; step <= steps; ++step) {
    Rat a = a_min + step * a_step;
    Rat s = pow4_lower(a);
    Rat add = s * coeff_scale;  // added Krawtchouk coefficient, positive
    Rat vmax;
    long arg = -1;
    for (long l = 0; l <= lmax; ++l) {
      Rat num = samples[l][0];
      if (l == 0) num += s;
      Rat ratio = num / (coeffs[l][0] + add);
      if (arg < 0 || ratio > vmax) {
        vmax = ratio;
        arg = l;
      }
    }
    Rat val = vmax * scale;
    if (!best || val < *best) {
      best = val;
      best_a = a;
      best_arg = arg;
    }
  }

  res.value = *best;
  res.params.a = best_a;
  res.params.l_argmax = best_arg;
  if (!best_a) res.params.note = "plain polynomial optimal";
  return res;
}

BoundResult hamming_bound(long n, long d, long c, bool degenerate) {
  require(n >= 1 && d >= 1 && c >= 0, "hamming: bad parameters");
  long t = (d - 1) / 2;
  require(t <= n, "hamming: error radius above n");

  BoundResult res;
  res.method = degenerate ? "hamming_deg" : "hamming_nondeg";
  res.params.t = t;

  if (!degenerate) {
    Int sum(0);
    for (long j = 0; j <= t; ++j) sum += pow3(j) * binomial(n, j);
    res.value = frac(pow2(n + c), sum);
    res.params.l_argmax = 0;
    return res;
  }

  long lmax = std::min(d - 1, n);
  auto s = hamming_alpha_sums(n, t);
  auto f = hamming_square_values(n, t, lmax);
  for (long x = d; x <= n; ++x)
    if (s[x] != 0) throw std::logic_error("hamming: coefficient support extends past d");
  for (long l = 0; l <= lmax; ++l) {
    if (f[l] == 0) {
      res.applicable = false;
      res.reason = "F_l vanishes at l=" + std::to_string(l);
      return res;
    }
  }
  Rat best;
  long argmax = -1;
  bool tie = false;
  for (long l = 0; l <= lmax; ++l) {
    Rat ratio = frac(s[l], f[l]);
    if (argmax < 0 || ratio > best) {
      best = ratio;
      argmax = l;
      tie = false;
    } else if (ratio == best) {
      tie = true;
    }
  }
  res.value = best * Rat(pow2(n + c));
  res.params.l_argmax = argmax;
  res.params.tie = tie;
  return res;
}

long hamming_threshold(long t, long scan_margin) {
  require(t >= 2, "hamming_threshold: need t >= 2");
  long d = 2 * t + 1;
  long last_bad = d - 1;
  for (long n = d; n <= 4000; ++n) {
    auto s = hamming_alpha_sums(n, t);
    long lmax = std::min(d - 1, n);
    auto f = hamming_square_values(n, t, lmax);
    bool bad = false;
    if (f[0] == 0) {
      bad = true;
    } else {
      Rat r0 = frac(s[0], f[0]);
      for (long l = 1; l <= lmax && !bad; ++l) {
        if (f[l] == 0) {
          bad = s[l] != 0;  // undefined ratio: inadmissible unless the term vanishes
          continue;
        }
        if (frac(s[l], f[l]) > r0) bad = true;
      }
    }
    if (bad) last_bad = n;
    if (n - last_bad >= scan_margin) return last_bad + 1;
  }
  throw std::runtime_error("hamming_threshold: scan horizon exceeded");
}

LP1Setup lp1_setup(long n, long d, const Rat& bracket_width) {
  LP1Setup st;
  st.t = select_t(n, d);
  Rat w = bracket_width;
  for (int attempt = 0; attempt < 6; ++attempt) {
    st.rt = kraw::smallest_root(st.t, n, w);
    st.rt1 = kraw::smallest_root(st.t + 1, n, w);
    if (st.rt1.hi < st.rt.lo) break;
    w /= 16;
  }
  if (!(st.rt1.hi < st.rt.lo))
    throw std::runtime_error("lp1: root brackets failed to separate");
  st.default_a = (st.rt1.hi + st.rt.lo) / 2;
  return st;
}

Rat LP1Polynomial::value_at(long j) const {
  auto kx = kraw::eval_all(t + 1, j, n);
  Rat inner(0);
  for (long i = 0; i <= t; ++i)
    inner += weight[i] * Rat(kx[i]);
  Rat bracket = Rat(kx[t + 1]) * kta - Rat(kx[t]) * kt1a;
  Rat constant = frac(Int(4) * pow3(t) * binomial(n, t), Int(t + 1));
  return constant * bracket * inner;
}

LP1Polynomial lp1_build(long n, long d, const Rat& a) {
  long t = select_t(n, d);
  auto k = checked_kraw_at(n, t, a);
  auto ev = lp1_eval_data(n, t, k);
  auto data = lp1_data(n, d, t, n);

  LP1Polynomial poly;
  poly.n = n;
  poly.d = d;
  poly.t = t;
  poly.a = a;
  poly.kta = ev.kta;
  poly.kt1a = ev.kt1a;
  poly.weight = ev.weight;
  poly.coeff.resize(n + 1);
  for (long j = 0; j <= n; ++j) {
    poly.coeff[j] = lp1_coeff(data, ev, j);
    if (poly.coeff[j] < 0) throw std::logic_error("lp1: negative coefficient");
  }
  if (!data.zero_coeff.empty()) {
    poly.applicable = false;
    poly.reason = "F_j vanishes at j=" + std::to_string(data.zero_coeff.front());
  }
  return poly;
}

BoundResult lp1_bound(long n, long d, long c, long coarse_points, long refine_rounds) {
  require(c >= 0 && c <= n, "lp1_bound: bad c");
  auto st = lp1_setup(n, d);
  auto data = lp1_data(n, d, st.t, n);

  BoundResult res;
  res.method = "lp1";
  res.params.t = st.t;
  if (!data.zero_coeff.empty()) {
    res.applicable = false;
    res.reason = "F_j vanishes at j=" + std::to_string(data.zero_coeff.front());
    return res;
  }

  long lmax = std::min(d - 1, n);
  auto objective = [&](const Rat& a) {
    auto k = checked_kraw_at(n, st.t, a);
    auto ev = lp1_eval_data(n, st.t, k);
    Rat vmax;
    bool first = true;
    for (long j = 0; j <= lmax; ++j) {
      Rat ratio = lp1_value(n, st.t, ev, j) / lp1_coeff(data, ev, j);
      if (first || ratio > vmax) {
        vmax = ratio;
        first = false;
      }
    }
    return vmax;
  };

  Rat lo = st.rt1.hi, hi = st.rt.lo;
  std::vector<Rat> points;
  for (long k = 1; k <= coarse_points; ++k)
    points.push_back(lo + frac(k, coarse_points + 1) * (hi - lo));
  points.push_back(st.default_a);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::optional<Rat> best;
  Rat best_a;
  for (int round = 0;; ++round) {
    long best_idx = -1;
    for (long i = 0; i < static_cast<long>(points.size()); ++i) {
      Rat v = objective(points[i]);
      if (!best || v < *best || (v == *best && points[i] < best_a)) {
        best = v;
        best_a = points[i];
        best_idx = i;
      }
    }
    if (round >= refine_rounds) break;
    // refine between the neighbors of the best point seen this round;
    // convexity only guides where to look, never what is returned
    Rat rlo = lo, rhi = hi;
    if (best_idx > 0) rlo = points[best_idx - 1];
    if (best_idx >= 0 && best_idx + 1 < static_cast<long>(points.size()))
      rhi = points[best_idx + 1];
    if (best_idx < 0) break;  // best carried over from a previous round
    std::vector<Rat> next;
    for (long k = 1; k <= 16; ++k) next.push_back(rlo + frac(k, 17) * (rhi - rlo));
    points = std::move(next);
  }

  // final audit at the winning point: full coefficient vector nonnegative
  {
    auto k = checked_kraw_at(n, st.t, best_a);
    auto ev = lp1_eval_data(n, st.t, k);
    for (long j = 0; j <= n; ++j)
      if (lp1_coeff(data, ev, j) < 0) throw std::logic_error("lp1: negative coefficient");
  }

  res.value = *best / Rat(pow2(n - c));
  res.params.a = best_a;
  res.params.note = "a in (" + decimal_string(Rat(st.rt1.lo), 8) + ", " +
                    decimal_string(Rat(st.rt.hi), 8) + ")";
  return res;
}

BoundResult lp1_integer_bound(long n, long d, long c) {
  require(c >= 0 && c <= n, "lp1_integer_bound: bad c");
  auto st = lp1_setup(n, d);
  long t = st.t;

  BoundResult res;
  res.method = "lp1_integer";
  res.params.t = t;

  long lmax = std::min(d - 1, n);
  // only the i = t inner sums are kept: a certified lower bound on each F_j
  std::vector<Int> s1(lmax + 1), s2(lmax + 1);
  for (long j = 0; j <= lmax; ++j) {
    s1[j] = alpha_sum(j, t + 1, t, n);
    s2[j] = alpha_sum(j, t, t, n);
    if (s1[j] == 0 && s2[j] == 0) {
      res.applicable = false;
      res.reason = "c_j vanishes at j=" + std::to_string(j);
      return res;
    }
  }

  Rat a = st.default_a;
  auto k = checked_kraw_at(n, t, a);
  auto ev = lp1_eval_data(n, t, k);

  Rat vmax;
  long argmax = -1;
  for (long j = 0; j <= lmax; ++j) {
    Rat lower = frac(4, t + 1) * (ev.kta * ev.kta * Rat(s1[j]) -
                                  ev.kta * ev.kt1a * Rat(s2[j]));
    Rat ratio = lp1_value(n, t, ev, j) / lower;
    if (argmax < 0 || ratio > vmax) {
      vmax = ratio;
      argmax = j;
    }
  }
  res.value = vmax / Rat(pow2(n - c));
  res.params.a = a;
  res.params.l_argmax = argmax;
  res.params.note =
      "rate " + std::to_string(log2_approx(vmax) / n - 1.0 + double(c) / n);
  return res;
}

std::optional<bool> lp1_integer_beats_hamming(long n, long d, long c) {
  BoundResult lp1 = lp1_integer_bound(n, d, c);
  if (!lp1.applicable) return std::nullopt;
  BoundResult ham = hamming_bound(n, d, c, false);
  return lp1.value < ham.value;
}

bool gv_exists(long n, long k, long d, long c) {
  require(n >= 1 && k >= 0 && d >= 1, "gv: bad parameters");
  require(c >= 0 && c <= n - k, "gv: need 0 <= c <= n-k");
  require(d <= n + 1, "gv: need d <= n+1");
  Int ball(0);
  for (long j = 0; j <= d - 1 && j <= n; ++j) ball += binomial(n, j) * pow3(j);
  Int lhs = (pow2(n + k - c) - pow2(n - k - c)) * ball;
  return lhs <= pow4(n) - 1;
}

std::vector<AsymptoticRow> asymptotic_rates(const std::vector<double>& delta_grid,
                                            std::optional<double> rho) {
  const double log2_3 = std::log2(3.0);
  std::vector<AsymptoticRow> rows;
  for (double delta : delta_grid) {
    if (delta < 0.0 || delta > 1.0)
      throw std::domain_error("asymptotic_rates: delta outside [0,1]");
    AsymptoticRow row;
    row.delta = delta;
    double x = 0.75 - 0.5 * delta - 0.5 * std::sqrt(3.0 * delta * (1.0 - delta));
    row.hamming_valid = delta < 1.0 / 3.0;
    row.lp1_valid = delta <= 0.3152;
    if (!rho) {
      row.max_entanglement = true;
      row.gv = 1.0 - 0.5 * delta * log2_3 - 0.5 * entropy2(delta);
      row.singleton = 1.0 - delta;
      row.hamming = 1.0 - 0.25 * delta * log2_3 - 0.5 * entropy2(0.5 * delta);
      row.lp1 = 0.5 * (entropy2(x) + x * log2_3);
    } else {
      row.rho = *rho;
      row.gv = 1.0 + *rho - delta * log2_3 - entropy2(delta);
      row.singleton = 1.0 + *rho - 2.0 * delta;
      row.hamming = 1.0 + *rho - 0.5 * delta * log2_3 - entropy2(0.5 * delta);
      row.lp1 = *rho - 1.0 + entropy2(x) + x * log2_3;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_rate_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows) {
  out << "delta,rho,gv,singleton,hamming,lp1,plotkin\n";
  char buf[512];
  for (const auto& r : rows) {
    if (r.max_entanglement)
      std::snprintf(buf, sizeof(buf), "%.12g,max,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                    r.delta, r.gv, r.singleton, r.hamming, r.lp1, r.plotkin);
    else
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                    r.delta, r.rho, r.gv, r.singleton, r.hamming, r.lp1, r.plotkin);
    out << buf;
  }
}

}  // namespace eaqec::bounds
