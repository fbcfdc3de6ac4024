#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eaqec/krawtchouk.hpp"
#include "eaqec/rational.hpp"

namespace eaqec::bounds {

struct BoundParams {
  long t = -1;
  std::optional<Rat> a;
  long l_argmax = -1;
  bool tie = false;
  std::string note;
};

// Certified upper bound on the code size M, or a structured reason why the
// method does not apply at these parameters.
struct BoundResult {
  bool applicable = true;
  std::string reason;
  Rat value;
  std::string method;
  BoundParams params;
};

// max_{0<=l<=d-1} f(l,0) / f_{l,0} / 2^(n+c) for a bivariate polynomial
// given by its integer-grid samples and Krawtchouk coefficients.  Hypotheses
// (coefficients >= 0, samples <= 0 for x >= d or y >= 1) are verified on the
// grid; f_{l,0} = 0 below d yields a not-applicable result.
BoundResult generic_bound(const std::vector<std::vector<Rat>>& samples,
                          const std::vector<std::vector<Rat>>& coeffs,
                          long n, long d, long c, bool nondegenerate,
                          const std::string& method = "generic");

BoundResult singleton_bound(long n, long d, long c);

// min over the plain Singleton polynomial and an auxiliary-polynomial family
// indexed by a grid of exponents a.
BoundResult refined_singleton(long n, long d, long c, const Rat& a_min,
                              const Rat& a_max, const Rat& a_step);

BoundResult hamming_bound(long n, long d, long c, bool degenerate);

// Smallest N such that the degenerate Hamming maximum sits at l = 0 for all
// scanned n >= N with d = 2t+1 (scan horizon: N + scan_margin).  The value
// does not depend on c.
long hamming_threshold(long t, long scan_margin = 40);

struct LP1Polynomial {
  long n = 0, d = 0, t = 0;
  Rat a;
  bool applicable = true;
  std::string reason;
  std::vector<Rat> coeff;  // F_j for j = 0..n, exact
  // data for evaluating F at integer points
  Rat kta, kt1a;            // K_t(a), K_{t+1}(a)
  std::vector<Rat> weight;  // K_i(a) / (3^i C(n,i)), i = 0..t
  Rat value_at(long j) const;
};

struct LP1Setup {
  long t = 0;
  kraw::RootBracket rt, rt1;  // smallest roots of K_t, K_{t+1}
  Rat default_a;              // midpoint of (rt1.hi, rt.lo), kept non-integer
};

// t = smallest degree with K_t(d;n) < 0, plus certified root brackets.
LP1Setup lp1_setup(long n, long d, const Rat& bracket_width = Rat(1, 1000));

LP1Polynomial lp1_build(long n, long d, const Rat& a);

// Grid minimization of max_j F(j)/F_j over a in (r_{t+1}, r_t); the value
// returned is the certified bound at the best sampled a.
BoundResult lp1_bound(long n, long d, long c, long coarse_points = 63,
                      long refine_rounds = 2);

// Cheap certified variant keeping only the i = t terms of the coefficient
// sums; always >= lp1_bound at the shared default point.
BoundResult lp1_integer_bound(long n, long d, long c);

// Exact comparison of the integer LP-1 bound against the nondegenerate
// Hamming bound; nullopt when LP-1 is not applicable.
std::optional<bool> lp1_integer_beats_hamming(long n, long d, long c);

bool gv_exists(long n, long k, long d, long c);

struct AsymptoticRow {
  double delta = 0, rho = 0;
  double gv = 0, singleton = 0, hamming = 0, lp1 = 0;
  double plotkin = 0.75;
  bool hamming_valid = true;       // delta < 1/3
  bool lp1_valid = true;           // delta <= 0.3152
  bool max_entanglement = false;
};

// Closed-form asymptotic rate curves; rho = nullopt selects the
// maximal-entanglement forms.  Doubles: the one non-certified surface.
std::vector<AsymptoticRow> asymptotic_rates(const std::vector<double>& delta_grid,
                                            std::optional<double> rho);

// header: delta,rho,gv,singleton,hamming,lp1,plotkin (12 significant digits)
void write_rate_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows);

}  // namespace eaqec::bounds
