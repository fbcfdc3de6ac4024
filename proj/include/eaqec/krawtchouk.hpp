#pragma once

#include <vector>

#include "eaqec/rational.hpp"

namespace eaqec::kraw {

// Quaternary Krawtchouk polynomial K_i(x;n) at an integer point, computed by
// the three-term recurrence.  Requires 0 <= i <= n.
Int eval(long i, long x, long n);
Rat eval(long i, const Rat& x, long n);

// K_0(x), ..., K_imax(x) in one recurrence sweep.
std::vector<Int> eval_all(long imax, long x, long n);
std::vector<Rat> eval_all(long imax, const Rat& x, long n);

struct Table {
  long n = 0;
  // values[i][j] = K_i(j;n), 0 <= i,j <= n
  std::vector<std::vector<Int>> values;
  const Int& at(long i, long j) const { return values[i][j]; }
};

Table build_table(long n);

// Linearization coefficient of Eq-products: K_i(x)K_j(x) = sum_l K_l(x) *
// sum_r alpha(l,i,j,r).  Vanishing binomials make the value 0; never throws
// for nonnegative arguments.
Int alpha(long l, long i, long j, long r, long n);

struct RootBracket {
  long t = 0;
  long n = 0;
  Rat lo, hi;  // K_t(lo) > 0 >= K_t(hi), lo < r_t <= hi
  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

// Bracket of the smallest root r_t of K_t(x;n), width <= width_target.
// Unit-step scan from 0 (discrete orthogonality separates consecutive roots
// by at least one integer node, so the first integer sign change brackets
// the smallest root), then rational bisection.
RootBracket smallest_root(long t, long n, const Rat& width_target);

struct Expansion {
  long n = 0, c = 0;
  // coeffs[i][j] = f_{i,j} in f(x,y) = sum f_{i,j} K_i(x;n) K_j(y;c)
  std::vector<std::vector<Rat>> coeffs;
};

// Krawtchouk expansion from exact samples on the full integer grid
// [0,n] x [0,c].  samples[x][y] = f(x,y).
Expansion expand(const std::vector<std::vector<Rat>>& samples);

// Evaluate an expansion back at an integer grid point.
Rat reconstruct(const Expansion& e, long x, long y);

}  // namespace eaqec::kraw
