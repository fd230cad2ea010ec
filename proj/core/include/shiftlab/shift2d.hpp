#pragma once

#include <functional>
#include <optional>

#include "shiftlab/measure2d.hpp"
#include "shiftlab/verdict.hpp"

namespace shiftlab {

// Commuting pair of weighted shifts on l^2(Z_+^2): T1 e_k = alpha_k e_{k+(1,0)},
// T2 e_k = beta_k e_{k+(0,1)}. Weights come from generators; the window is the
// range of indices the generators promise to evaluate.
class ShiftGrid {
 public:
  using Generator = std::function<double(Index2)>;

  ShiftGrid(Generator alpha, Generator beta, Index2 window);

  double alpha(Index2 k) const;
  double beta(Index2 k) const;
  Index2 window() const { return window_; }

  // Coordinates exchanged: alpha' (k1,k2) = beta(k2,k1).
  ShiftGrid transposed() const;

  // The pair (T1^m, T2^n) restricted to span{e_(m l + p, n k + q)}.
  ShiftGrid restricted(int m, int n, Index2 offset) const;

 private:
  Generator alpha_;
  Generator beta_;
  Index2 window_;
};

Verdict commutes(const ShiftGrid& g, Index2 K);

// Product of squared weights along a monotone path from (0,0) to k.
double gamma2d(const ShiftGrid& g, Index2 k);

// Joint hyponormality at each lattice point k <= K (2x2 test).
Verdict six_point_test(const ShiftGrid& g, Index2 K, double tol = kDefaultTol);

// Self-commutator positivity of the degree-k monomial tuple, compressed to each
// e_u with u <= K. Necessary condition only.
Verdict k_hyponormal_window(const ShiftGrid& g, int k, Index2 K, double tol = kDefaultTol);

struct BackwardExtension2D {
  Verdict verdict;
  std::optional<Measure2D> measure;
  double norm_inv_t = 0.0;
};

// Subnormal backward extension of a 2-variable shift: mu_M is the Berger measure
// of the part above row 0, sigma the Berger measure of row 0, beta00 the weight
// joining e_(0,0) to e_(0,1).
BackwardExtension2D backward_ext_2var(const Measure2D& muM, const Measure1D& sigma, double beta00,
                                      double tol = kDefaultTol);

}  // namespace shiftlab
