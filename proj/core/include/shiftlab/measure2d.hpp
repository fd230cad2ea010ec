#pragma once

#include <vector>

#include "shiftlab/measure.hpp"

namespace shiftlab {

struct ProductTerm {
  double weight = 1.0;
  Measure1D s;
  Measure1D t;
};

// Finite sum of weighted product measures s (x) t on [0,M1] x [0,M2].
class Measure2D {
 public:
  Measure2D() = default;
  explicit Measure2D(std::vector<ProductTerm> terms);

  static Measure2D product(const Measure1D& s, const Measure1D& t, double weight = 1.0);

  const std::vector<ProductTerm>& terms() const { return terms_; }
  bool is_positive() const;

  Measure2D& operator+=(const Measure2D& other);

 private:
  std::vector<ProductTerm> terms_;
};

Measure2D operator+(Measure2D mu, const Measure2D& nu);
Measure2D operator*(double c, Measure2D mu);

double moment2d(const Measure2D& mu, int k1, int k2);

Measure1D marginal_X(const Measure2D& mu);
Measure1D marginal_Y(const Measure2D& mu);

// Exchange the two coordinates.
Measure2D swapped(const Measure2D& mu);

// Integral of 1/t over the whole measure; +infinity when the t-factors charge {0}.
double norm_inv_t(const Measure2D& mu);

struct Extremal {
  Measure2D measure;
  double norm_inv_t = 0.0;
};

// Drops the t = 0 slice, divides by t and renormalizes to a probability measure.
Extremal extremal(const Measure2D& mu);

}  // namespace shiftlab
