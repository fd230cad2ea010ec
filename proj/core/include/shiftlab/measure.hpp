#pragma once

#include <span>
#include <vector>

#include "shiftlab/verdict.hpp"

namespace shiftlab {

inline constexpr double kAtomMergeTol = 1e-10;

// c * t^p
struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

// Density sum_j c_j t^{p_j} on [lo, hi].
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<PowerTerm> terms;

  double density(double t) const;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

// Finite measure on [0, M]: atoms plus power-law density pieces. Values are
// immutable once built; every operation below returns a new measure.
class Measure1D {
 public:
  enum class Sign { positive, signed_ };

  Measure1D() = default;

  // Canonicalizes (sorts, merges atoms closer than kAtomMergeTol, folds equal
  // exponents, drops zero terms). A positive request is validated and throws
  // std::invalid_argument when a mass or density is negative.
  Measure1D(std::vector<Atom> atoms, std::vector<DensityPiece> pieces, Sign sign = Sign::signed_);

  static Measure1D dirac(double location, double mass = 1.0);
  static Measure1D uniform(double lo, double hi, double density = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  bool is_positive() const { return sign_ == Sign::positive; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }

  double mass_at(double location) const;
  double total_mass() const;
  double support_max() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  Sign sign_ = Sign::positive;
};

double moment(const Measure1D& mu, int k);

// Integral of t^r. Returns +infinity for positive divergence (atom at 0 with
// r < 0, or a density too singular at 0); throws NonIntegrable when the
// divergent part is negative.
double integrate_power(const Measure1D& mu, double r);

// Image measure under t -> t^m.
Measure1D pushforward_power(const Measure1D& mu, int m);

// t^n dmu without normalization.
Measure1D multiply_by_power(const Measure1D& mu, int n);

// (t^n / gamma_n) dmu; gamma_n is checked against moment(mu, n).
Measure1D tilt(const Measure1D& mu, int n, double gamma_n, double tol = kDefaultTol);

// (1/t) dmu. Throws NonIntegrable when that is not a finite measure.
Measure1D divide_by_t(const Measure1D& mu);

Measure1D without_atom_at_zero(const Measure1D& mu);

Measure1D linear_combine(std::span<const double> coeffs, std::span<const Measure1D> measures);

Measure1D operator*(double c, const Measure1D& mu);
Measure1D operator+(const Measure1D& mu, const Measure1D& nu);
Measure1D operator-(const Measure1D& mu, const Measure1D& nu);

// Margin is the smallest atom mass or sampled density value; on failure the
// witness is the location where it occurs.
Verdict is_nonnegative(const Measure1D& mu, double tol = kDefaultTol);

// mu <= nu set-wise.
Verdict measure_leq(const Measure1D& mu, const Measure1D& nu, double tol = kDefaultTol);

}  // namespace shiftlab
