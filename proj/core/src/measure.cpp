#include "shiftlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kExponentTol = 1e-12;
constexpr int kChebyshevPoints = 1024;

bool touches_zero(const DensityPiece& p) { return p.lo == 0.0; }

// Sum of coefficients that share an exponent, with cancellation flushed to 0.
struct Accumulator {
  double sum = 0.0;
  double scale = 0.0;

  void add(double v) {
    sum += v;
    scale += std::abs(v);
  }
  double value() const { return std::abs(sum) <= 8.0 * kEps * scale ? 0.0 : sum; }
};

std::vector<PowerTerm> fold_terms(std::vector<PowerTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  std::vector<PowerTerm> out;
  for (std::size_t i = 0; i < terms.size();) {
    Accumulator acc;
    double p = terms[i].exponent;
    std::size_t j = i;
    for (; j < terms.size() && std::abs(terms[j].exponent - p) <= kExponentTol; ++j) {
      acc.add(terms[j].coefficient);
    }
    if (double c = acc.value(); c != 0.0) out.push_back({c, p});
    i = j;
  }
  return out;
}

std::vector<Atom> fold_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms.size();) {
    Accumulator acc;
    double loc = atoms[i].location;
    std::size_t j = i;
    for (; j < atoms.size() && atoms[j].location - loc <= kAtomMergeTol; ++j) {
      acc.add(atoms[j].mass);
    }
    if (double m = acc.value(); m != 0.0) out.push_back({loc, m});
    i = j;
  }
  return out;
}

// Value of the density as t -> 0+ for a piece starting at 0.
double limit_at_zero(const DensityPiece& p) {
  if (p.terms.empty()) return 0.0;
  const PowerTerm& lead = p.terms.front();  // terms are sorted by exponent
  if (lead.exponent < -kExponentTol) return lead.coefficient > 0 ? kInf : -kInf;
  if (std::abs(lead.exponent) <= kExponentTol) return lead.coefficient;
  return 0.0;
}

// Integral of c t^q over [lo, hi], assuming it converges.
double integrate_term(double c, double q, double lo, double hi) {
  if (std::abs(q + 1.0) <= kExponentTol) return c * std::log(hi / lo);
  double e = q + 1.0;
  double lo_part = lo == 0.0 ? 0.0 : std::pow(lo, e);
  return c * (std::pow(hi, e) - lo_part) / e;
}

}  // namespace

double DensityPiece::density(double t) const {
  double v = 0.0;
  for (const auto& term : terms) {
    if (t == 0.0) {
      if (term.exponent < 0) return term.coefficient > 0 ? kInf : -kInf;
      if (term.exponent == 0) v += term.coefficient;
      continue;
    }
    v += term.coefficient * std::pow(t, term.exponent);
  }
  return v;
}

Measure1D::Measure1D(std::vector<Atom> atoms, std::vector<DensityPiece> pieces, Sign sign)
    : sign_(sign) {
  for (const auto& a : atoms) {
    if (!(a.location >= 0.0) || !std::isfinite(a.location) || !std::isfinite(a.mass)) {
      throw std::invalid_argument("atom must have a finite location >= 0 and finite mass");
    }
  }
  atoms_ = fold_atoms(std::move(atoms));

  for (auto& p : pieces) {
    if (!(p.lo >= 0.0) || !(p.hi > p.lo) || !std::isfinite(p.hi)) {
      throw std::invalid_argument("density piece needs 0 <= lo < hi < inf");
    }
    p.terms = fold_terms(std::move(p.terms));
    if (p.terms.empty()) continue;
    if (touches_zero(p) && p.terms.front().exponent <= -1.0 + kExponentTol) {
      throw NonIntegrable("density piece starting at 0 has exponent <= -1");
    }
    pieces_.push_back(std::move(p));
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].lo < pieces_[i - 1].hi - 1e-13 * std::max(1.0, pieces_[i].lo)) {
      throw std::invalid_argument("density pieces overlap");
    }
  }

  if (sign_ == Sign::positive) {
    for (const auto& a : atoms_) {
      if (a.mass < 0) throw std::invalid_argument("negative atom in a positive measure");
    }
    Measure1D densities;
    densities.pieces_ = pieces_;
    densities.sign_ = Sign::signed_;
    if (!is_nonnegative(densities, 1e-12)) {
      throw std::invalid_argument("negative density in a positive measure");
    }
  }
}

Measure1D Measure1D::dirac(double location, double mass) {
  return Measure1D({{location, mass}}, {}, mass >= 0 ? Sign::positive : Sign::signed_);
}

Measure1D Measure1D::uniform(double lo, double hi, double density) {
  return Measure1D({}, {{lo, hi, {{density, 0.0}}}},
                   density >= 0 ? Sign::positive : Sign::signed_);
}

double Measure1D::mass_at(double location) const {
  for (const auto& a : atoms_) {
    if (std::abs(a.location - location) <= kAtomMergeTol) return a.mass;
  }
  return 0.0;
}

double Measure1D::total_mass() const { return moment(*this, 0); }

double Measure1D::support_max() const {
  double s = 0.0;
  for (const auto& a : atoms_) s = std::max(s, a.location);
  for (const auto& p : pieces_) s = std::max(s, p.hi);
  return s;
}

double moment(const Measure1D& mu, int k) {
  if (k < 0) throw std::invalid_argument("moment order must be >= 0");
  double total = 0.0;
  for (const auto& a : mu.atoms()) total += a.mass * std::pow(a.location, k);
  for (const auto& p : mu.pieces()) {
    for (const auto& term : p.terms) {
      total += integrate_term(term.coefficient, term.exponent + k, p.lo, p.hi);
    }
  }
  return total;
}

double integrate_power(const Measure1D& mu, double r) {
  double total = 0.0;
  bool diverges = false;
  for (const auto& a : mu.atoms()) {
    if (a.location == 0.0) {
      if (r < 0) {
        if (a.mass < 0) throw NonIntegrable("negative atom at 0 against a negative power");
        diverges = true;
      } else if (r == 0) {
        total += a.mass;
      }
      continue;
    }
    total += a.mass * std::pow(a.location, r);
  }
  for (const auto& p : mu.pieces()) {
    bool leading = true;
    for (const auto& term : p.terms) {
      double q = term.exponent + r;
      if (touches_zero(p) && q <= -1.0 + kExponentTol) {
        // Most singular term decides the sign of the divergence.
        if (leading) {
          if (term.coefficient < 0) throw NonIntegrable("density diverges negatively at 0");
          diverges = true;
        }
        leading = false;
        continue;
      }
      leading = false;
      total += integrate_term(term.coefficient, q, p.lo, p.hi);
    }
  }
  return diverges ? kInf : total;
}

Measure1D pushforward_power(const Measure1D& mu, int m) {
  if (m < 1) throw std::invalid_argument("pushforward exponent must be >= 1");
  if (m == 1) return mu;
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) atoms.push_back({std::pow(a.location, m), a.mass});
  std::vector<DensityPiece> pieces;
  for (const auto& p : mu.pieces()) {
    DensityPiece q{std::pow(p.lo, m), std::pow(p.hi, m), {}};
    for (const auto& term : p.terms) {
      q.terms.push_back({term.coefficient / m, (term.exponent + 1.0) / m - 1.0});
    }
    pieces.push_back(std::move(q));
  }
  return Measure1D(std::move(atoms), std::move(pieces),
                   mu.is_positive() ? Measure1D::Sign::positive : Measure1D::Sign::signed_);
}

Measure1D multiply_by_power(const Measure1D& mu, int n) {
  if (n < 0) throw std::invalid_argument("use divide_by_t for negative powers");
  if (n == 0) return mu;
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) atoms.push_back({a.location, a.mass * std::pow(a.location, n)});
  std::vector<DensityPiece> pieces = mu.pieces();
  for (auto& p : pieces) {
    for (auto& term : p.terms) term.exponent += n;
  }
  return Measure1D(std::move(atoms), std::move(pieces),
                   mu.is_positive() ? Measure1D::Sign::positive : Measure1D::Sign::signed_);
}

Measure1D tilt(const Measure1D& mu, int n, double gamma_n, double tol) {
  double actual = moment(mu, n);
  if (!(gamma_n > 0) || std::abs(actual - gamma_n) > tol * std::max(1.0, std::abs(gamma_n))) {
    throw GammaMismatch("tilt: moment " + std::to_string(n) + " is " + std::to_string(actual) +
                        ", caller supplied " + std::to_string(gamma_n));
  }
  return (1.0 / gamma_n) * multiply_by_power(mu, n);
}

Measure1D divide_by_t(const Measure1D& mu) {
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) {
    if (a.location == 0.0) throw NonIntegrable("divide_by_t: measure charges {0}");
    atoms.push_back({a.location, a.mass / a.location});
  }
  std::vector<DensityPiece> pieces = mu.pieces();
  for (auto& p : pieces) {
    for (auto& term : p.terms) {
      term.exponent -= 1.0;
      if (touches_zero(p) && term.exponent <= -1.0 + kExponentTol) {
        throw NonIntegrable("divide_by_t: density too singular at 0");
      }
    }
  }
  return Measure1D(std::move(atoms), std::move(pieces),
                   mu.is_positive() ? Measure1D::Sign::positive : Measure1D::Sign::signed_);
}

Measure1D without_atom_at_zero(const Measure1D& mu) {
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms()) {
    if (a.location != 0.0) atoms.push_back(a);
  }
  return Measure1D(std::move(atoms), mu.pieces(),
                   mu.is_positive() ? Measure1D::Sign::positive : Measure1D::Sign::signed_);
}

Measure1D linear_combine(std::span<const double> coeffs, std::span<const Measure1D> measures) {
  if (coeffs.size() != measures.size()) {
    throw std::invalid_argument("linear_combine: coefficient/measure count mismatch");
  }
  bool positive = true;
  std::vector<Atom> atoms;
  std::vector<double> breaks;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    positive = positive && coeffs[i] >= 0 && measures[i].is_positive();
    for (const auto& a : measures[i].atoms()) atoms.push_back({a.location, coeffs[i] * a.mass});
    for (const auto& p : measures[i].pieces()) {
      breaks.push_back(p.lo);
      breaks.push_back(p.hi);
    }
  }

  std::sort(breaks.begin(), breaks.end());
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-13 * std::max(1.0, std::abs(y)); };
  breaks.erase(std::unique(breaks.begin(), breaks.end(), close), breaks.end());

  std::vector<DensityPiece> pieces;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    double lo = breaks[b], hi = breaks[b + 1];
    std::vector<PowerTerm> terms;
    for (std::size_t i = 0; i < measures.size(); ++i) {
      if (coeffs[i] == 0.0) continue;
      for (const auto& p : measures[i].pieces()) {
        bool covers = (p.lo <= lo || close(p.lo, lo)) && (p.hi >= hi || close(p.hi, hi));
        if (!covers) continue;
        for (const auto& term : p.terms) terms.push_back({coeffs[i] * term.coefficient, term.exponent});
      }
    }
    terms = fold_terms(std::move(terms));
    if (terms.empty()) continue;
    if (!pieces.empty() && close(pieces.back().hi, lo) && pieces.back().terms.size() == terms.size() &&
        std::equal(terms.begin(), terms.end(), pieces.back().terms.begin(),
                   [](const PowerTerm& x, const PowerTerm& y) {
                     return x.coefficient == y.coefficient && x.exponent == y.exponent;
                   })) {
      pieces.back().hi = hi;
      continue;
    }
    pieces.push_back({lo, hi, std::move(terms)});
  }
  return Measure1D(std::move(atoms), std::move(pieces),
                   positive ? Measure1D::Sign::positive : Measure1D::Sign::signed_);
}

Measure1D operator*(double c, const Measure1D& mu) {
  const double cs[] = {c};
  return linear_combine(cs, std::span<const Measure1D>(&mu, 1));
}

Measure1D operator+(const Measure1D& mu, const Measure1D& nu) {
  const double cs[] = {1.0, 1.0};
  const Measure1D ms[] = {mu, nu};
  return linear_combine(cs, ms);
}

Measure1D operator-(const Measure1D& mu, const Measure1D& nu) {
  const double cs[] = {1.0, -1.0};
  const Measure1D ms[] = {mu, nu};
  return linear_combine(cs, ms);
}

Verdict is_nonnegative(const Measure1D& mu, double tol) {
  double margin = kInf;
  double where = 0.0;
  const char* kind = "";
  auto consider = [&](double value, double t, const char* what) {
    if (value < margin) {
      margin = value;
      where = t;
      kind = what;
    }
  };

  for (const auto& a : mu.atoms()) consider(a.mass, a.location, "atom");
  for (const auto& p : mu.pieces()) {
    consider(touches_zero(p) ? limit_at_zero(p) : p.density(p.lo), p.lo, "density");
    consider(p.density(p.hi), p.hi, "density");
    double mid = 0.5 * (p.lo + p.hi), half = 0.5 * (p.hi - p.lo);
    for (int j = 0; j < kChebyshevPoints; ++j) {
      double t = mid + half * std::cos(std::numbers::pi * (j + 0.5) / kChebyshevPoints);
      consider(p.density(t), t, "density");
    }
  }
  if (margin == kInf) margin = 0.0;  // the zero measure sits on the boundary

  Verdict v;
  v.margin = margin;
  v.pass = margin >= -tol;
  if (!v.pass) {
    v.witness = where;
    v.note = std::string("negative ") + kind;
  }
  return v;
}

Verdict measure_leq(const Measure1D& mu, const Measure1D& nu, double tol) {
  return is_nonnegative(nu - mu, tol);
}

}  // namespace shiftlab
