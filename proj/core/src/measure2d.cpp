#include "shiftlab/measure2d.hpp"

#include <cmath>

#include "shiftlab/errors.hpp"

namespace shiftlab {

Measure2D::Measure2D(std::vector<ProductTerm> terms) {
  for (auto& term : terms) {
    if (term.weight != 0.0 && !term.s.empty() && !term.t.empty()) terms_.push_back(std::move(term));
  }
}

Measure2D Measure2D::product(const Measure1D& s, const Measure1D& t, double weight) {
  return Measure2D({{weight, s, t}});
}

bool Measure2D::is_positive() const {
  for (const auto& term : terms_) {
    if (term.weight < 0 || !term.s.is_positive() || !term.t.is_positive()) return false;
  }
  return true;
}

Measure2D& Measure2D::operator+=(const Measure2D& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

Measure2D operator+(Measure2D mu, const Measure2D& nu) { return mu += nu; }

Measure2D operator*(double c, Measure2D mu) {
  std::vector<ProductTerm> terms = mu.terms();
  for (auto& term : terms) term.weight *= c;
  return Measure2D(std::move(terms));
}

double moment2d(const Measure2D& mu, int k1, int k2) {
  double total = 0.0;
  for (const auto& term : mu.terms()) total += term.weight * moment(term.s, k1) * moment(term.t, k2);
  return total;
}

namespace {

Measure1D marginal(const Measure2D& mu, bool first) {
  std::vector<double> coeffs;
  std::vector<Measure1D> parts;
  for (const auto& term : mu.terms()) {
    const Measure1D& keep = first ? term.s : term.t;
    const Measure1D& drop = first ? term.t : term.s;
    coeffs.push_back(term.weight * drop.total_mass());
    parts.push_back(keep);
  }
  return linear_combine(coeffs, parts);
}

}  // namespace

Measure1D marginal_X(const Measure2D& mu) { return marginal(mu, true); }
Measure1D marginal_Y(const Measure2D& mu) { return marginal(mu, false); }

Measure2D swapped(const Measure2D& mu) {
  std::vector<ProductTerm> terms;
  for (const auto& term : mu.terms()) terms.push_back({term.weight, term.t, term.s});
  return Measure2D(std::move(terms));
}

double norm_inv_t(const Measure2D& mu) {
  double total = 0.0;
  for (const auto& term : mu.terms()) {
    total += term.weight * term.s.total_mass() * integrate_power(term.t, -1.0);
  }
  return total;
}

Extremal extremal(const Measure2D& mu) {
  std::vector<ProductTerm> terms;
  double norm = 0.0;
  for (const auto& term : mu.terms()) {
    Measure1D off_zero = without_atom_at_zero(term.t);
    if (off_zero.empty()) continue;
    double part = integrate_power(off_zero, -1.0);
    if (!std::isfinite(part)) throw NonIntegrable("extremal: 1/t not integrable off {0}");
    norm += term.weight * term.s.total_mass() * part;
    terms.push_back({term.weight, term.s, divide_by_t(off_zero)});
  }
  if (!(norm > 0)) throw NonIntegrable("extremal: measure vanishes off the line t = 0");
  for (auto& term : terms) term.weight /= norm;
  return {Measure2D(std::move(terms)), norm};
}

}  // namespace shiftlab
