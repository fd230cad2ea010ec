#include "random_tc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "shiftlab/shift1d.hpp"

namespace shiftlab::testing {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

namespace {

bool coin(Rng& rng) { return rng() % 2 == 0; }

double determinant(std::vector<std::vector<double>> a) {
  int n = static_cast<int>(a.size());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    if (a[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

Measure1D random_atomic(Rng& rng, const std::vector<double>& locations) {
  std::vector<double> masses;
  double total = 0.0;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    masses.push_back(uniform(rng, 0.05, 1.0));
    total += masses.back();
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < locations.size(); ++i) atoms.push_back({locations[i], masses[i] / total});
  return Measure1D(std::move(atoms), {}, Measure1D::Sign::positive);
}

Measure1D random_mixed(Rng& rng) {
  std::vector<Atom> atoms;
  int n_atoms = static_cast<int>(rng() % 4);
  for (int i = 0; i < n_atoms; ++i) {
    double loc = i == 0 && n_atoms > 1 && coin(rng) ? 0.0 : uniform(rng, 0.05, 1.0);
    atoms.push_back({loc, uniform(rng, 0.05, 1.0)});
  }
  std::vector<DensityPiece> pieces;
  double cut = uniform(rng, 0.2, 0.8);
  const double exponents[] = {-0.5, 0.0, 0.5, 1.0, 2.0, 3.0};
  for (auto [lo, hi] : {std::pair{0.0, cut}, std::pair{cut, 1.0}}) {
    if (n_atoms > 0 && coin(rng)) continue;
    DensityPiece p{lo, hi, {}};
    int n_terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < n_terms; ++t) p.terms.push_back({uniform(rng, 0.1, 2.0), exponents[rng() % 6]});
    pieces.push_back(std::move(p));
  }
  Measure1D mu(atoms, pieces, Measure1D::Sign::positive);
  return (1.0 / mu.total_mass()) * mu;
}

FiveTuple random_tuple(Rng& rng, double min_margin) {
  for (;;) {
    bool aligned = coin(rng);
    std::vector<double> tau_locs{1.0};
    if (coin(rng)) tau_locs.push_back(uniform(rng, 0.3, 0.9));
    Measure1D tau1 = random_atomic(rng, tau_locs);
    double y0sq = uniform(rng, 0.3, 0.95) / integrate_power(tau1, -1.0);
    Measure1D tau = *backward_extension(std::sqrt(y0sq), tau1).measure;

    std::vector<double> sigma_locs{0.0, 1.0};
    if (coin(rng)) sigma_locs.push_back(uniform(rng, 0.3, 0.9));
    Measure1D sigma = random_atomic(rng, sigma_locs);

    auto core = [&](const std::vector<double>& pool) {
      std::vector<double> locs{1.0};
      if (aligned) {
        for (double t : pool) {
          if (t != 0.0 && t != 1.0 && coin(rng)) locs.push_back(t);
        }
      } else if (coin(rng)) {
        locs.push_back(uniform(rng, 0.3, 0.95));
      }
      return random_atomic(rng, locs);
    };
    Measure1D eta = core(tau_locs);
    Measure1D xi = core(sigma_locs);

    FiveTuple ft{sigma, tau, 1.0, xi, eta};
    double max_load = 1.0 - components_subnormal(ft).margin;
    ft.a = uniform(rng, 0.2, 0.97) / std::sqrt(max_load);
    if (!components_subnormal(ft)) continue;
    Verdict v = is_subnormal(ft);
    if (std::abs(v.margin) < min_margin) continue;
    return ft;
  }
}

ShiftGrid random_commuting_grid(Rng& rng, Index2 window) {
  int n1 = window.k1 + 2, n2 = window.k2 + 2;
  auto alpha = std::make_shared<std::vector<std::vector<double>>>(n1, std::vector<double>(n2));
  auto beta = std::make_shared<std::vector<std::vector<double>>>(n1 + 1, std::vector<double>(n2));
  std::vector<double> row_growth(n1 + 1), col_growth(n2);
  row_growth[0] = uniform(rng, 0.5, 0.9);
  for (int i = 1; i <= n1; ++i) row_growth[i] = row_growth[i - 1] * uniform(rng, 0.97, 1.08);
  col_growth[0] = uniform(rng, 0.5, 0.9);
  for (int j = 1; j < n2; ++j) col_growth[j] = col_growth[j - 1] * uniform(rng, 0.97, 1.08);

  double a0 = uniform(rng, 0.5, 0.9);
  for (int i = 0; i < n1; ++i) {
    (*alpha)[i][0] = a0;
    a0 *= uniform(rng, 0.97, 1.08);
  }
  for (int i = 0; i <= n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      (*beta)[i][j] = col_growth[j] * std::sqrt(row_growth[i]) * uniform(rng, 0.99, 1.01);
    }
  }
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j + 1 < n2; ++j) {
      (*alpha)[i][j + 1] = (*alpha)[i][j] * (*beta)[i + 1][j] / (*beta)[i][j];
    }
  }
  return ShiftGrid([alpha](Index2 k) { return (*alpha)[k.k1][k.k2]; },
                   [beta](Index2 k) { return (*beta)[k.k1][k.k2]; }, {n1 - 1, n2 - 1});
}

bool psd_by_minors(const std::vector<std::vector<double>>& m, double tol) {
  int n = static_cast<int>(m.size());
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(m[i][i]));
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    std::vector<std::vector<double>> sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = m[idx[r]][idx[c]];
    }
    if (determinant(sub) < -tol * std::pow(scale, static_cast<double>(idx.size()))) return false;
  }
  return true;
}

Measure1D two_atom_sigma(double x) {
  return Measure1D({{0.0, 1.0 - x * x}, {1.0, x * x}}, {}, Measure1D::Sign::positive);
}

FiveTuple two_atom_tuple(double x, double y, double a) {
  return {two_atom_sigma(x), two_atom_sigma(y), a, Measure1D::dirac(1.0), Measure1D::dirac(1.0)};
}

}  // namespace shiftlab::testing
