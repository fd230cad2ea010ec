#include "shiftlab/shift2d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

std::string str(Index2 k) { return "(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + ")"; }

void require_window(const ShiftGrid& g, Index2 needed, const char* op) {
  if (needed.k1 > g.window().k1 || needed.k2 > g.window().k2) {
    throw std::out_of_range(std::string(op) + ": needs weights up to " + str(needed) +
                            " but the window is " + str(g.window()));
  }
}

// gamma over [0, n1] x [0, n2], filled along rows then columns.
class GammaTable {
 public:
  GammaTable(const ShiftGrid& g, Index2 n) : n_(n), values_((n.k1 + 1) * (n.k2 + 1)) {
    at(0, 0) = 1.0;
    for (int i = 1; i <= n.k1; ++i) at(i, 0) = at(i - 1, 0) * sq(g.alpha({i - 1, 0}));
    for (int i = 0; i <= n.k1; ++i) {
      for (int j = 1; j <= n.k2; ++j) at(i, j) = at(i, j - 1) * sq(g.beta({i, j - 1}));
    }
  }

  double operator()(Index2 k) const { return values_[k.k1 * (n_.k2 + 1) + k.k2]; }

 private:
  static double sq(double x) { return x * x; }
  double& at(int i, int j) { return values_[i * (n_.k2 + 1) + j]; }

  Index2 n_;
  std::vector<double> values_;
};

}  // namespace

ShiftGrid::ShiftGrid(Generator alpha, Generator beta, Index2 window)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), window_(window) {
  if (window.k1 < 0 || window.k2 < 0) throw std::invalid_argument("negative window");
}

double ShiftGrid::alpha(Index2 k) const {
  if (k.k1 < 0 || k.k2 < 0 || k.k1 > window_.k1 || k.k2 > window_.k2) {
    throw std::out_of_range("alpha" + str(k) + " outside window " + str(window_));
  }
  return alpha_(k);
}

double ShiftGrid::beta(Index2 k) const {
  if (k.k1 < 0 || k.k2 < 0 || k.k1 > window_.k1 || k.k2 > window_.k2) {
    throw std::out_of_range("beta" + str(k) + " outside window " + str(window_));
  }
  return beta_(k);
}

ShiftGrid ShiftGrid::transposed() const {
  return ShiftGrid([b = beta_](Index2 k) { return b({k.k2, k.k1}); },
                   [a = alpha_](Index2 k) { return a({k.k2, k.k1}); }, {window_.k2, window_.k1});
}

ShiftGrid ShiftGrid::restricted(int m, int n, Index2 offset) const {
  if (m < 1 || n < 1) throw std::invalid_argument("powers must be >= 1");
  auto [p, q] = offset;
  Index2 w{(window_.k1 - p - m + 1) / m, (window_.k2 - q - n + 1) / n};
  if (window_.k1 - p - m + 1 < 0 || window_.k2 - q - n + 1 < 0) {
    throw std::out_of_range("restriction offset outside window");
  }
  ShiftGrid base = *this;
  auto alpha = [base, m, n, p, q](Index2 k) {
    double prod = 1.0;
    for (int i = 0; i < m; ++i) prod *= base.alpha({m * k.k1 + p + i, n * k.k2 + q});
    return prod;
  };
  auto beta = [base, m, n, p, q](Index2 k) {
    double prod = 1.0;
    for (int j = 0; j < n; ++j) prod *= base.beta({m * k.k1 + p, n * k.k2 + q + j});
    return prod;
  };
  return ShiftGrid(alpha, beta, w);
}

Verdict commutes(const ShiftGrid& g, Index2 K) {
  require_window(g, {K.k1 + 1, K.k2 + 1}, "commutes");
  Verdict v;
  for (int i = 0; i <= K.k1; ++i) {
    for (int j = 0; j <= K.k2; ++j) {
      double lhs = g.beta({i + 1, j}) * g.alpha({i, j});
      double rhs = g.alpha({i, j + 1}) * g.beta({i, j});
      double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
      v.margin = std::min(v.margin, 1e-12 - rel);
      if (rel > 1e-12) {
        v.pass = false;
        v.witness = Index2{i, j};
        v.note = "weights do not commute";
        return v;
      }
    }
  }
  return v;
}

double gamma2d(const ShiftGrid& g, Index2 k) {
  if (k.k1 < 0 || k.k2 < 0) throw std::out_of_range("negative moment index");
  double row_first = 1.0, column_first = 1.0;
  for (int i = 0; i < k.k1; ++i) row_first *= g.alpha({i, 0}) * g.alpha({i, 0});
  for (int j = 0; j < k.k2; ++j) row_first *= g.beta({k.k1, j}) * g.beta({k.k1, j});
  for (int j = 0; j < k.k2; ++j) column_first *= g.beta({0, j}) * g.beta({0, j});
  for (int i = 0; i < k.k1; ++i) column_first *= g.alpha({i, k.k2}) * g.alpha({i, k.k2});
  if (std::abs(row_first - column_first) > 1e-12 * std::max(row_first, column_first)) {
    throw PathMismatch("gamma" + str(k) + " depends on the path: " + std::to_string(row_first) +
                       " vs " + std::to_string(column_first));
  }
  return row_first;
}

Verdict six_point_test(const ShiftGrid& g, Index2 K, double tol) {
  require_window(g, {K.k1 + 1, K.k2 + 1}, "six_point_test");
  Verdict v;
  for (int i = 0; i <= K.k1; ++i) {
    for (int j = 0; j <= K.k2; ++j) {
      double a = g.alpha({i, j}), a1 = g.alpha({i + 1, j}), a2 = g.alpha({i, j + 1});
      double b = g.beta({i, j}), b1 = g.beta({i + 1, j}), b2 = g.beta({i, j + 1});
      double h11 = a1 * a1 - a * a;
      double h22 = b2 * b2 - b * b;
      double h12 = a2 * b1 - a * b;
      double det = h11 * h22 - h12 * h12;
      double scale = std::max({a * a, a1 * a1, b * b, b2 * b2, std::abs(a2 * b1)});
      v.margin = std::min(v.margin, det);
      if (det < -tol * scale * scale || h11 + h22 < -tol * scale) {
        v.pass = false;
        v.margin = det < -tol * scale * scale ? det : h11 + h22;
        v.witness = Index2{i, j};
        v.note = "2x2 self-commutator block is not positive semidefinite";
        return v;
      }
    }
  }
  v.note = "no obstruction up to " + str(K);
  return v;
}

Verdict k_hyponormal_window(const ShiftGrid& g, int k, Index2 K, double tol) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  Index2 top{K.k1 + 2 * k, K.k2 + 2 * k};
  require_window(g, top, "k_hyponormal_window");
  GammaTable gamma(g, top);

  std::vector<Index2> dirs;
  for (int total = 1; total <= k; ++total) {
    for (int d2 = 0; d2 <= total; ++d2) dirs.push_back({total - d2, d2});
  }

  Verdict v;
  // Blocks are indexed by the common base w; the vectors e_{w+d} live on the lattice.
  for (int i = -k; i <= K.k1; ++i) {
    for (int j = -k; j <= K.k2; ++j) {
      std::vector<Index2> live;
      for (auto d : dirs) {
        if (i + d.k1 >= 0 && j + d.k2 >= 0) live.push_back(d);
      }
      if (live.empty()) continue;
      bool on_lattice = i >= 0 && j >= 0;
      int size = static_cast<int>(live.size());
      Eigen::MatrixXd block(size, size);
      for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
          Index2 dr = live[r], dc = live[c];
          double gr = gamma({i + dr.k1, j + dr.k2});
          double gc = gamma({i + dc.k1, j + dc.k2});
          double entry = gamma({i + dr.k1 + dc.k1, j + dr.k2 + dc.k2}) / std::sqrt(gr * gc);
          if (on_lattice) entry -= std::sqrt(gr * gc) / gamma({i, j});
          block(r, c) = entry;
        }
      }
      double trace = block.trace();
      double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(block, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
      v.margin = std::min(v.margin, lowest);
      if (lowest < -tol * (1.0 + std::abs(trace))) {
        v.pass = false;
        v.margin = lowest;
        v.witness = Index2{i, j};
        v.note = "degree-" + std::to_string(k) + " self-commutator block is not positive semidefinite";
        return v;
      }
    }
  }
  v.note = "no obstruction up to degree " + std::to_string(k) + " and " + str(K);
  return v;
}

BackwardExtension2D backward_ext_2var(const Measure2D& muM, const Measure1D& sigma, double beta00,
                                      double tol) {
  BackwardExtension2D out;
  auto fail = [&](Verdict::Witness w, double margin, std::string note) {
    out.verdict.pass = false;
    out.verdict.witness = w;
    out.verdict.margin = margin;
    out.verdict.note = std::move(note);
    return out;
  };

  double norm = norm_inv_t(muM);
  out.norm_inv_t = norm;
  if (!std::isfinite(norm)) {
    return fail(0.0, -std::numeric_limits<double>::infinity(), "(i) 1/t is not integrable");
  }
  double load = beta00 * beta00 * norm;
  if (load > 1.0 + tol) return fail(0.0, 1.0 - load, "(ii) beta00^2 |1/t| exceeds 1");

  Extremal ext = extremal(muM);
  Measure1D pushed = load * marginal_X(ext.measure);
  Verdict below = measure_leq(pushed, sigma, tol);
  if (!below) return fail(below.witness, below.margin, "(iii) marginal exceeds sigma");
  if (std::abs(load - 1.0) <= tol) {
    Verdict above = measure_leq(sigma, pushed, tol);
    if (!above) return fail(above.witness, above.margin, "(iii) saturated extension needs marginal = sigma");
  }

  out.verdict.margin = below.margin;
  Measure2D mu = load * ext.measure;
  Measure1D rest = sigma - pushed;
  if (!rest.empty()) mu += Measure2D::product(rest, Measure1D::dirac(0.0));
  out.measure = std::move(mu);
  return out;
}

}  // namespace shiftlab
