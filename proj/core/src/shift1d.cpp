#include "shiftlab/shift1d.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <variant>

#include "shiftlab/errors.hpp"

namespace shiftlab {

struct WeightSeq::State {
  std::variant<Explicit, Backed, BackExtension> source;

  mutable std::mutex lock;
  mutable std::vector<double> moments;  // measure-backed only
  mutable std::vector<double> squares;
  mutable std::vector<double> gammas{1.0};

  double moment_locked(int k) const {
    const auto& mu = std::get<Backed>(source).mu;
    while (static_cast<int>(moments.size()) <= k) {
      moments.push_back(moment(mu, static_cast<int>(moments.size())));
    }
    return moments[k];
  }

  double compute_square(int n) const {
    if (const auto* e = std::get_if<Explicit>(&source)) {
      int size = static_cast<int>(e->weights.size());
      if (n < size) return e->weights[n] * e->weights[n];
      if (e->tail == Tail::constant && size > 0) return e->weights.back() * e->weights.back();
      throw std::out_of_range("weight index " + std::to_string(n) + " beyond explicit list");
    }
    if (std::holds_alternative<Backed>(source)) {
      double lo = moment_locked(n), hi = moment_locked(n + 1);
      if (!(lo > 1e-300) || !(hi > 0) || !std::isfinite(hi / lo)) {
        throw DegenerateTail("moments vanish at order " + std::to_string(n + 1));
      }
      return hi / lo;
    }
    const auto& b = std::get<BackExtension>(source);
    return n == 0 ? b.a * b.a : b.inner->weight_squared(n - 1);
  }

  double square_locked(int n) const {
    while (static_cast<int>(squares.size()) <= n) {
      squares.push_back(compute_square(static_cast<int>(squares.size())));
    }
    return squares[n];
  }
};

WeightSeq::WeightSeq(std::shared_ptr<State> state) : state_(std::move(state)) {}

WeightSeq WeightSeq::explicit_weights(std::vector<double> weights, Tail tail) {
  for (double w : weights) {
    if (!(w > 0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive and finite");
  }
  auto s = std::make_shared<State>();
  s->source = Explicit{std::move(weights), tail};
  return WeightSeq(std::move(s));
}

WeightSeq WeightSeq::from_measure(Measure1D mu) {
  double mass = mu.total_mass();
  if (std::abs(mass - 1.0) > 1e-12) {
    throw std::invalid_argument("Berger measure must have total mass 1, got " + std::to_string(mass));
  }
  auto s = std::make_shared<State>();
  s->source = Backed{std::move(mu)};
  return WeightSeq(std::move(s));
}

WeightSeq WeightSeq::back_extended(double a, WeightSeq inner) {
  if (!(a > 0) || !std::isfinite(a)) throw std::invalid_argument("leading weight must be positive");
  auto s = std::make_shared<State>();
  s->source = BackExtension{a, std::make_shared<const WeightSeq>(std::move(inner))};
  return WeightSeq(std::move(s));
}

double WeightSeq::weight_squared(int n) const {
  if (n < 0) throw std::out_of_range("negative weight index");
  std::lock_guard guard(state_->lock);
  return state_->square_locked(n);
}

double WeightSeq::weight(int n) const { return std::sqrt(weight_squared(n)); }

double WeightSeq::gamma(int k) const {
  if (k < 0) throw std::out_of_range("negative moment index");
  std::lock_guard guard(state_->lock);
  auto& g = state_->gammas;
  while (static_cast<int>(g.size()) <= k) {
    int j = static_cast<int>(g.size()) - 1;
    g.push_back(g.back() * state_->square_locked(j));
  }
  return g[k];
}

std::optional<int> WeightSeq::length() const {
  if (const auto* e = as_explicit(); e && e->tail == Tail::none) {
    return static_cast<int>(e->weights.size());
  }
  if (const auto* b = as_back_extension()) {
    if (auto n = b->inner->length()) return *n + 1;
  }
  return std::nullopt;
}

const Measure1D* WeightSeq::measure() const {
  if (const auto* b = std::get_if<Backed>(&state_->source)) return &b->mu;
  return nullptr;
}

const WeightSeq::Explicit* WeightSeq::as_explicit() const {
  return std::get_if<Explicit>(&state_->source);
}

const WeightSeq::BackExtension* WeightSeq::as_back_extension() const {
  return std::get_if<BackExtension>(&state_->source);
}

WeightSeq weights_from_measure(const Measure1D& mu) { return WeightSeq::from_measure(mu); }

Measure1D restriction_measure(const Measure1D& mu, int n) { return tilt(mu, n, moment(mu, n)); }

std::vector<Packet> power_decompose(const WeightSeq& w, int m) {
  if (m < 1) throw std::invalid_argument("power must be >= 1");
  std::vector<Packet> packets;

  if (const Measure1D* mu = w.measure()) {
    for (int i = 0; i < m; ++i) {
      Measure1D tilted = i == 0 ? *mu : tilt(*mu, i, w.gamma(i));
      Measure1D pm = pushforward_power(tilted, m);
      packets.push_back({WeightSeq::from_measure(pm), pm});
    }
    return packets;
  }

  if (const auto* e = w.as_explicit()) {
    int size = static_cast<int>(e->weights.size());
    for (int i = 0; i < m; ++i) {
      int count = e->tail == WeightSeq::Tail::constant ? (size + m - 1) / m + 1 : (size - i) / m;
      std::vector<double> ws;
      for (int j = 0; j < count; ++j) {
        double prod = 1.0;
        for (int k = 0; k < m; ++k) prod *= w.weight(m * j + i + k);
        ws.push_back(prod);
      }
      packets.push_back({WeightSeq::explicit_weights(std::move(ws), e->tail), std::nullopt});
    }
    return packets;
  }

  const auto* b = w.as_back_extension();
  std::vector<Packet> inner = power_decompose(*b->inner, m);
  double lead = b->a;
  for (int k = 0; k + 1 < m; ++k) lead *= b->inner->weight(k);
  packets.push_back({WeightSeq::back_extended(lead, inner[m - 1].weights), std::nullopt});
  for (int i = 1; i < m; ++i) packets.push_back(inner[i - 1]);
  return packets;
}

BackwardExtension backward_extension(double a, const Measure1D& xi, double tol) {
  BackwardExtension out;
  double norm = integrate_power(xi, -1.0);
  if (!std::isfinite(norm)) {
    out.verdict.pass = false;
    out.verdict.margin = -std::numeric_limits<double>::infinity();
    out.verdict.witness = 0.0;
    out.verdict.note = "1/t is not integrable";
    return out;
  }
  double load = a * a * norm;
  out.verdict.margin = 1.0 - load;
  if (load > 1.0 + tol) {
    out.verdict.pass = false;
    out.verdict.witness = 0.0;
    out.verdict.note = "a^2 |1/t| exceeds 1";
    return out;
  }
  Measure1D mu = (a * a) * divide_by_t(xi);
  if (load < 1.0) mu = mu + Measure1D::dirac(0.0, 1.0 - load);

  double g1 = moment(mu, 1), g2 = moment(mu, 2);
  if (std::abs(g1 - a * a) > 1e-9 * std::max(1.0, a * a) ||
      std::abs(g2 - a * a * moment(xi, 1)) > 1e-9 * std::max(1.0, g2)) {
    throw std::logic_error("backward_extension: moment round trip failed");
  }
  out.measure = std::move(mu);
  return out;
}

Measure1D stampfli_completion(double w0, double w1, double w2) {
  if (!(w0 > 0 && w0 < w1 && w1 < w2) || !std::isfinite(w2)) {
    throw NotCompletable("Stampfli completion needs 0 < w0 < w1 < w2");
  }
  double g1 = w0 * w0, g2 = g1 * w1 * w1, g3 = g2 * w2 * w2;
  double det = g2 - g1 * g1;
  if (!(det > 1e-14 * g2)) throw NotCompletable("Hankel system is singular");

  // monic t^2 + c1 t + c0 orthogonal to 1 and t
  double c0 = (-g2 * g2 + g1 * g3) / det;
  double c1 = (-g3 + g1 * g2) / det;
  double disc = c1 * c1 - 4.0 * c0;
  if (!(disc > 0)) throw NotCompletable("quadrature polynomial has no distinct real roots");
  double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  double r1 = q, r2 = c0 / q;
  double t0 = std::min(r1, r2), t1 = std::max(r1, r2);
  if (t0 < 0) throw NotCompletable("quadrature node is negative");

  double rho1 = (g1 - t0) / (t1 - t0);
  double rho0 = 1.0 - rho1;
  if (!(rho0 > 0 && rho1 > 0)) throw NotCompletable("quadrature weights are not positive");
  return Measure1D({{t0, rho0}, {t1, rho1}}, {}, Measure1D::Sign::positive);
}

Verdict hankel_check(const WeightSeq& w, int k, int window) {
  if (k < 1 || window < 0) throw std::invalid_argument("hankel_check needs k >= 1, window >= 0");
  Verdict v;
  v.note = "no obstruction up to order " + std::to_string(k);
  for (int u = 0; u <= window; ++u) {
    Eigen::MatrixXd h(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) h(i, j) = w.gamma(i + j + u);
    }
    double trace = h.trace();
    double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly)
                        .eigenvalues()
                        .minCoeff();
    double rel = lowest / trace;
    if (rel < v.margin) v.margin = rel;
    if (lowest < -1e-10 * trace) {
      v.pass = false;
      v.witness = u;
      v.note = "moment matrix of order " + std::to_string(k) + " is not positive semidefinite";
      return v;
    }
  }
  return v;
}

}  // namespace shiftlab
