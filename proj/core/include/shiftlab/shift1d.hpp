#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "shiftlab/measure.hpp"
#include "shiftlab/verdict.hpp"

namespace shiftlab {

// Weight sequence of a unilateral weighted shift. Copies share one memo of
// squared weights and moment products, filled on demand under a lock.
class WeightSeq {
 public:
  enum class Tail { none, constant };

  static WeightSeq explicit_weights(std::vector<double> weights, Tail tail = Tail::none);
  static WeightSeq from_measure(Measure1D mu);
  static WeightSeq back_extended(double a, WeightSeq inner);

  double weight(int n) const;
  double weight_squared(int n) const;
  // gamma(0) = 1, gamma(k) = w_0^2 ... w_{k-1}^2
  double gamma(int k) const;

  // Number of weights for a finite explicit list without tail.
  std::optional<int> length() const;
  // Berger measure, when the sequence is measure-backed.
  const Measure1D* measure() const;

  struct Explicit {
    std::vector<double> weights;
    Tail tail = Tail::none;
  };
  struct Backed {
    Measure1D mu;
  };
  struct BackExtension {
    double a = 0.0;
    std::shared_ptr<const WeightSeq> inner;
  };

  const Explicit* as_explicit() const;
  const BackExtension* as_back_extension() const;

 private:
  struct State;
  explicit WeightSeq(std::shared_ptr<State> state);
  std::shared_ptr<State> state_;
};

WeightSeq weights_from_measure(const Measure1D& mu);

// Berger measure of the restriction to span{e_n, e_{n+1}, ...}.
Measure1D restriction_measure(const Measure1D& mu, int n);

struct Packet {
  WeightSeq weights;
  std::optional<Measure1D> measure;
};

// The m packets of the m-th power: packet i has weights prod_{k<m} w_{mj+i+k}.
std::vector<Packet> power_decompose(const WeightSeq& w, int m);

struct BackwardExtension {
  Verdict verdict;
  std::optional<Measure1D> measure;
};

// Subnormality of shift(a, weights of xi) and, when subnormal, its Berger measure
// a^2 xi/t + (1 - a^2 |1/t|_xi) delta_0.
BackwardExtension backward_extension(double a, const Measure1D& xi, double tol = kDefaultTol);

// Two-atomic Berger measure of the recursively generated shift with initial
// weights w0 < w1 < w2.
Measure1D stampfli_completion(double w0, double w1, double w2);

// Positive semidefiniteness of (gamma_{i+j+u})_{0<=i,j<=k} for u = 0..window.
Verdict hankel_check(const WeightSeq& w, int k, int window);

}  // namespace shiftlab
