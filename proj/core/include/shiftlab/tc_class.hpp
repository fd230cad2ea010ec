#pragma once

#include <string>
#include <vector>

#include "shiftlab/measure.hpp"
#include "shiftlab/measure2d.hpp"
#include "shiftlab/shift1d.hpp"
#include "shiftlab/shift2d.hpp"

namespace shiftlab {

// A 2-variable shift with subnormal components and a tensor-form core:
// sigma is the Berger measure of row 0, tau of column 0, a the first weight of
// row 1, and xi x eta the Berger measure of the core.
struct FiveTuple {
  Measure1D sigma;
  Measure1D tau;
  double a = 0.0;
  Measure1D xi;
  Measure1D eta;
};

// Throws std::invalid_argument unless the four measures are probability measures
// and a > 0.
void validate(const FiveTuple& ft);

// Weight diagram of a five-tuple. Seam weights are forced by commutativity.
class TcDiagram {
 public:
  explicit TcDiagram(const FiveTuple& ft);

  double alpha(Index2 k) const;
  double beta(Index2 k) const;

  // alpha_(0,q), q >= 1: first weight of row q.
  double row_lead(int q) const;
  // beta_(k,0), k >= 1: first weight of column k.
  double column_lead(int k) const;

  double x0() const { return row0_.weight(0); }
  double y0() const { return column0_.weight(0); }

 private:
  double a_;
  WeightSeq row0_;
  WeightSeq column0_;
  WeightSeq core_row_;
  WeightSeq core_column_;
};

inline constexpr Index2 kDefaultGridWindow{200, 200};

// Throws Unbounded when the seam weights grow without bound.
ShiftGrid build_grid(const FiveTuple& ft, Index2 window = kDefaultGridWindow);

// Rows q >= 1 and columns k >= 1 are backward extensions of xi and eta; this
// checks that all of them are subnormal (the sup over the seam is taken over a
// finite horizon plus its limit).
Verdict components_subnormal(const FiveTuple& ft, int horizon = 400, double tol = kDefaultTol);

struct PsiPhi {
  Measure1D psi;
  Measure1D phi;
};

PsiPhi psi_phi(const FiveTuple& ft);

// Subnormal iff psi >= 0 and phi >= 0; the note names the failing functional.
Verdict is_subnormal(const FiveTuple& ft, double tol = kDefaultTol);

FiveTuple transpose(const FiveTuple& ft);

// The m*n summands of (T1^m, T2^n), ordered p*n + q for the summand living on
// span{e_(m l + p, n k + q)}.
std::vector<FiveTuple> power(const FiveTuple& ft, int m, int n);

struct TheoremEntry {
  enum class Status { agree, inconclusive, defect };

  int m = 1;
  int n = 1;
  bool subnormal = false;
  double margin = 0.0;
  int failing_summand = -1;
  int failing_count = 0;
  Status status = Status::agree;
  std::string error;
};

struct TheoremReport {
  Verdict base;
  std::vector<TheoremEntry> entries;
  int defects = 0;
  int inconclusive = 0;
};

TheoremReport verify_theorem(const FiveTuple& ft, int m_max, int n_max, double tol = kDefaultTol,
                             double boundary = 1e-6);

// Berger measure of a subnormal five-tuple; throws NotSubnormal otherwise.
Measure2D berger_measure(const FiveTuple& ft, double tol = kDefaultTol);

}  // namespace shiftlab
