#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/measure.hpp"
#include "shiftlab/tc_class.hpp"

namespace shiftlab::cli {

// Family of TC shifts with sigma = (1-k^2) delta_0 + (k^2/2) dt + (k^2/2) delta_1
// on [0,1], xi = eta = delta_1, and tau the backward extension [y0, tau1] of a
// Stampfli completion tau1. For fixed a the hyponormal-but-not-subnormal region
// in the (kappa, y0) plane is s(kappa) < y0 < h(kappa).
struct ScanConfig {
  std::array<double, 3> omega{0.4, 0.625, 0.85};
  double a = 0.3;
  int kappa_steps = 200;
  int y0_steps = 200;
  Index2 window{40, 40};
  int m_max = 2;
  int n_max = 2;
  int audit = 0;
  std::uint64_t seed = 20110815;
  double tol = kDefaultTol;
};

class KappaFamily {
 public:
  // Throws NotCompletable when omega admits no Stampfli completion.
  KappaFamily(std::array<double, 3> omega, double a);

  static Measure1D sigma(double kappa);

  const Measure1D& tau1() const { return tau1_; }
  double a() const { return a_; }
  double t1() const { return t1_; }
  double rho1() const { return rho1_; }
  double y1() const { return y1_; }
  double tau1_inv_norm() const { return inv_norm_; }

  // The four thresholds whose minimum is s(kappa).
  std::array<double, 4> s_terms(double kappa) const;
  double s(double kappa) const;
  double h(double kappa) const;

  // Throws std::invalid_argument when [y0, tau1] is not a probability measure.
  FiveTuple tuple(double kappa, double y0) const;

 private:
  double a_;
  Measure1D tau1_;
  double t1_ = 0.0;
  double rho1_ = 0.0;
  double y1_ = 0.0;
  double inv_norm_ = 0.0;
};

struct RegionRow {
  double kappa = 0.0;
  double s = 0.0;
  double h = 0.0;
  bool nonempty = false;
};

// kappa_i = (i + 1/2) / steps; y0_j = (j + 1/2) / steps.
double kappa_at(int i, int steps);
double y0_at(int j, int steps);

std::vector<RegionRow> scan_region(const KappaFamily& ex, int kappa_steps);

struct AuditPoint {
  double kappa = 0.0;
  double y0 = 0.0;
  Verdict six_point;
  Verdict subnormal;
  // For each power (m,n) <= (m_max,n_max): number of non-subnormal summands.
  std::vector<std::array<int, 4>> powers;  // {m, n, failing, total}
  bool counterexample = false;
  std::string reason;
};

struct AuditReport {
  int region_cells = 0;
  int tc_cells = 0;
  std::vector<AuditPoint> points;
  int counterexamples = 0;
};

// Samples interior grid cells of the region whose tuples lie in TC (rows and
// columns subnormal) and checks: six-point pass, tuple not subnormal, and every
// power up to (m_max, n_max) not subnormal.
AuditReport audit_region(const KappaFamily& ex, const ScanConfig& config);

std::string render_csv(const std::vector<RegionRow>& rows);
std::string render_svg(const KappaFamily& ex, const std::vector<RegionRow>& rows, int y0_steps,
                       const AuditReport* audit = nullptr);

}  // namespace shiftlab::cli
