#include "kappa_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "shiftlab/errors.hpp"
#include "shiftlab/shift1d.hpp"
#include "shiftlab/shift2d.hpp"

namespace shiftlab::cli {

KappaFamily::KappaFamily(std::array<double, 3> omega, double a) : a_(a) {
  if (!(a > 0)) throw std::invalid_argument("a must be positive");
  for (double w : omega) {
    if (!(w > 0)) throw NotCompletable("omega entries must be positive");
  }
  tau1_ = stampfli_completion(std::sqrt(omega[0]), std::sqrt(omega[1]), std::sqrt(omega[2]));
  const Atom& top = tau1_.atoms().back();
  t1_ = top.location;
  rho1_ = top.mass;
  y1_ = std::sqrt(omega[0]);
  inv_norm_ = integrate_power(tau1_, -1.0);
}

Measure1D KappaFamily::sigma(double kappa) {
  double k2 = kappa * kappa;
  return Measure1D({{0.0, 1.0 - k2}, {1.0, k2 / 2}}, {{0.0, 1.0, {{k2 / 2, 0.0}}}},
                   Measure1D::Sign::positive);
}

std::array<double, 4> KappaFamily::s_terms(double kappa) const {
  double k2 = kappa * kappa;
  double denom = inv_norm_ - a_ * a_ / t1_;
  return {std::sqrt(t1_) / a_ * std::sqrt(rho1_),
          denom > 0 ? std::sqrt((1.0 - k2) / denom) : std::numeric_limits<double>::infinity(),
          std::sqrt(t1_) / a_ * std::sqrt(k2 / 2), std::sqrt(1.0 / inv_norm_)};
}

double KappaFamily::s(double kappa) const {
  auto t = s_terms(kappa);
  return *std::min_element(t.begin(), t.end());
}

double KappaFamily::h(double kappa) const {
  WeightSeq x = weights_from_measure(sigma(kappa));
  double x0 = x.weight_squared(0), x1 = x.weight_squared(1);
  double y1 = y1_ * y1_, a2 = a_ * a_;
  return std::sqrt(x0 * y1 * (x1 - x0) / (x0 * (x1 - x0) + (a2 - x0) * (a2 - x0)));
}

FiveTuple KappaFamily::tuple(double kappa, double y0) const {
  BackwardExtension tau = backward_extension(y0, tau1_);
  if (!tau.verdict) throw std::invalid_argument("y0 too large: [y0, tau1] is not a measure");
  return {sigma(kappa), *tau.measure, a_, Measure1D::dirac(1.0), Measure1D::dirac(1.0)};
}

double kappa_at(int i, int steps) { return (i + 0.5) / steps; }
double y0_at(int j, int steps) { return (j + 0.5) / steps; }

std::vector<RegionRow> scan_region(const KappaFamily& ex, int kappa_steps) {
  if (kappa_steps < 2) throw std::invalid_argument("kappa steps must be >= 2");
  std::vector<RegionRow> rows;
  for (int i = 0; i < kappa_steps; ++i) {
    double k = kappa_at(i, kappa_steps);
    double s = ex.s(k), h = ex.h(k);
    rows.push_back({k, s, h, s < h});
  }
  return rows;
}

AuditReport audit_region(const KappaFamily& ex, const ScanConfig& config) {
  AuditReport report;
  std::vector<std::pair<double, double>> candidates;
  for (const RegionRow& row : scan_region(ex, config.kappa_steps)) {
    if (!row.nonempty) continue;
    for (int j = 0; j < config.y0_steps; ++j) {
      double y0 = y0_at(j, config.y0_steps);
      if (!(row.s < y0 && y0 < row.h)) continue;
      ++report.region_cells;
      try {
        if (components_subnormal(ex.tuple(row.kappa, y0), 100, config.tol)) {
          ++report.tc_cells;
          candidates.emplace_back(row.kappa, y0);
        }
      } catch (const std::invalid_argument&) {
      }
    }
  }

  std::vector<std::pair<double, double>> picked;
  std::mt19937_64 rng(config.seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(picked),
              static_cast<std::size_t>(std::max(config.audit, 0)), rng);

  for (auto [kappa, y0] : picked) {
    AuditPoint p;
    p.kappa = kappa;
    p.y0 = y0;
    std::vector<std::string> problems;
    try {
      FiveTuple ft = ex.tuple(kappa, y0);
      ShiftGrid grid = build_grid(ft, {config.window.k1 + 1, config.window.k2 + 1});
      p.six_point = six_point_test(grid, config.window, config.tol);
      if (!p.six_point) problems.push_back("six-point test fails at " + describe(p.six_point.witness));
      p.subnormal = is_subnormal(ft, config.tol);
      if (p.subnormal) problems.push_back("tuple is subnormal");
      for (int m = 1; m <= config.m_max; ++m) {
        for (int n = 1; n <= config.n_max; ++n) {
          std::vector<FiveTuple> summands = power(ft, m, n);
          int failing = 0;
          for (const auto& s : summands) failing += is_subnormal(s, config.tol) ? 0 : 1;
          p.powers.push_back({m, n, failing, static_cast<int>(summands.size())});
          if (failing == 0) {
            problems.push_back("power (" + std::to_string(m) + "," + std::to_string(n) + ") is subnormal");
          }
        }
      }
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
    p.counterexample = !problems.empty();
    for (std::size_t i = 0; i < problems.size(); ++i) p.reason += (i ? "; " : "") + problems[i];
    report.counterexamples += p.counterexample ? 1 : 0;
    report.points.push_back(std::move(p));
  }
  return report;
}

std::string render_csv(const std::vector<RegionRow>& rows) {
  std::string out = "kappa,s_kappa,h_kappa,region_nonempty\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", r.kappa, r.s, r.h, r.nonempty ? 1 : 0);
    out += buf;
  }
  return out;
}

std::string render_svg(const KappaFamily& ex, const std::vector<RegionRow>& rows, int y0_steps,
                       const AuditReport* audit) {
  const double width = 640, height = 480, left = 60, right = 20, top = 30, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  auto X = [&](double k) { return left + k * pw; };
  auto Y = [&](double y) { return top + (1.0 - std::clamp(y, 0.0, 1.0)) * ph; };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double dk = rows.empty() ? 0.0 : 1.0 / rows.size();
  double dy = 1.0 / std::max(y0_steps, 1);
  svg << "<g fill=\"#9ecae1\" stroke=\"none\">\n";
  for (const auto& r : rows) {
    if (!r.nonempty) continue;
    double lo = std::max(r.s, 0.0), hi = std::min(r.h, 1.0);
    if (hi <= lo) continue;
    svg << "<rect x=\"" << X(r.kappa - dk / 2) << "\" y=\"" << Y(hi) << "\" width=\"" << dk * pw
        << "\" height=\"" << (hi - lo) * ph << "\"/>\n";
  }
  svg << "</g>\n";

  auto curve = [&](auto value, const char* style) {
    svg << "<polyline fill=\"none\" " << style << " points=\"";
    for (const auto& r : rows) svg << X(r.kappa) << "," << Y(value(r)) << " ";
    svg << "\"/>\n";
  };
  curve([](const RegionRow& r) { return r.h; }, "stroke=\"#08519c\" stroke-width=\"2\"");
  curve([](const RegionRow& r) { return r.s; }, "stroke=\"#a50f15\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");

  if (audit) {
    for (const auto& p : audit->points) {
      svg << "<circle cx=\"" << X(p.kappa) << "\" cy=\"" << Y(p.y0) << "\" r=\"3\" fill=\""
          << (p.counterexample ? "#e31a1c" : "#238b45") << "\"/>\n";
    }
  }

  svg << "<g stroke=\"black\" fill=\"none\">\n";
  svg << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(1) << "\" y2=\"" << Y(0) << "\"/>\n";
  svg << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(1) << "\"/>\n";
  svg << "</g>\n";
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg << "<text x=\"" << X(t) << "\" y=\"" << Y(0) + 18 << "\" text-anchor=\"middle\">" << t << "</text>\n";
    svg << "<text x=\"" << X(0) - 8 << "\" y=\"" << Y(t) + 4 << "\" text-anchor=\"end\">" << t << "</text>\n";
  }
  svg << "<text x=\"" << X(0.5) << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">kappa</text>\n";
  svg << "<text x=\"16\" y=\"" << Y(0.5) << "\" transform=\"rotate(-90 16 " << Y(0.5)
      << ")\" text-anchor=\"middle\">y0</text>\n";
  svg << "<text x=\"" << X(0.5) << "\" y=\"20\" text-anchor=\"middle\">s(kappa) &lt; y0 &lt; h(kappa), a = "
      << ex.a() << ", y0 grid " << dy << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace shiftlab::cli
