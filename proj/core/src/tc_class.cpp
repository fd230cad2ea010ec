#include "shiftlab/tc_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// m_k(mu) ~ lead * support^k * k^(-order) as k -> infinity.
struct Top {
  double support = 0.0;
  int order = 0;
  double lead = 0.0;
};

Top top_of(const Measure1D& mu) {
  Top top;
  for (const auto& atom : mu.atoms()) {
    if (atom.mass > 0) top.support = std::max(top.support, atom.location);
  }
  for (const auto& p : mu.pieces()) top.support = std::max(top.support, p.hi);
  double tol = 1e-12 * std::max(1.0, top.support);
  for (const auto& atom : mu.atoms()) {
    if (atom.mass > 0 && std::abs(atom.location - top.support) <= tol) {
      top.lead = atom.mass;
      return top;
    }
  }
  for (const auto& p : mu.pieces()) {
    if (std::abs(p.hi - top.support) <= tol) {
      top.order = 1;
      top.lead = p.density(p.hi) * p.hi;
      if (!(top.lead > 0)) top.order = 2;
    }
  }
  return top;
}

// Limit of m_k(num)/m_k(den); +infinity when the ratio is unbounded.
double ratio_limit(const Measure1D& num, const Measure1D& den) {
  Top a = top_of(num), b = top_of(den);
  double tol = 1e-12 * std::max(1.0, b.support);
  if (a.support < b.support - tol) return 0.0;
  if (a.support > b.support + tol) return kInf;
  if (a.order > b.order) return 0.0;
  if (a.order < b.order) return kInf;
  return a.order == 2 ? kInf : a.lead / b.lead;
}

void require_probability(const Measure1D& mu, const char* name) {
  if (!mu.is_positive()) throw std::invalid_argument(std::string(name) + " must be a positive measure");
  double mass = mu.total_mass();
  if (std::abs(mass - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(name) + " must have total mass 1, got " + std::to_string(mass));
  }
}

Verdict fail_with(Verdict::Witness w, double margin, std::string note) {
  Verdict v;
  v.pass = false;
  v.witness = w;
  v.margin = margin;
  v.note = std::move(note);
  return v;
}

}  // namespace

void validate(const FiveTuple& ft) {
  require_probability(ft.sigma, "sigma");
  require_probability(ft.tau, "tau");
  require_probability(ft.xi, "xi");
  require_probability(ft.eta, "eta");
  if (!(ft.a > 0) || !std::isfinite(ft.a)) throw std::invalid_argument("a must be positive");
}

TcDiagram::TcDiagram(const FiveTuple& ft)
    : a_(ft.a),
      row0_(weights_from_measure(ft.sigma)),
      column0_(weights_from_measure(ft.tau)),
      core_row_(weights_from_measure(ft.xi)),
      core_column_(weights_from_measure(ft.eta)) {}

double TcDiagram::row_lead(int q) const {
  if (q < 1) throw std::out_of_range("row_lead needs q >= 1");
  return a_ * std::sqrt(core_column_.gamma(q - 1) * column0_.gamma(1) / column0_.gamma(q));
}

double TcDiagram::column_lead(int k) const {
  if (k < 1) throw std::out_of_range("column_lead needs k >= 1");
  return a_ * y0() * std::sqrt(core_row_.gamma(k - 1) / row0_.gamma(k));
}

double TcDiagram::alpha(Index2 k) const {
  if (k.k2 == 0) return row0_.weight(k.k1);
  if (k.k1 == 0) return row_lead(k.k2);
  return core_row_.weight(k.k1 - 1);
}

double TcDiagram::beta(Index2 k) const {
  if (k.k1 == 0) return column0_.weight(k.k2);
  if (k.k2 == 0) return column_lead(k.k1);
  return core_column_.weight(k.k2 - 1);
}

ShiftGrid build_grid(const FiveTuple& ft, Index2 window) {
  validate(ft);
  Measure1D tau1 = restriction_measure(ft.tau, 1);
  if (!std::isfinite(ratio_limit(ft.xi, ft.sigma))) {
    throw Unbounded("first weights of the columns diverge: xi outgrows sigma at the top of the support");
  }
  if (!std::isfinite(ratio_limit(ft.eta, tau1))) {
    throw Unbounded("first weights of the rows diverge: eta outgrows tau at the top of the support");
  }
  auto diagram = std::make_shared<const TcDiagram>(ft);
  return ShiftGrid([diagram](Index2 k) { return diagram->alpha(k); },
                   [diagram](Index2 k) { return diagram->beta(k); }, window);
}

Verdict components_subnormal(const FiveTuple& ft, int horizon, double tol) {
  validate(ft);
  double xi_norm = integrate_power(ft.xi, -1.0);
  double eta_norm = integrate_power(ft.eta, -1.0);
  if (!std::isfinite(xi_norm)) return fail_with(Index2{0, 1}, -kInf, "1/s is not integrable for xi");
  if (!std::isfinite(eta_norm)) return fail_with(Index2{1, 0}, -kInf, "1/t is not integrable for eta");

  TcDiagram d(ft);
  Measure1D tau1 = restriction_measure(ft.tau, 1);
  double a2 = ft.a * ft.a;
  double row_limit = a2 * ratio_limit(ft.eta, tau1) * xi_norm;
  double column_limit = a2 * d.y0() * d.y0() * ratio_limit(ft.xi, ft.sigma) / top_of(ft.sigma).support * eta_norm;

  Verdict v;
  auto consider = [&](double load, Index2 where, const char* what) {
    double margin = 1.0 - load;
    if (margin < v.margin) {
      v.margin = margin;
      if (load > 1.0 + tol) {
        v.pass = false;
        v.witness = where;
        v.note = what;
      }
    }
  };
  for (int i = 1; i <= horizon && v.pass; ++i) {
    try {
      double r = d.row_lead(i), c = d.column_lead(i);
      consider(r * r * xi_norm, Index2{0, i}, "row is not subnormal");
      consider(c * c * eta_norm, Index2{i, 0}, "column is not subnormal");
    } catch (const DegenerateTail&) {
      break;
    }
  }
  if (v.pass) {
    consider(row_limit, Index2{0, horizon + 1}, "rows are eventually not subnormal");
    consider(column_limit, Index2{horizon + 1, 0}, "columns are eventually not subnormal");
  }
  return v;
}

PsiPhi psi_phi(const FiveTuple& ft) {
  validate(ft);
  double y0sq = moment(ft.tau, 1);
  Measure1D tau1 = tilt(ft.tau, 1, y0sq);
  double xi_norm = integrate_power(ft.xi, -1.0);
  double eta_norm = integrate_power(ft.eta, -1.0);
  if (!std::isfinite(xi_norm)) throw NonIntegrable("1/s is not integrable for xi");
  if (!std::isfinite(eta_norm)) throw NonIntegrable("1/t is not integrable for eta");

  double a2 = ft.a * ft.a;
  Measure1D psi = tau1 - (a2 * xi_norm) * ft.eta;
  double psi_norm = integrate_power(psi, -1.0);
  if (!std::isfinite(psi_norm)) throw NonIntegrable("1/t is not integrable for psi");

  Measure1D phi = ft.sigma - Measure1D::dirac(0.0, y0sq * psi_norm) -
                  (a2 * y0sq * eta_norm) * divide_by_t(ft.xi);
  return {std::move(psi), std::move(phi)};
}

Verdict is_subnormal(const FiveTuple& ft, double tol) {
  PsiPhi pp;
  try {
    pp = psi_phi(ft);
  } catch (const NonIntegrable& e) {
    return fail_with(0.0, -kInf, e.what());
  }
  Verdict psi = is_nonnegative(pp.psi, tol);
  Verdict phi = is_nonnegative(pp.phi, tol);
  Verdict v;
  v.margin = std::min(psi.margin, phi.margin);
  v.pass = psi.pass && phi.pass;
  if (!psi.pass) {
    v.witness = psi.witness;
    v.note = "psi: " + psi.note;
  } else if (!phi.pass) {
    v.witness = phi.witness;
    v.note = "phi: " + phi.note;
  }
  return v;
}

FiveTuple transpose(const FiveTuple& ft) {
  double x0 = std::sqrt(moment(ft.sigma, 1));
  double y0 = std::sqrt(moment(ft.tau, 1));
  if (!(x0 > 0)) throw DegenerateTail("transpose: sigma is concentrated at 0");
  return {ft.tau, ft.sigma, ft.a * y0 / x0, ft.eta, ft.xi};
}

namespace {

// Summands of (T1, T2^n), ordered by q.
std::vector<FiveTuple> column_power(const FiveTuple& ft, int n) {
  if (n == 1) return {ft};
  TcDiagram d(ft);
  std::vector<Packet> tau_packets = power_decompose(weights_from_measure(ft.tau), n);
  std::vector<Packet> eta_packets = power_decompose(weights_from_measure(ft.eta), n);

  std::vector<FiveTuple> out;
  for (int q = 0; q < n; ++q) {
    FiveTuple s;
    if (q == 0) {
      s.sigma = ft.sigma;
      s.eta = *eta_packets[n - 1].measure;
    } else {
      BackwardExtension row = backward_extension(d.row_lead(q), ft.xi);
      if (!row.verdict) throw NotSubnormal("row " + std::to_string(q) + " is not subnormal: " + row.verdict.note);
      s.sigma = *row.measure;
      s.eta = restriction_measure(*eta_packets[q - 1].measure, 1);
    }
    s.tau = *tau_packets[q].measure;
    s.a = d.row_lead(n + q);
    s.xi = ft.xi;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<FiveTuple> power(const FiveTuple& ft, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("powers must be >= 1");
  validate(ft);
  std::vector<FiveTuple> rows = column_power(ft, n);
  std::vector<FiveTuple> out(static_cast<std::size_t>(m) * n);
  for (int q = 0; q < n; ++q) {
    std::vector<FiveTuple> cols = column_power(transpose(rows[q]), m);
    for (int p = 0; p < m; ++p) out[p * n + q] = m == 1 ? rows[q] : transpose(cols[p]);
  }
  return out;
}

TheoremReport verify_theorem(const FiveTuple& ft, int m_max, int n_max, double tol, double boundary) {
  TheoremReport report;
  report.base = is_subnormal(ft, tol);
  for (int m = 1; m <= m_max; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      TheoremEntry e;
      e.m = m;
      e.n = n;
      try {
        std::vector<FiveTuple> summands = power(ft, m, n);
        e.subnormal = true;
        e.margin = kInf;
        for (std::size_t i = 0; i < summands.size(); ++i) {
          Verdict v = is_subnormal(summands[i], tol);
          e.margin = std::min(e.margin, v.margin);
          if (!v.pass) {
            ++e.failing_count;
            if (e.subnormal) e.failing_summand = static_cast<int>(i);
            e.subnormal = false;
          }
        }
        if (e.subnormal == report.base.pass) {
          e.status = TheoremEntry::Status::agree;
        } else if (std::min(std::abs(report.base.margin), std::abs(e.margin)) < boundary) {
          e.status = TheoremEntry::Status::inconclusive;
        } else {
          e.status = TheoremEntry::Status::defect;
        }
      } catch (const Error& err) {
        e.status = TheoremEntry::Status::inconclusive;
        e.error = err.what();
      }
      if (e.status == TheoremEntry::Status::defect) ++report.defects;
      if (e.status == TheoremEntry::Status::inconclusive) ++report.inconclusive;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

Measure2D berger_measure(const FiveTuple& ft, double tol) {
  Verdict v = is_subnormal(ft, tol);
  if (!v) throw NotSubnormal("berger_measure: " + v.note);

  double y0sq = moment(ft.tau, 1);
  Measure1D tau1 = tilt(ft.tau, 1, y0sq);

  // Part above row 0: a backward extension in s of the tensor core, fed by tau1.
  BackwardExtension2D upper =
      backward_ext_2var(swapped(Measure2D::product(ft.xi, ft.eta)), tau1, ft.a, tol);
  if (!upper.verdict) throw NotSubnormal("berger_measure: upper part " + upper.verdict.note);
  Measure2D muM = swapped(*upper.measure);

  BackwardExtension2D whole = backward_ext_2var(muM, ft.sigma, std::sqrt(y0sq), tol);
  if (!whole.verdict) throw NotSubnormal("berger_measure: " + whole.verdict.note);
  return *whole.measure;
}

}  // namespace shiftlab
