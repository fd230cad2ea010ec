#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "shiftlab/io.hpp"

namespace shiftlab::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Parse failures of any kind map to kParseError.
template <class F>
auto parse_or_report(const std::string& path, std::ostream& err, F&& make) -> std::optional<decltype(make(json{}))> {
  try {
    return make(json::parse(read_input(path)));
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
  }
  return std::nullopt;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

double tolerance_from_env() {
  if (const char* s = std::getenv("SHIFTLAB_TOL")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return kDefaultTol;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

int cmd_check(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
  auto ft = parse_or_report(path, err, [](const json& j) { return five_tuple_from_json(j); });
  if (!ft) return kParseError;

  Verdict components = components_subnormal(*ft, 400, tol);
  out << "components subnormal: " << describe(components) << "\n";

  PsiPhi pp;
  try {
    pp = psi_phi(*ft);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInconclusive;
  }
  Verdict psi = is_nonnegative(pp.psi, tol);
  Verdict phi = is_nonnegative(pp.phi, tol);
  out << "psi: " << to_json(pp.psi).dump() << "\n";
  out << "phi: " << to_json(pp.phi).dump() << "\n";
  out << "psi >= 0: " << describe(psi) << "\n";
  out << "phi >= 0: " << describe(phi) << "\n";
  out << "phi mass at 0: " << fmt(pp.phi.mass_at(0.0)) << "\n";

  try {
    Index2 K{40, 40};
    Verdict hypo = six_point_test(build_grid(*ft, {K.k1 + 1, K.k2 + 1}), K, tol);
    out << "six-point test up to (40,40): " << describe(hypo) << "\n";
  } catch (const Error& e) {
    out << "six-point test: not evaluated (" << e.what() << ")\n";
  }

  bool subnormal = components.pass && psi.pass && phi.pass;
  out << "subnormal: " << yes_no(subnormal) << "\n";
  return subnormal ? kPass : kFail;
}

int cmd_theorem(const std::string& path, int m_max, int n_max, double tol, std::ostream& out,
                std::ostream& err) {
  auto ft = parse_or_report(path, err, [](const json& j) { return five_tuple_from_json(j); });
  if (!ft) return kParseError;

  TheoremReport r = verify_theorem(*ft, m_max, n_max, tol);
  out << "tuple: " << (r.base.pass ? "subnormal" : "not subnormal") << " (" << describe(r.base) << ")\n";
  out << "power subnormality (rows m = 1.." << m_max << ", columns n = 1.." << n_max << "):\n";
  for (int m = 1; m <= m_max; ++m) {
    out << "  m=" << m << ":";
    for (int n = 1; n <= n_max; ++n) {
      const TheoremEntry& e = r.entries[(m - 1) * n_max + (n - 1)];
      const char* mark = e.status == TheoremEntry::Status::agree          ? ""
                         : e.status == TheoremEntry::Status::inconclusive ? "?"
                                                                           : "!";
      out << "  " << (e.subnormal ? "S" : "N") << mark;
    }
    out << "\n";
  }
  for (const auto& e : r.entries) {
    out << "  (" << e.m << "," << e.n << ") " << (e.subnormal ? "subnormal" : "not subnormal")
        << " margin=" << fmt(e.margin);
    if (!e.subnormal) out << " failing summands " << e.failing_count << "/" << e.m * e.n;
    if (e.status == TheoremEntry::Status::defect) out << " DEFECT";
    if (e.status == TheoremEntry::Status::inconclusive) out << " inconclusive";
    if (!e.error.empty()) out << " [" << e.error << "]";
    out << "\n";
  }
  out << "defects: " << r.defects << ", inconclusive: " << r.inconclusive << "\n";
  if (r.defects > 0) return kTheoremDefect;
  return r.inconclusive > 0 ? kInconclusive : kPass;
}

int cmd_sixpoint(const std::string& path, Index2 K, double tol, std::ostream& out, std::ostream& err) {
  std::optional<ShiftGrid> grid;
  try {
    grid = parse_or_report(path, err, [&](const json& j) { return grid_from_json(j, {K.k1 + 1, K.k2 + 1}); });
  } catch (const Unbounded& e) {
    err << "error: " << e.what() << "\n";
    return kConstructionError;
  }
  if (!grid) return kParseError;

  Index2 w = grid->window();
  Index2 k{std::min(K.k1, w.k1 - 1), std::min(K.k2, w.k2 - 1)};
  if (k.k1 < 0 || k.k2 < 0) {
    err << "error: grid window too small for the six-point test\n";
    return kInconclusive;
  }
  if (k != K) out << "K reduced to (" << k.k1 << "," << k.k2 << ") to fit the grid window\n";
  try {
    Verdict c = commutes(*grid, k);
    if (!c) out << "warning: weights do not commute at " << describe(c.witness) << "\n";
    Verdict v = six_point_test(*grid, k, tol);
    out << "six-point test: " << describe(v) << "\n";
    return v ? kPass : kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInconclusive;
  }
}

int cmd_scan_example(const ScanConfig& config, const std::string& out_path, std::ostream& out,
                     std::ostream& err) {
  if (config.kappa_steps < 2 || config.y0_steps < 2) {
    err << "error: steps must be >= 2\n";
    return kParseError;
  }
  if (!(config.omega[0] < config.omega[1] && config.omega[1] < config.omega[2])) {
    err << "error: omega must be strictly increasing\n";
    return kParseError;
  }
  std::optional<KappaFamily> ex;
  try {
    ex.emplace(config.omega, config.a);
  } catch (const NotCompletable& e) {
    err << "error: " << e.what() << "\n";
    return kConstructionError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  std::vector<RegionRow> rows = scan_region(*ex, config.kappa_steps);
  int nonempty = 0;
  for (const auto& r : rows) nonempty += r.nonempty ? 1 : 0;

  std::optional<AuditReport> audit;
  if (config.audit > 0) audit = audit_region(*ex, config);

  bool svg = out_path.size() >= 4 && out_path.compare(out_path.size() - 4, 4, ".svg") == 0;
  std::string body = svg ? render_svg(*ex, rows, config.y0_steps, audit ? &*audit : nullptr) : render_csv(rows);
  if (out_path.empty()) {
    out << body;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return kParseError;
    }
    f << body;
  }

  std::ostream& log = out_path.empty() ? err : out;
  log << "tau1 atoms: t1=" << fmt(ex->t1()) << " rho1=" << fmt(ex->rho1()) << ", |1/t|=" << fmt(ex->tau1_inv_norm())
      << "\n";
  log << "region non-empty at " << nonempty << " of " << rows.size() << " kappa values\n";
  if (audit) {
    log << "audit: " << audit->region_cells << " region cells, " << audit->tc_cells
        << " with subnormal rows and columns, " << audit->points.size() << " sampled\n";
    for (const auto& p : audit->points) {
      log << "  kappa=" << fmt(p.kappa) << " y0=" << fmt(p.y0) << " six-point " << (p.six_point ? "pass" : "FAIL")
          << ", subnormal " << (p.subnormal ? "yes" : "no") << ", powers";
      for (const auto& pw : p.powers) log << " (" << pw[0] << "," << pw[1] << "):" << pw[2] << "/" << pw[3];
      if (p.counterexample) log << "  COUNTEREXAMPLE: " << p.reason;
      log << "\n";
    }
    log << "audit counterexamples: " << audit->counterexamples << "\n";
    if (audit->counterexamples > 0) return kFail;
  }
  if (nonempty == 0) {
    log << "region is empty for these parameters\n";
    return kFail;
  }
  return kPass;
}

}  // namespace shiftlab::cli
