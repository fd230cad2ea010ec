#pragma once

#include <iosfwd>
#include <string>

#include "kappa_family.hpp"

namespace shiftlab::cli {

enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kInconclusive = 2,
  kParseError = 3,
  kTheoremDefect = 4,
  kConstructionError = 5,
};

// SHIFTLAB_TOL when set and parseable, otherwise the library default.
double tolerance_from_env();

// Reads a JSON document from a file, or stdin for "-".
std::string read_input(const std::string& path);

int cmd_check(const std::string& path, double tol, std::ostream& out, std::ostream& err);
int cmd_theorem(const std::string& path, int m_max, int n_max, double tol, std::ostream& out,
                std::ostream& err);
int cmd_sixpoint(const std::string& path, Index2 K, double tol, std::ostream& out, std::ostream& err);
// Writes CSV or SVG (by extension) to out_path, or CSV to out when out_path is empty.
int cmd_scan_example(const ScanConfig& config, const std::string& out_path, std::ostream& out,
                     std::ostream& err);

}  // namespace shiftlab::cli
