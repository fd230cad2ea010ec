#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

// "p" or "p/q"
double parse_number(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) parts.push_back(item);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace shiftlab::cli;

  CLI::App app{"Subnormality and hyponormality of weighted shifts in the TC class"};
  app.require_subcommand(1);
  double tol = tolerance_from_env();

  std::string input;
  auto* check = app.add_subcommand("check", "Decide subnormality of a five-tuple");
  check->add_option("file", input, "Five-tuple JSON, or - for stdin")->required();

  int m_max = 3, n_max = 3;
  auto* theorem = app.add_subcommand("theorem", "Compare subnormality of the tuple and of its powers");
  theorem->add_option("file", input, "Five-tuple JSON, or - for stdin")->required();
  theorem->add_option("--mmax", m_max, "Largest horizontal power")->check(CLI::PositiveNumber);
  theorem->add_option("--nmax", n_max, "Largest vertical power")->check(CLI::PositiveNumber);

  std::string window = "40,40";
  auto* sixpoint = app.add_subcommand("sixpoint", "Six-point hyponormality test on a grid");
  sixpoint->add_option("file", input, "Grid JSON, or - for stdin")->required();
  sixpoint->add_option("--K", window, "Largest lattice index K1,K2");

  ScanConfig config;
  std::string omega = "0.4,0.625,0.85", out_path, scan_window = "40,40";
  auto* scan = app.add_subcommand("scan-example", "Hyponormal but not subnormal region of the kappa family");
  scan->add_option("--omega", omega, "w0,w1,w2 (decimals or p/q)");
  scan->add_option("--a", config.a, "Core seam weight a");
  scan->add_option("--kappa-steps", config.kappa_steps, "Grid size along kappa");
  scan->add_option("--y0-steps", config.y0_steps, "Grid size along y0");
  scan->add_option("--audit", config.audit, "Number of interior points to audit");
  scan->add_option("--seed", config.seed, "Sampling seed for the audit");
  scan->add_option("--K", scan_window, "Six-point window K1,K2 for the audit");
  scan->add_option("--mmax", config.m_max, "Largest horizontal power in the audit");
  scan->add_option("--nmax", config.n_max, "Largest vertical power in the audit");
  scan->add_option("--out", out_path, "Output path (.csv or .svg); CSV to stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }

  auto index_pair = [](const std::string& s) {
    auto parts = split(s);
    if (parts.size() != 2) throw std::invalid_argument("expected K1,K2");
    return shiftlab::Index2{std::stoi(parts[0]), std::stoi(parts[1])};
  };

  try {
    if (*check) return cmd_check(input, tol, std::cout, std::cerr);
    if (*theorem) return cmd_theorem(input, m_max, n_max, tol, std::cout, std::cerr);
    if (*sixpoint) return cmd_sixpoint(input, index_pair(window), tol, std::cout, std::cerr);
    auto parts = split(omega);
    if (parts.size() != 3) throw std::invalid_argument("--omega needs three values");
    for (int i = 0; i < 3; ++i) config.omega[i] = parse_number(parts[i]);
    config.window = index_pair(scan_window);
    config.tol = tol;
    return cmd_scan_example(config, out_path, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
}
