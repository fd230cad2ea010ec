#pragma once

#include <compare>
#include <limits>
#include <string>
#include <variant>

namespace shiftlab {

struct Index2 {
  int k1 = 0;
  int k2 = 0;

  friend auto operator<=>(const Index2&, const Index2&) = default;
};

inline constexpr double kDefaultTol = 1e-9;

// Result of a positivity-type test. The witness is empty on pass, otherwise a
// location (measures), a 1-variable index, or a lattice point.
struct Verdict {
  using Witness = std::variant<std::monostate, double, int, Index2>;

  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  Witness witness;
  std::string note;

  explicit operator bool() const { return pass; }

  bool has_witness() const { return !std::holds_alternative<std::monostate>(witness); }
};

std::string describe(const Verdict& v);
std::string describe(const Verdict::Witness& w);

}  // namespace shiftlab
