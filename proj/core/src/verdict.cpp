#include "shiftlab/verdict.hpp"

#include <cstdio>

namespace shiftlab {

std::string describe(const Verdict::Witness& w) {
  char buf[96];
  if (const auto* t = std::get_if<double>(&w)) {
    std::snprintf(buf, sizeof buf, "t=%.10g", *t);
  } else if (const auto* i = std::get_if<int>(&w)) {
    std::snprintf(buf, sizeof buf, "index %d", *i);
  } else if (const auto* k = std::get_if<Index2>(&w)) {
    std::snprintf(buf, sizeof buf, "(%d,%d)", k->k1, k->k2);
  } else {
    return "-";
  }
  return buf;
}

std::string describe(const Verdict& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s margin=%.10g", v.pass ? "pass" : "FAIL", v.margin);
  std::string s = buf;
  if (v.has_witness()) s += " at " + describe(v.witness);
  if (!v.note.empty()) s += " (" + v.note + ")";
  return s;
}

}  // namespace shiftlab
