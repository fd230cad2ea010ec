#include "shiftlab/io.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::pair<double, double> pair_of(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ParseError(std::string(what) + " must be a [x, y] pair");
  return {number(j[0], what), number(j[1], what)};
}

std::vector<std::vector<double>> table(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw ParseError(std::string(what) + " rows must be non-empty arrays");
    std::vector<double> r;
    for (const auto& x : row) r.push_back(number(x, what));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Measure1D measure_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("measure must be an object");
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw ParseError("\"atoms\" must be an array");
    for (const auto& a : j["atoms"]) {
      auto [loc, mass] = pair_of(a, "atom");
      atoms.push_back({loc, mass});
    }
  }
  if (j.contains("pieces")) {
    if (!j["pieces"].is_array()) throw ParseError("\"pieces\" must be an array");
    for (const auto& p : j["pieces"]) {
      DensityPiece piece{number(field(p, "lo"), "lo"), number(field(p, "hi"), "hi"), {}};
      const json& terms = field(p, "terms");
      if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
      for (const auto& t : terms) {
        auto [c, e] = pair_of(t, "term");
        piece.terms.push_back({c, e});
      }
      pieces.push_back(std::move(piece));
    }
  }
  try {
    return Measure1D(atoms, pieces, Measure1D::Sign::positive);
  } catch (const std::invalid_argument&) {
  }
  try {
    return Measure1D(std::move(atoms), std::move(pieces), Measure1D::Sign::signed_);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json to_json(const Measure1D& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({a.location, a.mass});
  json pieces = json::array();
  for (const auto& p : mu.pieces()) {
    json terms = json::array();
    for (const auto& t : p.terms) terms.push_back({t.coefficient, t.exponent});
    pieces.push_back({{"lo", p.lo}, {"hi", p.hi}, {"terms", terms}});
  }
  return {{"atoms", atoms}, {"pieces", pieces}};
}

Measure2D measure2d_from_json(const json& j) {
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
  std::vector<ProductTerm> out;
  for (const auto& t : terms) {
    double w = t.contains("weight") ? number(t["weight"], "weight") : 1.0;
    out.push_back({w, measure_from_json(field(t, "s")), measure_from_json(field(t, "t"))});
  }
  return Measure2D(std::move(out));
}

json to_json(const Measure2D& mu) {
  json terms = json::array();
  for (const auto& t : mu.terms()) terms.push_back({{"weight", t.weight}, {"s", to_json(t.s)}, {"t", to_json(t.t)}});
  return {{"terms", terms}};
}

WeightSeq weights_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("weight sequence must be an object");
  try {
    if (j.contains("weights")) {
      std::vector<double> ws;
      for (const auto& w : field(j, "weights")) ws.push_back(number(w, "weight"));
      auto tail = WeightSeq::Tail::none;
      if (j.contains("tail") && !j["tail"].is_null()) {
        if (j["tail"] != "constant") throw ParseError("\"tail\" must be \"constant\" or null");
        tail = WeightSeq::Tail::constant;
      }
      return WeightSeq::explicit_weights(std::move(ws), tail);
    }
    if (j.contains("measure")) return weights_from_measure(measure_from_json(j["measure"]));
    if (j.contains("backext")) {
      const json& b = j["backext"];
      return WeightSeq::back_extended(number(field(b, "a"), "a"), weights_from_json(field(b, "inner")));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("weight sequence needs \"weights\", \"measure\" or \"backext\"");
}

FiveTuple five_tuple_from_json(const json& j) {
  FiveTuple ft{measure_from_json(field(j, "sigma")), measure_from_json(field(j, "tau")),
               number(field(j, "a"), "a"), measure_from_json(field(j, "xi")),
               measure_from_json(field(j, "eta"))};
  try {
    validate(ft);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return ft;
}

json to_json(const FiveTuple& ft) {
  return {{"sigma", to_json(ft.sigma)}, {"tau", to_json(ft.tau)}, {"a", ft.a},
          {"xi", to_json(ft.xi)},       {"eta", to_json(ft.eta)}};
}

ShiftGrid grid_from_json(const json& j, Index2 tc_window) {
  if (j.is_object() && j.contains("tc")) return build_grid(five_tuple_from_json(j["tc"]), tc_window);

  auto alpha = std::make_shared<const std::vector<std::vector<double>>>(table(field(j, "alphaRows"), "alphaRows"));
  auto beta = std::make_shared<const std::vector<std::vector<double>>>(table(field(j, "betaRows"), "betaRows"));
  for (const auto* t : {alpha.get(), beta.get()}) {
    for (const auto& row : *t) {
      for (double w : row) {
        if (!(w > 0)) throw ParseError("weights must be positive");
      }
    }
  }
  bool tensor = false;
  if (j.contains("tail") && !j["tail"].is_null()) {
    if (j["tail"] != "tensor") throw ParseError("\"tail\" must be \"tensor\" or null");
    tensor = true;
  }

  auto lookup = [](const std::vector<std::vector<double>>& t, Index2 k) {
    const auto& row = t[std::min<std::size_t>(k.k2, t.size() - 1)];
    return row[std::min<std::size_t>(k.k1, row.size() - 1)];
  };
  Index2 window{1 << 20, 1 << 20};
  if (!tensor) {
    auto extent = [](const std::vector<std::vector<double>>& t) {
      std::size_t w = t.front().size();
      for (const auto& row : t) w = std::min(w, row.size());
      return Index2{static_cast<int>(w) - 1, static_cast<int>(t.size()) - 1};
    };
    Index2 a = extent(*alpha), b = extent(*beta);
    window = {std::min(a.k1, b.k1), std::min(a.k2, b.k2)};
  }
  return ShiftGrid([alpha, lookup](Index2 k) { return lookup(*alpha, k); },
                   [beta, lookup](Index2 k) { return lookup(*beta, k); }, window);
}

}  // namespace shiftlab
