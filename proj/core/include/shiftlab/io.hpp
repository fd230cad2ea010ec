#pragma once

#include <nlohmann/json.hpp>

#include "shiftlab/errors.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/measure2d.hpp"
#include "shiftlab/shift1d.hpp"
#include "shiftlab/shift2d.hpp"
#include "shiftlab/tc_class.hpp"

namespace shiftlab {

class ParseError : public Error {
 public:
  using Error::Error;
};

// {"atoms": [[loc, mass], ...], "pieces": [{"lo", "hi", "terms": [[coef, exp], ...]}]}
Measure1D measure_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Measure1D& mu);

// {"terms": [{"weight", "s", "t"}, ...]}
Measure2D measure2d_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Measure2D& mu);

// {"weights": [...], "tail": "constant" | null} | {"measure": ...} | {"backext": {"a", "inner"}}
WeightSeq weights_from_json(const nlohmann::json& j);

// {"sigma", "tau", "a", "xi", "eta"}
FiveTuple five_tuple_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FiveTuple& ft);

// {"tc": <five tuple>} or {"alphaRows": [[...]], "betaRows": [[...]], "tail": "tensor" | null}.
// alphaRows[k2][k1] holds alpha_(k1,k2). With the tensor tail, indices past the
// table are clamped to its last row and column.
ShiftGrid grid_from_json(const nlohmann::json& j, Index2 tc_window = kDefaultGridWindow);

}  // namespace shiftlab
