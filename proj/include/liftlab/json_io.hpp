#pragma once

#include <string>

#include <json.hpp>

#include "liftlab/decomposition.hpp"
#include "liftlab/hierarchy.hpp"
#include "liftlab/knapsack.hpp"
#include "liftlab/set_vector.hpp"

namespace liftlab {

using Json = nlohmann::json;

// {"n": 3, "capacity": "9/5", "items": [{"size": "1", "value": "1"}, ...]}
// Rationals may be "p/q" strings, decimal strings or JSON numbers.
KnapsackInstance instance_from_json(const Json& j);
Json instance_to_json(const KnapsackInstance& inst);
KnapsackInstance load_instance(const std::string& path);

struct PointInput {
  SetVector y;
  bool rounded = false;       // some entry was a JSON float
  double max_rounding = 0.0;  // largest |float - rational| among those
};

// {"[]": "1", "[0]": "1/3", "[0,1]": 0.0, ...}. String values are read
// exactly; numbers are rounded to the nearest rational with denominator at
// most 10^9.
PointInput point_from_json(const Json& j, int n);
PointInput load_point(const std::string& path, int n);
Json point_to_json(const SetVector& y);
Json point_to_json(const FloatSetVector& y);

Json report_to_json(const MembershipReport& r);
Json decomposition_to_json(const DecompositionResult& res, const KnapsackInstance& inst);

Json read_json_file(const std::string& path);

}  // namespace liftlab
