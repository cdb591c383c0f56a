#include "liftlab/json_io.hpp"

#include <fstream>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

constexpr std::int64_t kPointDenominatorCap = 1'000'000'000;

Rational rational_field(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return rationalize(j.get<double>(), kPointDenominatorCap);
  throw InvalidArgument(std::string(what) + " must be a number or a rational string");
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

KnapsackInstance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("capacity") || !j.contains("items") || !j["items"].is_array()) {
    throw InvalidArgument("instance needs \"capacity\" and an \"items\" array");
  }
  std::vector<Rational> sizes;
  std::vector<Rational> values;
  for (const auto& item : j["items"]) {
    if (!item.is_object() || !item.contains("size") || !item.contains("value")) {
      throw InvalidArgument("every item needs \"size\" and \"value\"");
    }
    sizes.push_back(rational_field(item["size"], "size"));
    values.push_back(rational_field(item["value"], "value"));
  }
  if (j.contains("n") && j["n"].get<std::size_t>() != sizes.size()) {
    throw InvalidArgument("\"n\" does not match the number of items");
  }
  return KnapsackInstance::make(std::move(sizes), std::move(values), rational_field(j["capacity"], "capacity"));
}

Json instance_to_json(const KnapsackInstance& inst) {
  Json items = Json::array();
  for (int i = 0; i < inst.size(); ++i) {
    items.push_back({{"size", to_string(inst.sizes()[i])}, {"value", to_string(inst.values()[i])}});
  }
  return {{"n", inst.size()}, {"capacity", to_string(inst.capacity())}, {"items", items}};
}

KnapsackInstance load_instance(const std::string& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

PointInput point_from_json(const Json& j, int n) {
  if (!j.is_object()) throw InvalidArgument("point must be a JSON object keyed by subsets");
  std::vector<std::pair<SubsetKey, Rational>> entries;
  PointInput out;
  for (const auto& [key, value] : j.items()) {
    SubsetKey s = parse_subset(key);
    if (!s.is_subset_of(SubsetKey::full(n))) throw InvalidArgument("point key " + key + " names an unknown item");
    if (value.is_number_float()) {
      double x = value.get<double>();
      Rational r = rationalize(x, kPointDenominatorCap);
      out.rounded = true;
      out.max_rounding = std::max(out.max_rounding, std::abs(x - to_double(r)));
      entries.emplace_back(s, std::move(r));
    } else {
      entries.emplace_back(s, rational_field(value, key.c_str()));
    }
  }
  std::vector<SubsetKey> keys;
  for (const auto& e : entries) keys.push_back(e.first);
  auto family = make_family(SubsetFamily::from_keys(n, keys));
  if (family->size() != entries.size()) throw InvalidArgument("point lists a subset twice");
  out.y = SetVector(family);
  for (const auto& [s, v] : entries) out.y.set(s, v);
  return out;
}

PointInput load_point(const std::string& path, int n) { return point_from_json(read_json_file(path), n); }

Json point_to_json(const SetVector& y) {
  Json out = Json::object();
  for (std::size_t a = 0; a < y.size(); ++a) out[to_string(y.family()[a])] = to_string(y[a]);
  return out;
}

Json point_to_json(const FloatSetVector& y) {
  Json out = Json::object();
  for (std::size_t a = 0; a < y.values.size(); ++a) out[to_string((*y.family)[a])] = y.values[a];
  return out;
}

Json report_to_json(const MembershipReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json item = {{"constraint", v.constraint}, {"family", v.family}, {"margin", v.margin}};
    if (v.matrix) {
      Json rows = Json::array();
      for (SubsetKey s : v.rows) rows.push_back(to_string(s));
      Json m = Json::array();
      for (std::size_t i = 0; i < v.matrix->dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < v.matrix->dim(); ++k) row.push_back(to_string((*v.matrix)(i, k)));
        m.push_back(std::move(row));
      }
      item["rows"] = std::move(rows);
      item["matrix"] = std::move(m);
    }
    violations.push_back(std::move(item));
  }
  return {{"accepted", r.accepted()}, {"checks", r.checks}, {"violations", violations}};
}

Json decomposition_to_json(const DecompositionResult& res, const KnapsackInstance& inst) {
  Json parts = Json::array();
  for (const auto& p : res.parts) {
    Rational value = 0;
    for (int i = 0; i < inst.size(); ++i) value += inst.values()[i] * p.w.at(SubsetKey::singleton(i));
    parts.push_back({{"X", to_string(p.x)}, {"weight", to_string(p.weight)}, {"value", to_string(value)}});
  }
  return {{"S", to_string(res.s)}, {"k", res.k}, {"t", res.t}, {"parts", parts}};
}

}  // namespace liftlab
