#include "foldcurve/report.hpp"

#include <json.hpp>

namespace foldcurve {

namespace {

nlohmann::ordered_json encode(const Report& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["witnesses"] = r.witnesses;
  nlohmann::ordered_json census = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.census) census[k] = v;
  j["census"] = census;
  return j;
}

}  // namespace

std::string to_json(const Report& r, int indent) { return encode(r).dump(indent); }

std::string to_json(const std::string& suite, const std::vector<Report>& reports, int indent) {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  bool all = true;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    arr.push_back(encode(r));
  }
  j["pass"] = all;
  j["checks"] = arr;
  return j.dump(indent);
}

}  // namespace foldcurve
