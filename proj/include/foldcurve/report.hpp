#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace foldcurve {

/// Outcome of one mechanical check.  Reports carry no timings so that
/// identical runs serialize to identical bytes.
struct Report {
  std::string check;
  bool pass = true;
  std::vector<std::string> witnesses;
  std::vector<std::pair<std::string, std::int64_t>> census;

  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  void fail(std::string witness) {
    pass = false;
    witnesses.push_back(std::move(witness));
  }
  void note(std::string witness) { witnesses.push_back(std::move(witness)); }
  void count(std::string key, std::int64_t value) { census.emplace_back(std::move(key), value); }
  /// Records `ok` and, when false, the witness.
  void expect(bool ok, std::string witness) {
    if (!ok) fail(std::move(witness));
  }
};

std::string to_json(const Report& r, int indent = 2);
std::string to_json(const std::string& suite, const std::vector<Report>& reports, int indent = 2);

}  // namespace foldcurve
