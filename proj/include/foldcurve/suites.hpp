#pragma once

#include <functional>
#include <string>
#include <vector>

#include "foldcurve/report.hpp"

namespace foldcurve {

struct Criterion {
  int id = 0;
  std::string title;
  double budget_seconds = 0;
  /// heavy = run the exhaustive variant where one exists.
  std::function<Report(int jobs, bool heavy)> run;
};

/// The twenty acceptance checks, in order.
const std::vector<Criterion>& acceptance_criteria();

/// "core", "paper" or "heavy".
std::vector<Report> run_suite(const std::string& suite, int jobs);
bool known_suite(const std::string& suite);

}  // namespace foldcurve
