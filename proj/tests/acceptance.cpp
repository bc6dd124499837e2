// Runs every acceptance criterion once and prints one PASS/FAIL line for each.
//
//   acceptance [--jobs N] [--expect-fail 13,...]
//
// Without --expect-fail the exit status is 0 iff everything passed.  With it,
// the status is 0 iff the failing set is exactly the listed one, so a known
// open item stays visible in the output without hiding new regressions.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "foldcurve/lattice.hpp"
#include "foldcurve/suites.hpp"

using namespace foldcurve;

int main(int argc, char** argv) {
  int jobs = 1;
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--jobs" && i + 1 < argc) {
      jobs = std::atoi(argv[++i]);
    } else if (a == "--expect-fail" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string item; std::getline(ss, item, ',');) expected.insert(std::atoi(item.c_str()));
    } else {
      std::cerr << "usage: acceptance [--jobs N] [--expect-fail id,...]\n";
      return 2;
    }
  }

  std::set<int> failed;
  for (const auto& c : acceptance_criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    std::string error;
    try {
      r = c.run(jobs, true);
    } catch (const std::exception& e) {
      r.pass = false;
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = r.pass && error.empty() && secs <= c.budget_seconds;
    std::string detail;
    if (!error.empty()) detail = "exception: " + error;
    else if (!r.pass) {
      for (const auto& w : r.witnesses)
        if (detail.size() < 160) detail += (detail.empty() ? "" : "; ") + w;
    } else if (secs > c.budget_seconds)
      detail = "over the " + std::to_string(c.budget_seconds) + " s budget";
    if (!pass) failed.insert(c.id);

    char head[64];
    std::snprintf(head, sizeof head, "%s %2d  [%7.2fs]  ", pass ? "PASS" : "FAIL", c.id, secs);
    std::cout << head << c.title;
    if (!pass) std::cout << "  -- " << detail;
    std::cout << std::endl;
  }
  std::cout << (acceptance_criteria().size() - failed.size()) << "/" << acceptance_criteria().size() << " passed\n";
  if (!expected.empty()) {
    if (failed == expected) {
      std::cout << "failing set matches the expected open items\n";
      return 0;
    }
    std::cout << "failing set differs from the expected open items\n";
    return 1;
  }
  return failed.empty() ? 0 : 1;
}
