#pragma once

#include <array>
#include <optional>
#include <vector>

#include "foldcurve/curve.hpp"
#include "foldcurve/report.hpp"

namespace foldcurve {

struct Block {
  Point center;
  std::vector<Curve> curves;  // oriented from the center
};

/// 0 or 1 for points of 2Z³ (parity of (x+y+z)/2); empty elsewhere.
std::optional<int> endpoint_type(const Point& x);

/// The 24 embedded curves, four blocks of six, oriented from the block center.
const std::vector<Curve>& block_curves();
const std::vector<Block>& blocks();

/// The 4-periodic covering built from the four blocks, (k, period) = (2, 4).
const PeriodicCurveSet& covering_C();

/// Step directions of the curve of C from x to x + 2u (x ∈ 2Z³).
const std::array<Direction, 8>& lookup_steps(const Point& x, Direction u);
Curve lookup_curve(const Point& x, Direction u);

struct CompletionResult {
  std::vector<PeriodicCurveSet> coverings;
  std::size_t distinct_images = 0;   // rotation images of B_0
  std::size_t stabilizer_order = 0;  // rotations fixing B_0
  std::size_t placements_tried = 0;
  /// Per covering: whether the three edges at (1,1,1) are each covered by
  /// two segments of a single block.
  std::vector<bool> edge_condition;
};

/// Places rotated copies of B_0 at (2,2,0), (2,0,2), (0,2,2) and keeps the
/// placements whose four blocks hit every segment class mod 4 once.
CompletionResult completion_search(int jobs = 1);

Report symmetry_report();

}  // namespace foldcurve
