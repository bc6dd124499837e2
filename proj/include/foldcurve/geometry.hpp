#pragma once

#include <array>
#include <string>
#include <vector>

#include "foldcurve/curve.hpp"

namespace foldcurve {

/// Candidate with the smallest exact Euclidean distance to x; ties go to the
/// first candidate in sorted segment order.
Segment nearest_segment(const DyadicPoint& x, const std::vector<Segment>& candidates);
/// Nearest segment of the whole lattice.
Segment nearest_grid_segment(const DyadicPoint& x);
/// Exact squared Euclidean distance.
Dyadic squared_distance(const DyadicPoint& x, const Segment& s);

/// Voxels of F_s sampled on a 1/resolution grid in the 1/2^s-scaled frame.
/// Voxel k has center (k + 1/2)/resolution there, i.e. 2^s(k + 1/2)/resolution
/// in lattice units.
struct VoxelSet {
  int s = 0;
  Coord resolution = 1;
  std::vector<std::array<Coord, 3>> voxels;  // sorted
  std::size_t ties = 0;                      // voxels decided by the tie rule
};

/// C_s = Δ^s(C), the curve of C^{s+1} from 0 to 2^{s+1}e1.
Curve fractal_curve(int s);
/// Voxels whose center's nearest lattice segment belongs to `curve`.
VoxelSet voxelize(const Curve& curve, int s, Coord resolution, int jobs = 1);
VoxelSet fractal_voxelize(int s, Coord resolution, int jobs = 1);

std::string curve_to_obj(const Curve& c);
std::string voxels_to_obj(const VoxelSet& v);
/// Dimension 2 only.
std::string curve_to_svg(const Curve& c, int scale = 10);

std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& text);
std::string window_to_json(const Window& w);
Window window_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace foldcurve
