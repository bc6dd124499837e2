#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "foldcurve/analysis.hpp"
#include "foldcurve/generators.hpp"
#include "foldcurve/geometry.hpp"

using namespace foldcurve;

namespace {

// Exact squared distance times 4^e, with every coordinate given as num/2^e.
Coord scaled_sq_dist(const std::array<Coord, 3>& num, int e, const Segment& s) {
  Coord sum = 0;
  for (int i = 0; i < 3; ++i) {
    Coord lo = s.base[i] << e;
    Coord hi = (s.base[i] + (i == s.axis ? 1 : 0)) << e;
    Coord v = num[static_cast<std::size_t>(i)];
    Coord d = v < lo ? lo - v : (v > hi ? v - hi : 0);
    sum += d * d;
  }
  return sum;
}

Segment brute_nearest(const std::array<Coord, 3>& num, int e) {
  Point c{num[0] >> e, num[1] >> e, num[2] >> e};
  std::optional<Segment> best;
  Coord bd = 0;
  for (Coord x = c[0] - 4; x <= c[0] + 3; ++x)
    for (Coord y = c[1] - 4; y <= c[1] + 3; ++y)
      for (Coord z = c[2] - 4; z <= c[2] + 3; ++z)
        for (int a = 0; a < 3; ++a) {
          Segment s{Point{x, y, z}, a};
          Coord d = scaled_sq_dist(num, e, s);
          if (!best || d < bd || (d == bd && s < *best)) {
            best = s;
            bd = d;
          }
        }
  return *best;
}

DyadicPoint dyadic(const std::array<Coord, 3>& num, int e) {
  return DyadicPoint{Dyadic::make(num[0], e), Dyadic::make(num[1], e), Dyadic::make(num[2], e)};
}

}  // namespace

TEST_CASE("nearest segment basics") {
  auto cands = segments_touching(Box{Point{0, 0, 0}, 2});
  CHECK(nearest_segment(DyadicPoint{Dyadic::make(1, 1), 0, 0}, cands) == Segment{Point{0, 0, 0}, 0});
  // equidistant from two parallel segments: the smaller one wins
  std::vector<Segment> two{{Point{0, 1, 0}, 0}, {Point{0, 0, 0}, 0}};
  CHECK(nearest_segment(DyadicPoint{Dyadic::make(1, 1), Dyadic::make(1, 1), 0}, two) == Segment{Point{0, 0, 0}, 0});
  CHECK(squared_distance(DyadicPoint(Point{0, 0, 3}), Segment{Point{0, 0, 0}, 0}) == Dyadic(9));
}

TEST_CASE("nearest segment matches brute force on random dyadic points") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> ex(0, 5);
  for (int i = 0; i < 1000; ++i) {
    int e = ex(rng);
    std::uniform_int_distribution<Coord> c(-(Coord{8} << e), Coord{8} << e);
    std::array<Coord, 3> num{c(rng), c(rng), c(rng)};
    DyadicPoint x = dyadic(num, e);
    Segment want = brute_nearest(num, e);
    CHECK(nearest_grid_segment(x) == want);
    Point f{num[0] >> e, num[1] >> e, num[2] >> e};
    CHECK(nearest_segment(x, segments_touching(Box{f, 3})) == want);
  }
}

TEST_CASE("voxels of the first approximant") {
  VoxelSet v = fractal_voxelize(0, 4, 1);
  // regression anchor, cross-checked below against a brute-force classification
  CHECK(v.voxels.size() == 168);
  CHECK(std::is_sorted(v.voxels.begin(), v.voxels.end()));
  Curve c = fractal_curve(0);
  std::set<Segment> mine;
  for (const auto& s : c.segments()) mine.insert(s);
  std::vector<std::array<Coord, 3>> brute;
  for (Coord i = -12; i <= 16; ++i)
    for (Coord j = -12; j <= 12; ++j)
      for (Coord k = -12; k <= 12; ++k) {
        // center (k + 1/2)/4 = (2k + 1)/8
        std::array<Coord, 3> num{2 * i + 1, 2 * j + 1, 2 * k + 1};
        if (mine.count(brute_nearest(num, 3))) brute.push_back({i, j, k});
      }
  CHECK(brute == v.voxels);
  for (int jobs : {2, 3, 5}) {
    VoxelSet w = fractal_voxelize(0, 4, jobs);
    CHECK(w.voxels == v.voxels);
    CHECK(w.ties == v.ties);
  }
}

TEST_CASE("voronoi cells of single segments partition the voxels") {
  Curve c = fractal_curve(0);
  VoxelSet all = fractal_voxelize(0, 4, 1);
  std::vector<std::array<Coord, 3>> merged;
  for (std::size_t i = 0; i + 1 < c.path().size(); ++i) {
    VoxelSet one = voxelize(Curve(std::vector<Point>{c.path()[i], c.path()[i + 1]}), 0, 4, 1);
    merged.insert(merged.end(), one.voxels.begin(), one.voxels.end());
  }
  std::sort(merged.begin(), merged.end());
  CHECK(std::adjacent_find(merged.begin(), merged.end()) == merged.end());
  CHECK(merged == all.voxels);
}

TEST_CASE("half-scale shadow of the first piece") {
  const Coord res = 4;
  auto split = autosimilarity_split(1);
  REQUIRE(split.piece_maps[0]);
  const Isometry& g = *split.piece_maps[0];
  Curve big = curve_of_power(2, Point{0, 0, 0}, Direction{0, 1});
  std::vector<Point> run(big.path().begin(), big.path().begin() + 9);
  VoxelSet piece = voxelize(Curve(run), 1, 2 * res, 1);
  VoxelSet base = fractal_voxelize(0, res, 1);
  // voxel k has center (k + 1/2)/res in lattice units on both sides
  std::set<std::array<Coord, 3>> image;
  for (const auto& k : base.voxels) {
    Point twice{2 * k[0] + 1, 2 * k[1] + 1, 2 * k[2] + 1};
    Point m = g.apply_linear(twice) + g.shift() * (2 * res);
    image.insert({(m[0] - 1) / 2, (m[1] - 1) / 2, (m[2] - 1) / 2});
  }
  std::set<std::array<Coord, 3>> got(piece.voxels.begin(), piece.voxels.end());
  std::size_t diff = 0;
  for (const auto& k : got) diff += image.count(k) ? 0 : 1;
  for (const auto& k : image) diff += got.count(k) ? 0 : 1;
  CHECK(diff <= base.ties + piece.ties);
  CHECK(got.size() > 100);
}

TEST_CASE("exports") {
  Curve seg(std::vector<Point>{Point{0, 0, 0}, Point{1, 0, 0}});
  std::string obj = curve_to_obj(seg);
  CHECK(std::count(obj.begin(), obj.end(), '\n') == 4);
  CHECK(obj.find("v 0 0 0\nv 1 0 0\nl 1 2\n") != std::string::npos);

  std::string svg = curve_to_svg(positive_folding(6));
  std::size_t moves = 0;
  for (std::size_t p = svg.find(" L "); p != std::string::npos; p = svg.find(" L ", p + 1)) ++moves;
  CHECK(moves == 64);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK_THROWS_AS(curve_to_svg(seg), Error);

  VoxelSet v = fractal_voxelize(0, 2, 1);
  std::string vobj = voxels_to_obj(v);
  std::size_t faces = 0, verts = 0;
  std::istringstream lines(vobj);
  for (std::string line; std::getline(lines, line);) {
    faces += line.rfind("f ", 0) == 0 ? 1 : 0;
    verts += line.rfind("v ", 0) == 0 ? 1 : 0;
  }
  CHECK(faces == 6 * v.voxels.size());
  CHECK(verts == 8 * v.voxels.size());
  CHECK(vobj == voxels_to_obj(fractal_voxelize(0, 2, 4)));
}

TEST_CASE("json round trips") {
  Curve c = curve_of_power(2, Point{0, 0, 0}, Direction{0, -1});
  std::string j = curve_to_json(c);
  CHECK(j.rfind("{\"dim\":3,\"points\":[[0,0,0],", 0) == 0);
  Curve back = curve_from_json(j);
  CHECK(back.path() == c.path());
  CHECK(curve_to_json(back) == j);

  Window w = power_window(2, Box{Point{0, 0, 0}, 2});
  Window wb = window_from_json(window_to_json(w));
  CHECK(wb == w);
  CHECK(window_to_json(wb) == window_to_json(w));

  CHECK_THROWS_AS(curve_from_json("{\"dim\":3}"), Error);
  CHECK_THROWS_AS(curve_from_json("not json"), Error);
  CHECK_THROWS_AS(curve_from_json("{\"dim\":3,\"points\":[[0,0,0],[2,0,0]]}"), Error);
}
