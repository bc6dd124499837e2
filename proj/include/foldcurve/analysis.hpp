#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foldcurve/convolution.hpp"
#include "foldcurve/curve.hpp"
#include "foldcurve/report.hpp"

namespace foldcurve {

/// A bijection of the 2n directions.
class DirectionPermutation {
 public:
  DirectionPermutation() = default;
  explicit DirectionPermutation(int dim);  // identity
  /// images[i] is the image of Direction::from_index(i).
  DirectionPermutation(int dim, const std::vector<Direction>& images);

  int dim() const { return dim_; }
  Direction operator()(Direction d) const { return Direction::from_index(map_[static_cast<std::size_t>(d.index())]); }
  DirectionPermutation inverse() const;
  /// (*this) ∘ other
  DirectionPermutation compose(const DirectionPermutation& other) const;
  bool is_identity() const;
  /// "e1→ē2, ē1→e3, ..." in index order.
  std::string str() const;

  friend bool operator==(const DirectionPermutation&, const DirectionPermutation&) = default;

 private:
  int dim_ = 0;
  std::array<std::int8_t, 2 * kMaxDim> map_{};
};

/// A perfect matching on the 2n directions.
class PairingRelation {
 public:
  PairingRelation() = default;
  PairingRelation(int dim, const std::vector<std::pair<Direction, Direction>>& pairs);

  int dim() const { return dim_; }
  Direction partner(Direction d) const { return Direction::from_index(partner_[static_cast<std::size_t>(d.index())]); }
  bool related(Direction u, Direction v) const { return partner(u) == v; }
  /// Pairs listed by scanning e1, e2, e3, ē1, ē2, ē3.
  std::vector<std::pair<Direction, Direction>> pairs() const;
  /// ⟨(e1,ē2),(e2,ē1),(e3,ē3)⟩
  std::string str() const;
  /// Image {(g u, g v)}.
  PairingRelation image(const DirectionPermutation& g) const;

  friend bool operator==(const PairingRelation&, const PairingRelation&) = default;
  friend auto operator<=>(const PairingRelation& a, const PairingRelation& b) { return a.partner_ <=> b.partner_; }

 private:
  int dim_ = 0;
  std::array<std::int8_t, 2 * kMaxDim> partner_{};
};

/// Parses "e1:-e2,e2:-e1,e3:-e3" style or signed codes "1:-2,2:-1,3:-3".
PairingRelation parse_pairing(const std::string& text);

/// The 15 matchings of dimension 3 in a fixed order; code(R) is the position.
const std::vector<PairingRelation>& all_matchings();
int matching_code(const PairingRelation& r);

/// θ: the permutation read at 0.
const DirectionPermutation& theta();
DirectionPermutation theta_at(const Point& x);
PairingRelation conjugate_theta(const PairingRelation& r);

/// R_x for x ≠ 0.
PairingRelation pairing_at(const Point& x);
/// matching_code(pairing_at(x)), with a cached table for the base residues.
int pairing_code(const Point& x);

/// The 56 points of {−2,0,2,4}³ − {0,4}³ in lexicographic order.
const std::vector<Point>& witness_points();

struct PResult {
  bool holds = false;
  std::optional<Point> witness;
  bool via_theta = false;  // the witness realizes R^θ rather than R
};
PResult satisfies_P(const PairingRelation& r);
Report classify_pairings();

/// Visits per point along the path.
std::map<Point, int> multiplicities(const Curve& c);
int max_multiplicity(const Curve& c);

/// Curves of C^s with endpoint 0.
std::vector<Curve> d_set(int s);
int coverage_radius(int s, CoverMode mode = CoverMode::Touching);
Coord complement_distance(int s);

/// A finite view of Ĉ_R (grid < 0) or of C^s (grid = s ≥ 0): every segment is
/// present, connexions are R_p, with R (or nothing) at 0 and nothing on the
/// 2^s grid for C^s.
struct Approximant {
  int grid = -1;
  std::optional<PairingRelation> at_origin;

  /// -1 for "no connexion", otherwise a matching code.
  int code(const Point& p) const;
  Window window(const Box& box) const;
};

struct ScanHit {
  Point y;
  Isometry match;  // the translation found by window_match
};
/// First y (order: |y|∞ then lexicographic) outside P_{x,h} with
/// restrict(E, P_{y,h}) a translate of restrict(E, P_{x,h}).
std::optional<ScanHit> property_C_scan(const Approximant& E, const Point& x, Coord h, Coord bound, int jobs = 1);
Report aperiodicity_scan(const Approximant& E, Coord h, Coord w_bound);

struct AutosimilarityResult {
  int s = 0;
  bool ok = true;
  std::vector<std::optional<Isometry>> piece_maps;  // per run
  bool disjoint = true;
  bool consecutive = true;
};
AutosimilarityResult autosimilarity_split(int s);

Report lemma26_check();

struct CurveBound {
  int bound = 0;
  int vertices = 0, edge_midpoints = 0, face_centers = 0;
  int outgoing = 0;
};
CurveBound max_curve_bound(const Point& x = Point{0, 0, 0});

/// Lemma 2.2 on curves of C^4: chords from 16Z³ ∩ [0,256)³ along e1, e2, e3.
/// `stride` > 1 samples every stride-th chord.
Report lemma22_check(std::size_t stride, int jobs = 1);

/// Largest h so that the curve covers P_{x,h} for some x on `grid`, with x.
struct CubeCover {
  Point center;
  Coord radius = 0;
};
std::optional<CubeCover> best_covered_cube(const Curve& c, Coord grid = 1);
/// Streams the curve of C^s from x along u and finds a covered P_{y,1}.
std::optional<CubeCover> covered_cube_of_power(int s, const Point& x, Direction u, Coord grid);

struct GrowLevel {
  int power = 0;
  Point chord_start;
  Direction dir;
  Point shift;  // translation applied to the previous level
  Box cube;
};
struct GrowResult {
  std::vector<GrowLevel> levels;
  bool exhausted = false;
  std::string notice;
};
GrowResult grow_single_curve(int levels, int s_cap, int jobs = 1);

struct FunnelResult {
  bool found = false;
  int n = 0;
  Point x;
  bool contraction_ok = true;
  std::vector<std::string> log;
};
FunnelResult gamma_funnel_check(const std::vector<Curve>& D, int n_cap);

/// Exact Chebyshev distance from a dyadic point to the union of the curves.
Dyadic distance_to_curves(const DyadicPoint& z, const std::vector<Curve>& D);

}  // namespace foldcurve
