#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foldcurve/lattice.hpp"

namespace foldcurve {

/// A finite lattice curve stored as its point path.  The stored orientation is
/// kept (constructions need it) but equality ignores it.
class Curve {
 public:
  Curve() = default;
  /// Validates adjacency and the no-backtrack condition; keeps orientation.
  explicit Curve(std::vector<Point> path);

  const std::vector<Point>& path() const { return path_; }
  int dim() const { return path_.empty() ? 0 : path_.front().dim(); }
  std::size_t size() const { return path_.empty() ? 0 : path_.size() - 1; }
  const Point& front() const { return path_.front(); }
  const Point& back() const { return path_.back(); }

  std::vector<Segment> segments() const;
  std::vector<Direction> steps() const;
  Curve reversed() const;
  /// The orientation whose point sequence is lexicographically smaller.
  Curve canonical() const;
  bool is_canonical() const;
  /// Same curve re-oriented so that it starts at p (p must be an endpoint).
  Curve starting_at(const Point& p) const;

  Curve transformed(const Isometry& g) const;
  Curve translated(const Point& t) const;

  friend bool operator==(const Curve& a, const Curve& b);
  /// Ordering of canonical forms.
  friend bool operator<(const Curve& a, const Curve& b);

 private:
  std::vector<Point> path_;
};

/// Validated curve in canonical orientation.
Curve make_curve(std::vector<Point> path);

bool self_avoiding(const Curve& c);

/// Two consecutive segments [at, at+a], [at, at+b] of one curve; a < b.
struct Connexion {
  Point at;
  Direction a;
  Direction b;

  static Connexion make(const Point& at, Direction u, Direction v);
  Segment first() const;
  Segment second() const;

  friend auto operator<=>(const Connexion& x, const Connexion& y) {
    if (auto c = x.at <=> y.at; c != 0) return c;
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
  friend bool operator==(const Connexion&, const Connexion&) = default;
};

/// A finite configuration of segments plus the connexions between them.
/// Segments and connexions are kept sorted and unique.
class Window {
 public:
  Window() = default;
  explicit Window(int dim) : dim_(dim) {}
  Window(int dim, std::vector<Segment> segments, std::vector<Connexion> connexions,
         std::optional<Box> region = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Connexion>& connexions() const { return connexions_; }
  const std::optional<Box>& region() const { return region_; }
  void set_region(std::optional<Box> b) { region_ = std::move(b); }

  bool has(const Segment& s) const;
  bool has(const Connexion& c) const;
  /// Connexions at a given point (0..n of them).
  std::vector<Connexion> connexions_at(const Point& p) const;

  Window transformed(const Isometry& g) const;
  Window translated(const Point& t) const;

  /// Region is bookkeeping only and does not take part in equality.
  friend bool operator==(const Window& x, const Window& y) {
    return x.dim_ == y.dim_ && x.segments_ == y.segments_ && x.connexions_ == y.connexions_;
  }

 private:
  int dim_ = 0;
  std::vector<Segment> segments_;
  std::vector<Connexion> connexions_;
  std::optional<Box> region_;
};

/// Segments and interior connexions of a curve list; with a box, restricted to it.
Window window_of_curves(const std::vector<Curve>& curves, int dim,
                        const std::optional<Box>& box = std::nullopt);

/// The curve set {period·v + C : v ∈ Z^n, C ∈ reps}.  k is the grid on which
/// the curve endpoints sit.
class PeriodicCurveSet {
 public:
  PeriodicCurveSet() = default;
  PeriodicCurveSet(int dim, Coord k, Coord period, std::vector<Curve> reps);

  int dim() const { return dim_; }
  Coord k() const { return k_; }
  Coord period() const { return period_; }
  const std::vector<Curve>& reps() const { return reps_; }

  /// Every translate of a representative sharing a point with the box.
  std::vector<Curve> curves_touching(const Box& box) const;
  /// The curve of the set with endpoints p and q, oriented from p.
  std::optional<Curve> curve_between(const Point& p, const Point& q) const;
  bool contains(const Curve& c) const;
  /// Representatives translated so the canonical start lies in [0, period)^n,
  /// in sorted order.
  std::vector<Curve> normalized_reps() const;
  /// Same set with a multiple of the period; representatives replicated.
  PeriodicCurveSet with_period(Coord new_period) const;
  PeriodicCurveSet transformed(const Isometry& g) const;
  /// Number of representative orientations whose (start class, chord) key was
  /// already taken; nonzero means endpoints do not determine curves.
  std::size_t endpoint_collisions() const { return collisions_; }

  /// Equal as infinite sets (periods may differ).
  friend bool operator==(const PeriodicCurveSet& x, const PeriodicCurveSet& y);

 private:
  struct Entry {
    std::size_t rep;
    bool reversed;
  };
  int dim_ = 3;
  Coord k_ = 1;
  Coord period_ = 1;
  std::vector<Curve> reps_;
  // (start mod period, end - start) -> representative
  std::map<std::pair<Point, Point>, Entry> index_;
  std::size_t collisions_ = 0;
};

Window restrict(const PeriodicCurveSet& E, const Box& box);
Window restrict(const Window& W, const Box& box);

enum class MatchMode { Translation, PositiveIsometry };

/// First transform (fixed scan order) mapping W1 exactly onto W2.
std::optional<Isometry> window_match(const Window& w1, const Window& w2, MatchMode mode);

/// E ≺ F on windows.
bool refines(const Window& e, const Window& f);

enum class CoverMode {
  Touching,  // every segment meeting the closed box
  Contained  // only segments lying inside the box
};

struct CoverReport {
  bool ok = true;
  std::vector<Segment> missing;
  std::vector<Segment> duplicates;
};

CoverReport covers(const std::vector<Curve>& curves, const Box& box,
                   CoverMode mode = CoverMode::Touching);
CoverReport covers(const PeriodicCurveSet& E, const Box& box,
                   CoverMode mode = CoverMode::Touching);
/// Windows cannot hold duplicates, so only missing segments are reported.
CoverReport covers(const Window& w, const Box& box, CoverMode mode = CoverMode::Touching);

/// Splits a window into the maximal curves its connexions describe, sorted.
std::vector<Curve> decompose(const Window& w);

}  // namespace foldcurve
