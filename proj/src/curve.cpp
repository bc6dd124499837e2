#include "foldcurve/curve.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace foldcurve {

// ---------------------------------------------------------------- Curve

Curve::Curve(std::vector<Point> path) : path_(std::move(path)) {
  if (path_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a curve needs at least two points");
  const int n = path_.front().dim();
  for (std::size_t j = 0; j + 1 < path_.size(); ++j) {
    if (path_[j + 1].dim() != n) throw Error(ErrorCode::InvalidArgument, "mixed dimensions in path");
    if (!adjacent(path_[j], path_[j + 1]))
      throw Error(ErrorCode::NotAdjacent, "path points " + std::to_string(j) + " and " +
                                              std::to_string(j + 1) + " are not adjacent: " +
                                              path_[j].str() + ", " + path_[j + 1].str());
    if (j >= 1 && path_[j - 1] == path_[j + 1])
      throw Error(ErrorCode::Backtrack, "path backtracks at " + path_[j].str());
  }
}

Curve make_curve(std::vector<Point> path) { return Curve(std::move(path)).canonical(); }

std::vector<Segment> Curve::segments() const {
  std::vector<Segment> out;
  out.reserve(size());
  for (std::size_t j = 0; j + 1 < path_.size(); ++j) out.push_back(segment_between(path_[j], path_[j + 1]));
  return out;
}

std::vector<Direction> Curve::steps() const {
  std::vector<Direction> out;
  out.reserve(size());
  for (std::size_t j = 0; j + 1 < path_.size(); ++j) out.push_back(direction_between(path_[j], path_[j + 1]));
  return out;
}

Curve Curve::reversed() const {
  Curve r = *this;
  std::reverse(r.path_.begin(), r.path_.end());
  return r;
}

bool Curve::is_canonical() const {
  return !std::lexicographical_compare(path_.rbegin(), path_.rend(), path_.begin(), path_.end());
}

Curve Curve::canonical() const { return is_canonical() ? *this : reversed(); }

Curve Curve::starting_at(const Point& p) const {
  if (front() == p) return *this;
  if (back() == p) return reversed();
  throw Error(ErrorCode::InvalidArgument, p.str() + " is not an endpoint of the curve");
}

Curve Curve::transformed(const Isometry& g) const {
  Curve r;
  r.path_.reserve(path_.size());
  for (const auto& p : path_) r.path_.push_back(g.apply(p));
  return r;
}

Curve Curve::translated(const Point& t) const {
  Curve r = *this;
  for (auto& p : r.path_) p += t;
  return r;
}

bool operator==(const Curve& a, const Curve& b) {
  if (a.path_.size() != b.path_.size()) return false;
  if (a.path_ == b.path_) return true;
  return std::equal(a.path_.begin(), a.path_.end(), b.path_.rbegin());
}

bool operator<(const Curve& a, const Curve& b) {
  return a.canonical().path_ < b.canonical().path_;
}

bool self_avoiding(const Curve& c) {
  auto segs = c.segments();
  std::sort(segs.begin(), segs.end());
  return std::adjacent_find(segs.begin(), segs.end()) == segs.end();
}

// ---------------------------------------------------------------- Connexion

Connexion Connexion::make(const Point& at, Direction u, Direction v) {
  if (u == v) throw Error(ErrorCode::InvalidArgument, "connexion needs two distinct directions");
  if (v < u) std::swap(u, v);
  return {at, u, v};
}

Segment Connexion::first() const { return segment_between(at, at + a.vec(at.dim())); }
Segment Connexion::second() const { return segment_between(at, at + b.vec(at.dim())); }

// ---------------------------------------------------------------- Window

Window::Window(int dim, std::vector<Segment> segments, std::vector<Connexion> connexions,
               std::optional<Box> region)
    : dim_(dim), segments_(std::move(segments)), connexions_(std::move(connexions)), region_(std::move(region)) {
  std::sort(segments_.begin(), segments_.end());
  segments_.erase(std::unique(segments_.begin(), segments_.end()), segments_.end());
  std::sort(connexions_.begin(), connexions_.end());
  connexions_.erase(std::unique(connexions_.begin(), connexions_.end()), connexions_.end());
  for (std::size_t i = 0; i < connexions_.size(); ++i) {
    const auto& c = connexions_[i];
    if (!has(c.first()) || !has(c.second()))
      throw Error(ErrorCode::InvalidArgument, "connexion at " + c.at.str() + " references a missing segment");
    // sorted by point, so clashes are within a short run
    for (std::size_t j = i + 1; j < connexions_.size() && connexions_[j].at == c.at; ++j) {
      const auto& d = connexions_[j];
      if (d.a == c.a || d.a == c.b || d.b == c.a || d.b == c.b)
        throw Error(ErrorCode::Branching, "branching connexions at " + c.at.str());
    }
  }
}

bool Window::has(const Segment& s) const { return std::binary_search(segments_.begin(), segments_.end(), s); }

bool Window::has(const Connexion& c) const {
  return std::binary_search(connexions_.begin(), connexions_.end(), c);
}

std::vector<Connexion> Window::connexions_at(const Point& p) const {
  auto lo = std::lower_bound(connexions_.begin(), connexions_.end(), p,
                             [](const Connexion& c, const Point& q) { return c.at < q; });
  std::vector<Connexion> out;
  for (; lo != connexions_.end() && lo->at == p; ++lo) out.push_back(*lo);
  return out;
}

Window Window::transformed(const Isometry& g) const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (const auto& s : segments_) segs.push_back(g.apply(s));
  std::vector<Connexion> cons;
  cons.reserve(connexions_.size());
  for (const auto& c : connexions_) cons.push_back(Connexion::make(g.apply(c.at), g.image(c.a), g.image(c.b)));
  std::optional<Box> reg;
  if (region_) reg = Box{g.apply(region_->center), region_->radius};
  return Window(dim_, std::move(segs), std::move(cons), reg);
}

Window Window::translated(const Point& t) const {
  Window w = *this;
  for (auto& s : w.segments_) s.base += t;
  for (auto& c : w.connexions_) c.at += t;
  if (w.region_) w.region_->center += t;
  return w;
}

Window window_of_curves(const std::vector<Curve>& curves, int dim, const std::optional<Box>& box) {
  std::vector<Segment> segs;
  std::vector<Connexion> cons;
  for (const auto& c : curves) {
    const auto& p = c.path();
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      Segment s = segment_between(p[j], p[j + 1]);
      if (!box || box->touches(s)) segs.push_back(s);
      if (j >= 1 && (!box || box->contains(p[j])))
        cons.push_back(Connexion::make(p[j], direction_between(p[j], p[j - 1]), direction_between(p[j], p[j + 1])));
    }
  }
  return Window(dim, std::move(segs), std::move(cons), box);
}

// ---------------------------------------------------------------- PeriodicCurveSet

PeriodicCurveSet::PeriodicCurveSet(int dim, Coord k, Coord period, std::vector<Curve> reps)
    : dim_(dim), k_(k), period_(period), reps_(std::move(reps)) {
  if (k < 1 || period < 1 || period % k != 0)
    throw Error(ErrorCode::InvalidArgument, "period must be a positive multiple of k");
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    const auto& c = reps_[i];
    if (c.dim() != dim) throw Error(ErrorCode::InvalidArgument, "representative has wrong dimension");
    for (bool rev : {false, true}) {
      const Point& a = rev ? c.back() : c.front();
      const Point& b = rev ? c.front() : c.back();
      if (!index_.emplace(std::make_pair(a.mod(period_), b - a), Entry{i, rev}).second) ++collisions_;
    }
  }
}

std::vector<Curve> PeriodicCurveSet::curves_touching(const Box& box) const {
  std::vector<Curve> out;
  for (const auto& c : reps_) {
    Point lo = c.front(), hi = c.front();
    for (const auto& p : c.path())
      for (int i = 0; i < dim_; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    // translates v with [lo, hi] + period·v meeting the box
    Point vlo(dim_), vhi(dim_);
    for (int i = 0; i < dim_; ++i) {
      vlo[i] = -floor_div(hi[i] - (box.center[i] - box.radius), period_);
      vhi[i] = floor_div(box.center[i] + box.radius - lo[i], period_);
      if (vlo[i] > vhi[i]) goto next_rep;
    }
    {
      Point v = vlo;
      while (true) {
        Point t = v * period_;
        for (const auto& p : c.path())
          if (box.contains(p + t)) {
            out.push_back(c.translated(t));
            break;
          }
        int i = dim_ - 1;
        while (i >= 0 && v[i] == vhi[i]) {
          v[i] = vlo[i];
          --i;
        }
        if (i < 0) break;
        ++v[i];
      }
    }
  next_rep:;
  }
  return out;
}

std::optional<Curve> PeriodicCurveSet::curve_between(const Point& p, const Point& q) const {
  auto it = index_.find(std::make_pair(p.mod(period_), q - p));
  if (it == index_.end()) return std::nullopt;
  const Curve& c = reps_[it->second.rep];
  Curve oriented = it->second.reversed ? c.reversed() : c;
  return oriented.translated(p - oriented.front());
}

bool PeriodicCurveSet::contains(const Curve& c) const {
  auto got = curve_between(c.front(), c.back());
  return got && *got == c;
}

std::vector<Curve> PeriodicCurveSet::normalized_reps() const {
  std::vector<Curve> out;
  out.reserve(reps_.size());
  for (const auto& r : reps_) {
    Curve c = r.canonical();
    out.push_back(c.translated(c.front().mod(period_) - c.front()));
  }
  std::sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) { return a.path() < b.path(); });
  return out;
}

PeriodicCurveSet PeriodicCurveSet::with_period(Coord new_period) const {
  if (new_period % period_ != 0) throw Error(ErrorCode::InvalidArgument, "new period must be a multiple");
  const Coord m = new_period / period_;
  std::vector<Curve> reps;
  Point v(dim_);
  while (true) {
    for (const auto& r : reps_) reps.push_back(r.translated(v * period_));
    int i = dim_ - 1;
    while (i >= 0 && v[i] == m - 1) {
      v[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++v[i];
  }
  return PeriodicCurveSet(dim_, k_, new_period, std::move(reps));
}

PeriodicCurveSet PeriodicCurveSet::transformed(const Isometry& g) const {
  std::vector<Curve> reps;
  reps.reserve(reps_.size());
  for (const auto& r : reps_) reps.push_back(r.transformed(g));
  return PeriodicCurveSet(dim_, k_, period_, std::move(reps));
}

bool operator==(const PeriodicCurveSet& x, const PeriodicCurveSet& y) {
  if (x.dim_ != y.dim_) return false;
  const Coord l = std::lcm(x.period_, y.period_);
  auto a = (l == x.period_ ? x : x.with_period(l)).normalized_reps();
  auto b = (l == y.period_ ? y : y.with_period(l)).normalized_reps();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].path() != b[i].path()) return false;
  return true;
}

// ---------------------------------------------------------------- restriction and comparison

Window restrict(const PeriodicCurveSet& E, const Box& box) {
  return window_of_curves(E.curves_touching(box), E.dim(), box);
}

Window restrict(const Window& w, const Box& box) {
  std::vector<Segment> segs;
  for (const auto& s : w.segments())
    if (box.touches(s)) segs.push_back(s);
  std::vector<Connexion> cons;
  for (const auto& c : w.connexions())
    if (box.contains(c.at)) cons.push_back(c);
  return Window(w.dim(), std::move(segs), std::move(cons), box);
}

std::optional<Isometry> window_match(const Window& w1, const Window& w2, MatchMode mode) {
  if (w1.dim() != w2.dim() || w1.segments().size() != w2.segments().size() ||
      w1.connexions().size() != w2.connexions().size())
    return std::nullopt;
  const int n = w1.dim();
  if (w1.segments().empty()) return Isometry(n);
  auto try_linear = [&](const Window& image, const Isometry& g) -> std::optional<Isometry> {
    Point t = w2.segments().front().base - image.segments().front().base;
    if (image.translated(t) == w2) return g.with_shift(t);
    return std::nullopt;
  };
  if (mode == MatchMode::Translation) return try_linear(w1, Isometry(n));
  for (const auto& g : Isometry::rotations(n))
    if (auto hit = try_linear(w1.transformed(g), g)) return hit;
  return std::nullopt;
}

bool refines(const Window& e, const Window& f) {
  return std::includes(f.segments().begin(), f.segments().end(), e.segments().begin(), e.segments().end()) &&
         std::includes(f.connexions().begin(), f.connexions().end(), e.connexions().begin(), e.connexions().end());
}

namespace {

std::vector<Segment> target_segments(const Box& box, CoverMode mode) {
  return mode == CoverMode::Touching ? segments_touching(box) : segments_inside(box);
}

}  // namespace

CoverReport covers(const std::vector<Curve>& curves, const Box& box, CoverMode mode) {
  auto target = target_segments(box, mode);
  std::unordered_map<Segment, int, SegmentHash> count;
  for (const auto& s : target) count.emplace(s, 0);
  for (const auto& c : curves)
    for (const auto& s : c.segments())
      if (auto it = count.find(s); it != count.end()) ++it->second;
  CoverReport r;
  for (const auto& s : target) {
    int k = count[s];
    if (k == 0) r.missing.push_back(s);
    if (k > 1) r.duplicates.push_back(s);
  }
  r.ok = r.missing.empty() && r.duplicates.empty();
  return r;
}

CoverReport covers(const PeriodicCurveSet& E, const Box& box, CoverMode mode) {
  return covers(E.curves_touching(box), box, mode);
}

CoverReport covers(const Window& w, const Box& box, CoverMode mode) {
  CoverReport r;
  for (const auto& s : target_segments(box, mode))
    if (!w.has(s)) r.missing.push_back(s);
  r.ok = r.missing.empty();
  return r;
}

std::vector<Curve> decompose(const Window& w) {
  const auto& segs = w.segments();
  const int n = w.dim();
  // (point, direction index) -> partner direction
  std::map<std::pair<Point, int>, Direction> partner;
  for (const auto& c : w.connexions()) {
    partner.emplace(std::make_pair(c.at, c.a.index()), c.b);
    partner.emplace(std::make_pair(c.at, c.b.index()), c.a);
  }
  auto seg_index = [&](const Segment& s) {
    return static_cast<std::size_t>(std::lower_bound(segs.begin(), segs.end(), s) - segs.begin());
  };
  std::vector<char> used(segs.size(), 0);
  std::vector<Curve> out;

  // Follow connexions from `at`, having arrived along direction `back` (pointing to the previous point).
  auto extend = [&](std::vector<Point>& path, std::size_t start) {
    while (true) {
      const Point at = path.back();
      const Direction back = direction_between(at, path[path.size() - 2]);
      auto it = partner.find({at, back.index()});
      if (it == partner.end()) return;
      Point next = at + it->second.vec(n);
      std::size_t idx = seg_index(segment_between(at, next));
      if (idx == start || used[idx])
        throw Error(ErrorCode::Precondition, "closed curve through " + at.str() + " cannot be decomposed");
      used[idx] = 1;
      path.push_back(next);
    }
  };

  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    std::vector<Point> fwd{segs[i].base, segs[i].tip()};
    extend(fwd, i);
    std::vector<Point> bwd{segs[i].tip(), segs[i].base};
    extend(bwd, i);
    std::vector<Point> path(bwd.rbegin(), bwd.rend() - 2);
    path.insert(path.end(), fwd.begin(), fwd.end());
    out.push_back(make_curve(std::move(path)));
  }
  std::sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) { return a.path() < b.path(); });
  return out;
}

}  // namespace foldcurve
