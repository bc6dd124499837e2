#include "foldcurve/convolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace foldcurve {

PeriodicCurveSet identity_covering(int dim) {
  std::vector<Curve> reps;
  for (int i = 0; i < dim; ++i) reps.emplace_back(std::vector<Point>{Point(dim), Point::unit(dim, i)});
  return PeriodicCurveSet(dim, 1, 1, std::move(reps));
}

Report check_H(const PeriodicCurveSet& A, Coord k, Coord l) {
  Report r("check_H(" + std::to_string(k) + "," + std::to_string(l) + ")");
  const int n = A.dim();
  if (k < 1 || l % k != 0) {
    r.fail("l is not a multiple of k");
    return r;
  }
  r.expect(A.endpoint_collisions() == 0, "two representatives share endpoints");

  // l-translates of A are A
  for (const auto& c : A.reps())
    for (int i = 0; i < n; ++i)
      if (!A.contains(c.translated(Point::unit(n, i) * l))) {
        r.fail("curve " + c.front().str() + "->" + c.back().str() + " moved by " +
               (Point::unit(n, i) * l).str() + " is not in the set");
        goto periodic_done;
      }
periodic_done:

  const Box box{Point(n), 2 * l};
  const auto curves = A.curves_touching(box);
  auto cov = covers(curves, box);
  if (!cov.missing.empty()) r.fail("segment " + cov.missing.front().str() + " is not covered");
  if (!cov.duplicates.empty()) r.fail("segment " + cov.duplicates.front().str() + " is covered twice");

  std::map<std::pair<Point, Point>, int> joins;
  for (const auto& c : curves) {
    Point a = std::min(c.front(), c.back()), b = std::max(c.front(), c.back());
    Point d = b - a;
    bool ok = a.divisible_by(k) && d.norm_inf() == k;
    int nonzero = 0;
    for (int i = 0; i < n; ++i) nonzero += d[i] != 0;
    if (!ok || nonzero != 1) {
      r.fail("curve endpoints " + a.str() + ", " + b.str() + " are not k-grid neighbours");
      break;
    }
    ++joins[{a, b}];
  }
  std::int64_t pairs = 0;
  for (const auto& x : Box{Point(n), 2 * l / k}.points()) {
    Point a = x * k;
    for (int i = 0; i < n; ++i) {
      Point b = a + Point::unit(n, i) * k;
      if (!box.contains(b)) continue;
      ++pairs;
      int cnt = joins.count({a, b}) ? joins[{a, b}] : 0;
      if (cnt != 1) {
        r.fail(a.str() + " and " + b.str() + " are joined by " + std::to_string(cnt) + " curves");
        goto pairs_done;
      }
    }
  }
pairs_done:
  r.count("curves_in_test_box", static_cast<std::int64_t>(curves.size()));
  r.count("grid_pairs", pairs);
  return r;
}

std::vector<Curve> convolve(const PeriodicCurveSet& A, const std::vector<Curve>& B) {
  if (A.endpoint_collisions() != 0) throw Error(ErrorCode::Precondition, "left factor does not satisfy (H)");
  std::unordered_set<Segment, SegmentHash> seen;
  for (const auto& b : B)
    for (const auto& s : b.segments())
      if (!seen.insert(s).second)
        throw Error(ErrorCode::Precondition, "right factor reuses segment " + s.str());
  const Coord k = A.k();
  std::vector<Curve> out;
  out.reserve(B.size());
  for (const auto& b : B) {
    const auto& p = b.path();
    std::vector<Point> path{p.front() * k};
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      auto piece = A.curve_between(p[j] * k, p[j + 1] * k);
      if (!piece)
        throw Error(ErrorCode::Precondition, "no curve of the left factor joins " + (p[j] * k).str() + " and " +
                                                 (p[j + 1] * k).str());
      path.insert(path.end(), piece->path().begin() + 1, piece->path().end());
    }
    out.emplace_back(std::move(path));
  }
  return out;
}

PeriodicCurveSet convolve(const PeriodicCurveSet& A, const PeriodicCurveSet& B) {
  if (A.dim() != B.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const Coord period = std::lcm(A.k() * B.period(), A.period());
  const auto spread = B.with_period(period / A.k());
  return PeriodicCurveSet(A.dim(), A.k() * B.k(), period, convolve(A, spread.reps()));
}

PeriodicCurveSet power(const PeriodicCurveSet& A, int s) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  PeriodicCurveSet acc = identity_covering(A.dim());
  for (int i = 0; i < s; ++i) acc = convolve(A, acc);
  return acc;
}

Coord chord_box_distance(const Point& x, Direction u, Coord len, const Box& box) {
  Coord best = 0;
  for (int i = 0; i < x.dim(); ++i) {
    Coord lo = x[i], hi = x[i];
    if (i == u.axis) (u.sign > 0 ? hi : lo) += u.sign * len;
    Coord blo = box.center[i] - box.radius, bhi = box.center[i] + box.radius;
    Coord gap = lo > bhi ? lo - bhi : (blo > hi ? blo - hi : 0);
    best = std::max(best, gap);
  }
  return best;
}

namespace {

struct PathSink {
  std::vector<Point>* out;
  void point(const Point& p) { out->push_back(p); }
  void gap() {}
};

// Collects segments touching the box and connexions at box points.
struct WindowSink {
  const Box& box;
  std::vector<Segment>& segs;
  std::vector<Connexion>& cons;
  Point prev2, prev;
  int run = 0;  // number of valid trailing points

  void start(const Point& p) {
    prev = p;
    run = 1;
  }
  void gap() { run = 0; }
  void point(const Point& p) {
    if (run >= 1) {
      Segment s = segment_between(prev, p);
      if (box.touches(s)) segs.push_back(s);
      if (run >= 2 && box.contains(prev))
        cons.push_back(Connexion::make(prev, direction_between(prev, prev2), direction_between(prev, p)));
    }
    prev2 = prev;
    prev = p;
    ++run;
  }
};

}  // namespace

Curve curve_of_power(int s, const Point& x, Direction u) {
  if (x.dim() != 3) throw Error(ErrorCode::InvalidArgument, "curve_of_power works in dimension 3");
  std::vector<Point> path{x};
  path.reserve((std::size_t{1} << (3 * s)) + 1);
  PathSink sink{&path};
  walk_power(s, x, u, sink);
  return Curve(std::move(path));
}

Window power_window(int s, const Box& box) {
  if (box.center.dim() != 3) throw Error(ErrorCode::InvalidArgument, "power_window works in dimension 3");
  const Coord g = Coord{1} << s;
  std::vector<Segment> segs;
  std::vector<Connexion> cons;
  // chord bases whose chord can come within g-1 of the box
  Point lo(3), hi(3);
  for (int i = 0; i < 3; ++i) {
    lo[i] = floor_div(box.center[i] - box.radius - g - (g - 1), g);
    hi[i] = floor_div(box.center[i] + box.radius + (g - 1), g);
  }
  for (Coord a = lo[0]; a <= hi[0]; ++a)
    for (Coord b = lo[1]; b <= hi[1]; ++b)
      for (Coord c = lo[2]; c <= hi[2]; ++c) {
        Point x{a * g, b * g, c * g};
        for (int axis = 0; axis < 3; ++axis) {
          Direction u{axis, 1};
          if (chord_box_distance(x, u, g, box) > g - 1) continue;
          WindowSink sink{box, segs, cons, {}, {}, 0};
          sink.start(x);
          walk_power(s, x, u, sink, &box);
        }
      }
  return Window(3, std::move(segs), std::move(cons), box);
}

namespace {

Coord chord_deviation(const PeriodicCurveSet& A) {
  Coord dev = 0;
  for (const auto& c : A.reps()) {
    Point a = c.front(), b = c.back();
    for (const auto& p : c.path())
      for (int i = 0; i < p.dim(); ++i) {
        Coord lo = std::min(a[i], b[i]), hi = std::max(a[i], b[i]);
        dev = std::max(dev, p[i] < lo ? lo - p[i] : (p[i] > hi ? p[i] - hi : Coord{0}));
      }
  }
  return dev;
}

struct Piece {
  std::size_t from, to;  // path indices, both on the grid
};

std::vector<Piece> grid_pieces(const std::vector<Point>& path, Coord k) {
  std::vector<std::size_t> marks;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (path[i].divisible_by(k)) marks.push_back(i);
  std::vector<Piece> out;
  for (std::size_t j = 0; j + 1 < marks.size(); ++j) out.push_back({marks[j], marks[j + 1]});
  return out;
}

bool piece_matches(const PeriodicCurveSet& A, const std::vector<Point>& path, const Piece& pc) {
  auto ref = A.curve_between(path[pc.from], path[pc.to]);
  if (!ref || ref->size() != pc.to - pc.from) return false;
  return std::equal(ref->path().begin(), ref->path().end(), path.begin() + static_cast<std::ptrdiff_t>(pc.from));
}

std::string piece_error(const std::vector<Point>& path, const Piece& pc) {
  return "piece " + path[pc.from].str() + " -> " + path[pc.to].str() + " is not a curve of the set";
}

}  // namespace

std::vector<Curve> deconvolve(const PeriodicCurveSet& A, const std::vector<Curve>& D) {
  const Coord k = A.k();
  std::vector<Curve> out;
  for (const auto& d : D) {
    const auto& path = d.path();
    if (!d.front().divisible_by(k) || !d.back().divisible_by(k))
      throw Error(ErrorCode::Deconvolution, "curve " + d.front().str() + " -> " + d.back().str() +
                                                " does not end on the grid");
    std::vector<Point> chord{d.front().div_exact(k)};
    for (const auto& pc : grid_pieces(path, k)) {
      if (!piece_matches(A, path, pc)) throw Error(ErrorCode::Deconvolution, piece_error(path, pc));
      chord.push_back(path[pc.to].div_exact(k));
    }
    out.emplace_back(std::move(chord));
  }
  return out;
}

Window deconvolve(const PeriodicCurveSet& A, const Window& W) {
  const Coord k = A.k();
  const int n = W.dim();
  std::vector<Segment> segs;
  std::vector<Connexion> cons;
  for (const auto& frag : decompose(W)) {
    const auto& path = frag.path();
    const auto pieces = grid_pieces(path, k);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (!piece_matches(A, path, pieces[j])) throw Error(ErrorCode::Deconvolution, piece_error(path, pieces[j]));
      Point a = path[pieces[j].from].div_exact(k), b = path[pieces[j].to].div_exact(k);
      segs.push_back(segment_between(a, b));
      if (j + 1 < pieces.size() && pieces[j + 1].from == pieces[j].to) {
        Point c = path[pieces[j + 1].to].div_exact(k);
        cons.push_back(Connexion::make(b, direction_between(b, a), direction_between(b, c)));
      }
    }
  }
  Window out(n, std::move(segs), std::move(cons));
  if (!W.region()) return out;
  const Box& reg = *W.region();
  const Coord radius = floor_div(reg.radius - k - chord_deviation(A), k);
  if (radius < 0) return Window(n);
  const Box shrunk{reg.center.div_exact(k), radius};
  return restrict(out, shrunk);
}

Window omega(int s, const Point& x, const Window& E, Coord k) {
  Coord m = 1;
  for (int i = 0; i < s; ++i) m *= k;
  std::vector<Connexion> kept;
  for (const auto& c : E.connexions())
    if (!(c.at - x).divisible_by(m)) kept.push_back(c);
  return Window(E.dim(), E.segments(), std::move(kept), E.region());
}

std::vector<Curve> sigma(int s, const Point& x, const Window& E) {
  const std::size_t cap = std::size_t{1} << (3 * s);
  std::vector<Curve> out;
  for (const auto& frag : decompose(E)) {
    const auto& p = frag.path();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != x) continue;
      if (i > 0) {
        std::size_t lo = i > cap ? i - cap : 0;
        std::vector<Point> arc(p.begin() + static_cast<std::ptrdiff_t>(lo), p.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        std::reverse(arc.begin(), arc.end());
        out.emplace_back(std::move(arc));
      }
      if (i + 1 < p.size()) {
        std::size_t hi = std::min(p.size() - 1, i + cap);
        out.emplace_back(std::vector<Point>(p.begin() + static_cast<std::ptrdiff_t>(i),
                                            p.begin() + static_cast<std::ptrdiff_t>(hi) + 1));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) { return a.path() < b.path(); });
  out.erase(std::unique(out.begin(), out.end(), [](const Curve& a, const Curve& b) { return a.path() == b.path(); }),
            out.end());
  return out;
}

std::vector<Curve> sigma_of_power(int s, const Point& x) {
  const Coord cap = Coord{1} << (3 * s);
  return sigma(s, x, power_window(s, Box{x, cap}));
}

}  // namespace foldcurve
