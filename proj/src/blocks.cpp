#include "foldcurve/blocks.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "foldcurve/parallel.hpp"

namespace foldcurve {

namespace {

using Path9 = std::array<std::array<int, 3>, 9>;

// Point paths of the four blocks, transcribed verbatim; each curve starts at
// its block center.
constexpr std::array<Path9, 24> kBlockPaths = {{
    // B_0
    {{{0,0,0}, {0,-1,0}, {0,-1,-1}, {0,0,-1}, {1,0,-1}, {1,-1,-1}, {1,-1,0}, {1,0,0}, {2,0,0}}},
    {{{0,0,0}, {0,0,1}, {0,1,1}, {0,1,0}, {-1,1,0}, {-1,1,1}, {-1,0,1}, {-1,0,0}, {-2,0,0}}},
    {{{0,0,0}, {0,0,-1}, {-1,0,-1}, {-1,0,0}, {-1,1,0}, {-1,1,-1}, {0,1,-1}, {0,1,0}, {0,2,0}}},
    {{{0,0,0}, {1,0,0}, {1,0,1}, {0,0,1}, {0,-1,1}, {1,-1,1}, {1,-1,0}, {0,-1,0}, {0,-2,0}}},
    {{{0,0,0}, {-1,0,0}, {-1,-1,0}, {0,-1,0}, {0,-1,1}, {-1,-1,1}, {-1,0,1}, {0,0,1}, {0,0,2}}},
    {{{0,0,0}, {0,1,0}, {1,1,0}, {1,0,0}, {1,0,-1}, {1,1,-1}, {0,1,-1}, {0,0,-1}, {0,0,-2}}},
    // B_1
    {{{2,2,0}, {2,3,0}, {2,3,1}, {2,2,1}, {3,2,1}, {3,3,1}, {3,3,0}, {3,2,0}, {4,2,0}}},
    {{{2,2,0}, {2,2,-1}, {2,1,-1}, {2,1,0}, {1,1,0}, {1,1,-1}, {1,2,-1}, {1,2,0}, {0,2,0}}},
    {{{2,2,0}, {3,2,0}, {3,2,-1}, {2,2,-1}, {2,3,-1}, {3,3,-1}, {3,3,0}, {2,3,0}, {2,4,0}}},
    {{{2,2,0}, {2,2,1}, {1,2,1}, {1,2,0}, {1,1,0}, {1,1,1}, {2,1,1}, {2,1,0}, {2,0,0}}},
    {{{2,2,0}, {2,1,0}, {3,1,0}, {3,2,0}, {3,2,1}, {3,1,1}, {2,1,1}, {2,2,1}, {2,2,2}}},
    {{{2,2,0}, {1,2,0}, {1,3,0}, {2,3,0}, {2,3,-1}, {1,3,-1}, {1,2,-1}, {2,2,-1}, {2,2,-2}}},
    // B_2
    {{{2,0,2}, {2,0,3}, {2,-1,3}, {2,-1,2}, {3,-1,2}, {3,-1,3}, {3,0,3}, {3,0,2}, {4,0,2}}},
    {{{2,0,2}, {2,1,2}, {2,1,1}, {2,0,1}, {1,0,1}, {1,1,1}, {1,1,2}, {1,0,2}, {0,0,2}}},
    {{{2,0,2}, {1,0,2}, {1,0,3}, {2,0,3}, {2,1,3}, {1,1,3}, {1,1,2}, {2,1,2}, {2,2,2}}},
    {{{2,0,2}, {2,0,1}, {3,0,1}, {3,0,2}, {3,-1,2}, {3,-1,1}, {2,-1,1}, {2,-1,2}, {2,-2,2}}},
    {{{2,0,2}, {3,0,2}, {3,1,2}, {2,1,2}, {2,1,3}, {3,1,3}, {3,0,3}, {2,0,3}, {2,0,4}}},
    {{{2,0,2}, {2,-1,2}, {1,-1,2}, {1,0,2}, {1,0,1}, {1,-1,1}, {2,-1,1}, {2,0,1}, {2,0,0}}},
    // B_3
    {{{0,2,2}, {0,2,1}, {0,3,1}, {0,3,2}, {1,3,2}, {1,3,1}, {1,2,1}, {1,2,2}, {2,2,2}}},
    {{{0,2,2}, {0,1,2}, {0,1,3}, {0,2,3}, {-1,2,3}, {-1,1,3}, {-1,1,2}, {-1,2,2}, {-2,2,2}}},
    {{{0,2,2}, {0,2,3}, {1,2,3}, {1,2,2}, {1,3,2}, {1,3,3}, {0,3,3}, {0,3,2}, {0,4,2}}},
    {{{0,2,2}, {-1,2,2}, {-1,2,1}, {0,2,1}, {0,1,1}, {-1,1,1}, {-1,1,2}, {0,1,2}, {0,0,2}}},
    {{{0,2,2}, {0,3,2}, {-1,3,2}, {-1,2,2}, {-1,2,3}, {-1,3,3}, {0,3,3}, {0,2,3}, {0,2,4}}},
    {{{0,2,2}, {1,2,2}, {1,1,2}, {0,1,2}, {0,1,1}, {1,1,1}, {1,2,1}, {0,2,1}, {0,2,0}}},
}};

constexpr std::array<std::array<int, 3>, 4> kCenters = {{{0, 0, 0}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2}}};

int residue_index(const Point& x) {
  return static_cast<int>(floor_mod(x[0], 4) / 2 * 4 + floor_mod(x[1], 4) / 2 * 2 + floor_mod(x[2], 4) / 2);
}

struct LookupTable {
  std::array<std::array<std::array<Direction, 8>, 6>, 8> steps{};
  std::array<std::array<bool, 6>, 8> filled{};
};

const LookupTable& table() {
  static const LookupTable t = [] {
    LookupTable t;
    for (const auto& c : block_curves()) {
      for (const Curve& o : {c, c.reversed()}) {
        Direction u = direction_between(Point(3), (o.back() - o.front()).div_exact(2));
        int r = residue_index(o.front());
        if (t.filled[r][u.index()]) throw Error(ErrorCode::Precondition, "block data: duplicate lookup key");
        t.filled[r][u.index()] = true;
        auto st = o.steps();
        std::copy(st.begin(), st.end(), t.steps[r][u.index()].begin());
      }
    }
    for (auto& row : t.filled)
      for (bool f : row)
        if (!f) throw Error(ErrorCode::Precondition, "block data: incomplete lookup table");
    return t;
  }();
  return t;
}

std::vector<Segment> sorted_segments(const std::vector<Curve>& curves) {
  std::vector<Segment> out;
  for (const auto& c : curves)
    for (const auto& s : c.segments()) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<int> endpoint_type(const Point& x) {
  if (!x.divisible_by(2)) return std::nullopt;
  Coord sum = 0;
  for (int i = 0; i < x.dim(); ++i) sum += x[i] / 2;
  return static_cast<int>(floor_mod(sum, 2));
}

const std::vector<Curve>& block_curves() {
  static const std::vector<Curve> curves = [] {
    std::vector<Curve> out;
    for (const auto& path : kBlockPaths) {
      std::vector<Point> pts;
      for (const auto& p : path) pts.push_back(Point{p[0], p[1], p[2]});
      out.emplace_back(std::move(pts));
    }
    return out;
  }();
  return curves;
}

const std::vector<Block>& blocks() {
  static const std::vector<Block> bs = [] {
    std::vector<Block> out;
    for (std::size_t b = 0; b < 4; ++b) {
      Block blk{Point{kCenters[b][0], kCenters[b][1], kCenters[b][2]}, {}};
      for (std::size_t i = 0; i < 6; ++i) blk.curves.push_back(block_curves()[6 * b + i]);
      out.push_back(std::move(blk));
    }
    return out;
  }();
  return bs;
}

const PeriodicCurveSet& covering_C() {
  static const PeriodicCurveSet c(3, 2, 4, block_curves());
  return c;
}

const std::array<Direction, 8>& lookup_steps(const Point& x, Direction u) {
  if (!x.divisible_by(2)) throw Error(ErrorCode::InvalidArgument, "lookup point " + x.str() + " is not in 2Z^3");
  return table().steps[residue_index(x)][u.index()];
}

Curve lookup_curve(const Point& x, Direction u) {
  const auto& st = lookup_steps(x, u);
  std::vector<Point> path{x};
  for (const auto& d : st) path.push_back(path.back() + d.vec(3));
  return Curve(std::move(path));
}

CompletionResult completion_search(int jobs) {
  const Block& b0 = blocks()[0];
  const auto base_segs = sorted_segments(b0.curves);
  const auto rots = Isometry::rotations(3);

  CompletionResult res;
  std::vector<Isometry> images;
  std::set<std::vector<Segment>> seen;
  for (const auto& g : rots) {
    std::vector<Curve> img;
    for (const auto& c : b0.curves) img.push_back(c.transformed(g));
    auto segs = sorted_segments(img);
    if (segs == base_segs) ++res.stabilizer_order;
    if (seen.insert(segs).second) images.push_back(g);
  }
  res.distinct_images = images.size();

  const std::array<Point, 3> centers = {Point{2, 2, 0}, Point{2, 0, 2}, Point{0, 2, 2}};
  const std::size_t m = images.size();
  const std::size_t total = m * m * m;
  res.placements_tried = total;
  std::vector<std::optional<std::vector<Curve>>> found(total);
  parallel_for(total, jobs, [&](std::size_t idx) {
    std::vector<Curve> all = b0.curves;
    std::size_t rest = idx;
    for (int j = 2; j >= 0; --j) {
      const Isometry& g = images[rest % m];
      rest /= m;
      for (const auto& c : b0.curves) all.push_back(c.transformed(g.with_shift(centers[static_cast<std::size_t>(j)])));
    }
    std::vector<Segment> classes;
    for (const auto& s : sorted_segments(all)) classes.push_back({s.base.mod(4), s.axis});
    std::sort(classes.begin(), classes.end());
    if (std::adjacent_find(classes.begin(), classes.end()) != classes.end()) return;
    if (classes.size() != 192) return;
    found[idx] = std::move(all);
  });
  std::vector<std::vector<Curve>> sols;
  for (auto& f : found)
    if (f) sols.push_back(std::move(*f));
  for (auto& s : sols) {
    PeriodicCurveSet set(3, 2, 4, s);
    res.coverings.push_back(set);
  }
  std::sort(res.coverings.begin(), res.coverings.end(), [](const PeriodicCurveSet& a, const PeriodicCurveSet& b) {
    auto ra = a.normalized_reps(), rb = b.normalized_reps();
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end(),
                                        [](const Curve& x, const Curve& y) { return x.path() < y.path(); });
  });

  // Edge condition at (1,1,1): each of the three cube edges there is made of two
  // segments coming from one block.
  for (const auto& cov : res.coverings) {
    bool ok = true;
    const Point corner{1, 1, 1};
    for (int axis = 0; axis < 3; ++axis) {
      Point mid = corner - Point::unit(3, axis);
      Segment s1 = segment_between(corner, mid), s2 = segment_between(mid, mid - Point::unit(3, axis));
      int owner1 = -1, owner2 = -1;
      for (const auto& c : cov.curves_touching(Box{corner, 2})) {
        auto segs = c.segments();
        int blk = -1;
        // block of a curve: the type-0 endpoint it starts from
        for (const Point& e : {c.front(), c.back()})
          if (endpoint_type(e) == 0) blk = residue_index(e);
        if (std::find(segs.begin(), segs.end(), s1) != segs.end()) owner1 = blk;
        if (std::find(segs.begin(), segs.end(), s2) != segs.end()) owner2 = blk;
      }
      ok = ok && owner1 >= 0 && owner1 == owner2 && owner1 != 0;
    }
    res.edge_condition.push_back(ok);
  }
  return res;
}

Report symmetry_report() {
  Report r("symmetry");
  const Box box{Point{0, 0, 0}, 6};
  const Window w = restrict(covering_C(), box);
  const Isometry rho = Isometry::rho(), sigma = Isometry::sigma();

  r.expect(restrict(w.transformed(rho), box) == w, "rho does not fix the radius-6 window");
  Isometry rho3 = rho.compose(rho).compose(rho);
  r.expect(rho3.is_identity(), "rho^3 is not the identity");

  const Window ws = restrict(w.transformed(sigma), box);
  if (ws == w) {
    r.fail("sigma fixes the radius-6 window");
  } else {
    for (const auto& s : ws.segments())
      if (!w.has(s)) {
        r.note("sigma image segment " + s.str() + " absent from C");
        break;
      }
  }

  // The remark's witness point.
  const Point p{1, -1, 3}, q = sigma.apply(p);
  bool p_in_b2 = false, q_in_b3 = false;
  for (const auto& c : blocks()[2].curves)
    for (const auto& x : c.path()) p_in_b2 = p_in_b2 || x == p;
  for (const auto& c : blocks()[3].curves)
    for (const auto& x : c.path()) q_in_b3 = q_in_b3 || x + Point{0, -4, -4} == q;
  r.expect(!p_in_b2, p.str() + " lies on a curve of B_2");
  r.expect(q_in_b3, q.str() + " is not on (0,-4,-4)+B_3");
  r.note("sigma" + p.str() + " = " + q.str());

  // Linear symmetries of B_0 with its connexions.
  const Window w0 = window_of_curves(blocks()[0].curves, 3);
  std::int64_t order = 0;
  bool has_rho = false, has_sigma = false;
  for (const auto& g : Isometry::linear_group(3)) {
    if (w0.transformed(g) != w0) continue;
    ++order;
    has_rho = has_rho || g == rho;
    has_sigma = has_sigma || g == sigma;
  }
  r.count("b0_stabilizer_order", order);
  r.expect(has_rho, "rho does not stabilize B_0");
  r.expect(has_sigma, "sigma does not stabilize B_0");
  return r;
}

}  // namespace foldcurve
