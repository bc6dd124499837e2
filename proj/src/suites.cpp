#include "foldcurve/suites.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "foldcurve/analysis.hpp"
#include "foldcurve/blocks.hpp"
#include "foldcurve/convolution.hpp"
#include "foldcurve/generators.hpp"
#include "foldcurve/geometry.hpp"

namespace foldcurve {

namespace {

const Point kO{0, 0, 0};

Report block_integrity(int, bool) {
  Report r("block integrity");
  const auto& cs = block_curves();
  std::set<Segment> segs;
  for (const auto& c : cs)
    for (const auto& s : c.segments()) segs.insert(s);
  r.count("curves", static_cast<std::int64_t>(cs.size()));
  r.count("distinct_segments", static_cast<std::int64_t>(segs.size()));
  r.expect(cs.size() == 24, "expected 24 curves");
  r.expect(segs.size() == 192, "expected 192 distinct segments");
  auto cov = covers(covering_C(), Box{kO, 6});
  r.count("missing_in_P06", static_cast<std::int64_t>(cov.missing.size()));
  r.count("duplicates_in_P06", static_cast<std::int64_t>(cov.duplicates.size()));
  r.expect(cov.ok && cov.duplicates.empty(), "translates do not tile P_{0,6}");
  return r;
}

Report property_H(int, bool) {
  Report r = check_H(covering_C(), 2, 4);
  r.check = "C satisfies H(2,4)";
  return r;
}

Report completion(int jobs, bool) {
  Report r("completion search");
  auto res = completion_search(jobs);
  r.count("coverings", static_cast<std::int64_t>(res.coverings.size()));
  r.count("distinct_images", static_cast<std::int64_t>(res.distinct_images));
  r.count("stabilizer_order", static_cast<std::int64_t>(res.stabilizer_order));
  r.count("placements_tried", static_cast<std::int64_t>(res.placements_tried));
  if (res.coverings.size() != 2) {
    r.fail("expected 2 coverings");
    return r;
  }
  const bool c0 = res.coverings[0] == covering_C(), c1 = res.coverings[1] == covering_C();
  r.expect(c0 != c1, "exactly one result must equal C");
  r.expect(res.coverings[0].transformed(Isometry::sigma()) == res.coverings[1], "sigma does not map one onto the other");
  for (bool e : res.edge_condition) r.expect(e, "edge condition at (1,1,1) fails");
  return r;
}

Report triple_point(int, bool) {
  Report r("curve of C^2 through (-1,2,1)");
  Curve c = curve_of_power(2, kO, Direction{0, -1});
  auto m = multiplicities(c);
  auto it = m.find(Point{-1, 2, 1});
  const int v = it == m.end() ? 0 : it->second;
  r.count("segments", static_cast<std::int64_t>(c.size()));
  r.count("visits", v);
  r.expect(v == 3, "visits (-1,2,1) " + std::to_string(v) + " times");
  r.expect(self_avoiding(c), "not self-avoiding");
  return r;
}

Report triple_classes(int jobs, bool heavy) {
  Report r = lemma22_check(heavy ? 1 : 97, jobs);
  std::int64_t checked = 0;
  for (const auto& [k, v] : r.census)
    if (k == "chords_checked") checked = v;
  r.expect(checked >= (heavy ? 12288 : 100), "too few chords checked");
  return r;
}

Report unit_cube_coverage(int, bool) {
  Report r("curves through 0 and P_{0,1}");
  auto d1 = covers(d_set(1), Box{kO, 1}, CoverMode::Contained);
  std::set<Segment> edges;
  for (const Point& corner : {Point{1, 1, 1}, Point{-1, -1, -1}})
    for (int a = 0; a < 3; ++a)
      for (Coord t : {Coord{-1}, Coord{0}}) {
        Point b = corner;
        b[a] = t;
        edges.insert(Segment{b, a});
      }
  r.count("d1_missing", static_cast<std::int64_t>(d1.missing.size()));
  r.expect(std::set<Segment>(d1.missing.begin(), d1.missing.end()) == edges && d1.missing.size() == 12,
           "D_1 does not miss exactly the 12 corner edge segments");
  auto d2 = covers(d_set(2), Box{kO, 1});
  r.count("d2_missing", static_cast<std::int64_t>(d2.missing.size()));
  r.expect(d2.ok, "D_2 does not cover P_{0,1}");
  return r;
}

Report distances(int, bool) {
  Report r("coverage radius and complement distance");
  const Coord d3 = complement_distance(3), d4 = complement_distance(4);
  const int h4 = coverage_radius(4), h5 = coverage_radius(5);
  r.count("complement_distance_3", d3);
  r.count("complement_distance_4", d4);
  r.count("coverage_radius_4", h4);
  r.count("coverage_radius_5", h5);
  r.expect(d3 >= 2, "complement_distance(3) < 2");
  r.expect(d4 >= 3, "complement_distance(4) < 3");
  r.expect(h4 >= 2, "coverage_radius(4) < 2");
  r.expect(h5 >= 4, "coverage_radius(5) < 4");
  return r;
}

Report theta_values(int, bool) {
  Report r("theta tables");
  const auto& t = theta();
  for (Coord a = -8; a <= 8; a += 4)
    for (Coord b = -8; b <= 8; b += 4)
      for (Coord c = -8; c <= 8; c += 4)
        r.expect(theta_at(Point{a, b, c}) == t, "theta differs at " + Point{a, b, c}.str());
  std::vector<Direction> dst{{1, 1}, {2, -1}, {0, 1}, {2, 1}, {1, -1}, {0, -1}};
  auto t220 = theta_at(Point{2, 2, 0});
  for (int i = 0; i < 6; ++i)
    r.expect(t220(Direction::from_index(i)) == dst[static_cast<std::size_t>(i)],
             "theta_(2,2,0) differs on " + Direction::from_index(i).name());
  r.expect(t.compose(t).is_identity(), "theta is not an involution");
  return r;
}

Report relation_values(int, bool) {
  Report r("published relations");
  auto P = parse_pairing;
  const auto odd = P("e1:-e2,e2:-e3,e3:-e1");
  std::vector<std::pair<Point, PairingRelation>> pub{
      {{1, 1, 1}, P("e1:-e3,e2:-e1,e3:-e2")},  {{2, 2, 2}, P("e1:-e3,e2:-e1,e3:-e2")},
      {{1, 1, 0}, P("e1:-e3,e2:e3,-e1:-e2")},  {{2, 2, 0}, P("e1:-e2,e2:-e1,e3:-e3")},
      {{0, 2, 2}, P("e1:-e1,e2:-e3,e3:-e2")},  {{2, 0, 2}, P("e1:-e3,e2:-e2,e3:-e1")},
  };
  for (Coord s : {Coord{1}, Coord{2}}) {
    pub.push_back({Point{-s, -s, -s}, odd});
    for (int a = 0; a < 3; ++a)
      for (Coord sg : {s, -s}) {
        Point x{0, 0, 0};
        x[a] = sg;
        pub.push_back({x, odd});
      }
  }
  for (const auto& [x, R] : pub) r.expect(pairing_at(x) == R, "R at " + x.str() + " is " + pairing_at(x).str());
  r.count("published_values", static_cast<std::int64_t>(pub.size()));
  std::int64_t checked = 0;
  for (Coord a = -8; a < 8; ++a)
    for (Coord b = -8; b < 8; ++b)
      for (Coord c = -8; c < 8; ++c) {
        Point x{a, b, c};
        if (x.is_zero()) continue;
        ++checked;
        if (!x.divisible_by(2)) r.expect(pairing_at(x) == pairing_at(x + Point{4, -4, 4}), "4-periodicity at " + x.str());
        else if (!x.divisible_by(4))
          r.expect(pairing_at(x) == pairing_at(x + Point{8, 0, -8}), "8-periodicity at " + x.str());
        if (a >= -4 && a < 4 && b >= -4 && b < 4 && c >= -4 && c < 4)
          r.expect(pairing_at(x * 2) == pairing_at(x).image(theta_at(x * 2)), "recursion at " + x.str());
      }
  r.count("box_points", checked);
  return r;
}

Report aligned_pair(int, bool) {
  Report r("aligned pair at (2,2,0) in C^2");
  Window w = power_window(2, Box{Point{2, 2, 0}, 1});
  r.expect(w.has(Connexion::make(Point{2, 2, 0}, Direction{2, -1}, Direction{2, 1})),
           "[(2,2,-1),(2,2,0)] and [(2,2,0),(2,2,1)] not connected");
  return r;
}

Report arcs(int, bool) {
  Report r = lemma26_check();
  return r;
}

Report pairings(int, bool) {
  Report r = classify_pairings();
  Report again = classify_pairings();
  r.expect(to_json(r) == to_json(again), "classification not stable");
  std::int64_t total = 0, good = 0;
  for (const auto& [k, v] : r.census) {
    if (k == "matchings") total = v;
    if (k == "satisfying_P") good = v;
  }
  r.expect(total == 15, "expected 15 matchings");
  r.expect(good == 15, "frozen count of relations with property P is 15");
  for (const char* pub : {"e1:-e3,e2:-e1,e3:-e2", "e1:-e2,e2:-e3,e3:-e1", "e1:-e3,e2:e3,-e1:-e2",
                          "e1:-e2,e2:-e1,e3:-e3", "e1:-e1,e2:-e3,e3:-e2", "e1:-e3,e2:-e2,e3:-e1"})
    r.expect(satisfies_P(parse_pairing(pub)).holds, std::string("published relation without P: ") + pub);
  return r;
}

Report autosimilarity(int, bool) {
  Report r("eight runs congruent to the smaller curve");
  for (int s = 1; s <= 3; ++s) {
    auto a = autosimilarity_split(s);
    std::int64_t matched = 0;
    for (const auto& m : a.piece_maps) matched += m ? 1 : 0;
    r.count("s" + std::to_string(s) + "_runs_matched", matched);
    r.expect(a.disjoint, "runs overlap at s=" + std::to_string(s));
    r.expect(a.consecutive, "runs do not start at 0 at s=" + std::to_string(s));
    for (std::size_t j = 0; j < a.piece_maps.size(); ++j)
      r.expect(a.piece_maps[j].has_value(),
               "s=" + std::to_string(s) + ": run " + std::to_string(j) + " is not a positive-isometric image");
  }
  return r;
}

Report curve_bound(int, bool) {
  Report r("curves meeting P_{x,1}");
  auto b = max_curve_bound();
  r.count("bound", b.bound);
  r.count("vertices", b.vertices);
  r.count("edge_midpoints", b.edge_midpoints);
  r.count("face_centers", b.face_centers);
  r.count("outgoing", b.outgoing);
  r.expect(b.bound == 27 && b.outgoing == 3 * 8 + 2 * 12 + 6, "bound is not 27");
  return r;
}

Report symmetries(int, bool) {
  Report r = symmetry_report();
  bool named = false;
  for (const auto& w : r.witnesses) named = named || w.find("(1,-1,3)") != std::string::npos;
  r.expect(named, "no witness at (1,-1,3)");
  return r;
}

Report generator_checks(int, bool) {
  Report r("seed and folding curves");
  r.expect(build_seed(2, 2).path() == std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}}, "C_2 differs");
  auto eq = [](const Curve& a, const Curve& b) {
    return window_match(window_of_curves({a}, a.dim()), window_of_curves({b}, b.dim()), MatchMode::PositiveIsometry)
        .has_value();
  };
  r.expect(eq(build_seed(3, 3), blocks()[0].curves[0]), "C_3 not equivalent to the curve of C");
  r.expect(eq(unfold(parse_folds("LL")), build_seed(2, 2)), "LL not equivalent to C_2");
  return r;
}

Report recurrence(int jobs, bool) {
  Report r("window recurrence for an approximant");
  Approximant E;
  E.at_origin = parse_pairing("e1:-e2,e2:-e1,e3:-e3");
  r.expect(satisfies_P(*E.at_origin).holds, "relation lacks P");
  auto hit = property_C_scan(E, kO, 3, 64, jobs);
  if (!hit) {
    r.fail("no translate within 64");
    return r;
  }
  r.note("y = " + hit->y.str());
  r.expect(E.window(Box{kO, 3}).translated(hit->y) == E.window(Box{hit->y, 3}), "witness does not match");
  return r;
}

Report big_curve(int, bool) {
  Report r("a curve of C^8 covers a unit cube");
  auto c = covered_cube_of_power(8, kO, Direction{0, 1}, 16);
  if (!c) {
    r.fail("no covered P_{x,1} on the 16-grid");
    return r;
  }
  r.note("center " + c->center.str());
  r.count("radius", c->radius);
  return r;
}

std::vector<Curve> random_disjoint_curves(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5), len(1, 5), off(-4, 4);
  auto dirs = all_directions(3);
  std::set<Segment> used;
  std::vector<Curve> out;
  for (int c = 0; c < 3; ++c) {
    std::vector<Point> path{Point{off(rng), off(rng), off(rng)}};
    const int want = len(rng);
    for (int step = 0; step < want; ++step) {
      bool moved = false;
      for (int attempt = 0; attempt < 12 && !moved; ++attempt) {
        Point q = path.back() + dirs[static_cast<std::size_t>(pick(rng))].vec(3);
        if (path.size() >= 2 && q == path[path.size() - 2]) continue;
        Segment s = segment_between(path.back(), q);
        if (used.count(s)) continue;
        used.insert(s);
        path.push_back(q);
        moved = true;
      }
      if (!moved) break;
    }
    if (path.size() >= 2) out.emplace_back(std::move(path));
  }
  return out;
}

Report algebra(int, bool) {
  Report r("convolution algebra");
  const auto& C = covering_C();
  const auto I = identity_covering(3);
  r.expect(convolve(C, I) == C && convolve(I, C) == C, "identity laws fail");
  const auto CC = convolve(C, C);
  r.expect(CC.k() == 4, "k does not multiply");
  r.expect(check_H(CC, 4, 16).pass, "C*C fails H(4,16)");
  const Box b{kO, 8};
  r.expect(restrict(convolve(CC, C), b) == restrict(convolve(C, CC), b), "not associative on P_{0,8}");
  std::mt19937_64 rng(2024);
  int trials = 0, bad = 0;
  while (trials < 50) {
    auto B = random_disjoint_curves(rng);
    if (B.empty()) continue;
    ++trials;
    auto back = deconvolve(C, convolve(C, B));
    bool same = back.size() == B.size();
    for (std::size_t i = 0; same && i < B.size(); ++i) same = back[i].path() == B[i].path();
    if (!same) ++bad;
  }
  r.count("roundtrips", trials);
  r.expect(bad == 0, std::to_string(bad) + " inputs do not round-trip");
  return r;
}

// Independent exact oracle: squared distances scaled by 4^e.
Segment oracle_nearest(const std::array<Coord, 3>& num, int e) {
  std::optional<Segment> best;
  Coord bd = 0;
  const Point c{num[0] >> e, num[1] >> e, num[2] >> e};
  for (const auto& s : segments_touching(Box{c, 3})) {
    Coord d2 = 0;
    for (int i = 0; i < 3; ++i) {
      Coord lo = s.base[i] << e, hi = (s.base[i] + (i == s.axis)) << e, v = num[static_cast<std::size_t>(i)];
      Coord d = v < lo ? lo - v : (v > hi ? v - hi : 0);
      d2 += d * d;
    }
    if (!best || d2 < bd) {
      best = s;
      bd = d2;
    }
  }
  return *best;
}

Report voronoi(int, bool) {
  Report r("nearest segment against brute force");
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> ex(0, 5);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const int e = ex(rng);
    std::uniform_int_distribution<Coord> c(-(Coord{8} << e), Coord{8} << e);
    std::array<Coord, 3> num{c(rng), c(rng), c(rng)};
    DyadicPoint x{Dyadic::make(num[0], e), Dyadic::make(num[1], e), Dyadic::make(num[2], e)};
    Segment got = nearest_grid_segment(x);
    if (got != oracle_nearest(num, e)) {
      ++bad;
      if (bad <= 5) r.note("mismatch at " + x.str());
    }
  }
  r.count("points", 1000);
  r.expect(bad == 0, std::to_string(bad) + " mismatches");
  return r;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all{
      {1, "blocks: 24 curves, 192 segments, tiling of P_{0,6}", 1, block_integrity},
      {2, "check_H(C,2,4)", 1, property_H},
      {3, "completion search yields 2 coverings related by sigma", 10, completion},
      {4, "curve_of_power(2,0,-e1) visits (-1,2,1) three times", 1, triple_point},
      {5, "every curve class of C^4 has a triple point", 300, triple_classes},
      {6, "D_1 misses the 12 corner edges, D_2 covers P_{0,1}", 1, unit_cube_coverage},
      {7, "complement distance and coverage radius bounds", 60, distances},
      {8, "theta on 4Z^3 and theta_(2,2,0)", 1, theta_values},
      {9, "published R_x values, recursion and periodicity", 10, relation_values},
      {10, "aligned connected pair at (2,2,0) in C^2", 1, aligned_pair},
      {11, "no nonzero residue admits arc refinement", 60, arcs},
      {12, "classification of the 15 matchings", 10, pairings},
      {13, "autosimilarity split for s = 1,2,3", 60, autosimilarity},
      {14, "at most 27 curves meet a unit cube", 1, curve_bound},
      {15, "rho fixes C, sigma moves (1,-1,3)", 1, symmetries},
      {16, "seed and folding generators", 1, generator_checks},
      {17, "property C witness within bound 64", 60, recurrence},
      {18, "a curve of C^8 covers some P_{x,1}", 600, big_curve},
      {19, "convolution algebra", 60, algebra},
      {20, "nearest_segment equals the brute-force oracle", 10, voronoi},
  };
  return all;
}

bool known_suite(const std::string& suite) { return suite == "core" || suite == "paper" || suite == "heavy"; }

std::vector<Report> run_suite(const std::string& suite, int jobs) {
  if (!known_suite(suite)) throw Error(ErrorCode::InvalidArgument, "unknown suite " + suite);
  std::vector<int> ids;
  bool heavy = false;
  if (suite == "core") ids = {1, 2, 14, 15, 19, 20};
  if (suite == "paper") ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 19};
  if (suite == "heavy") {
    ids = {5, 18};
    heavy = true;
  }
  std::vector<Report> out;
  for (int id : ids) {
    const auto& c = acceptance_criteria()[static_cast<std::size_t>(id - 1)];
    Report r = c.run(jobs, heavy);
    r.check = std::to_string(id) + ". " + c.title;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace foldcurve
