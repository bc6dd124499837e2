#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "foldcurve/curve.hpp"

using namespace foldcurve;

namespace {

const std::vector<Point> kFirstB0{{0, 0, 0},   {0, -1, 0}, {0, -1, -1}, {0, 0, -1}, {1, 0, -1},
                                  {1, -1, -1}, {1, -1, 0}, {1, 0, 0},   {2, 0, 0}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("curve construction") {
  Curve one = make_curve({Point{0, 0, 0}, Point{1, 0, 0}});
  CHECK(one.size() == 1);
  CHECK(code_of([] { make_curve({Point{0, 0, 0}, Point{1, 0, 0}, Point{0, 0, 0}}); }) == ErrorCode::Backtrack);
  CHECK(code_of([] { make_curve({Point{0, 0, 0}, Point{2, 0, 0}}); }) == ErrorCode::NotAdjacent);

  Curve b = make_curve(kFirstB0);
  CHECK(b.size() == 8);
  CHECK(self_avoiding(b));
}

TEST_CASE("self-avoidance is about segments") {
  Curve c(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {2, 1, 0}, {2, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  CHECK_FALSE(self_avoiding(c));
  // a point revisit without repeating a segment
  Curve d(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
  CHECK(self_avoiding(d));
}

TEST_CASE("orientation does not matter for equality") {
  Curve c(kFirstB0);
  CHECK(c == c.reversed());
  CHECK(c.canonical().is_canonical());
  CHECK(c.starting_at(Point{2, 0, 0}).front() == Point{2, 0, 0});
  CHECK(c.transformed(Isometry(3)) == c);
  CHECK(c.translated(Point{4, 0, 0}).front() == Point{4, 0, 0});
}

TEST_CASE("window validation") {
  std::vector<Segment> segs{{Point{0, 0, 0}, 0}, {Point{-1, 0, 0}, 0}, {Point{0, 0, 0}, 1}};
  auto straight = Connexion::make(Point{0, 0, 0}, Direction{0, 1}, Direction{0, -1});
  auto bend = Connexion::make(Point{0, 0, 0}, Direction{0, 1}, Direction{1, 1});
  CHECK_NOTHROW(Window(3, segs, {straight}));
  CHECK(code_of([&] { Window(3, segs, {straight, bend}); }) == ErrorCode::Branching);
  CHECK(code_of([&] { Window(3, segs, {Connexion::make(Point{0, 0, 0}, Direction{2, 1}, Direction{0, 1})}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("decompose splits at missing connexions") {
  Curve c(kFirstB0);
  Window w = window_of_curves({c}, 3);
  CHECK(w.segments().size() == 8);
  CHECK(w.connexions().size() == 7);
  auto parts = decompose(w);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0] == c);

  Window bare(3, w.segments(), {});
  CHECK(decompose(bare).size() == 8);

  Curve loop(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
  std::vector<Connexion> cons;
  const auto& p = loop.path();
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& mid = p[(i + 1) % 4];
    const Point& next = p[(i + 2) % 4];
    cons.push_back(Connexion::make(mid, direction_between(mid, p[i]), direction_between(mid, next)));
  }
  CHECK(code_of([&] { decompose(Window(3, loop.segments(), cons)); }) == ErrorCode::Precondition);
}

TEST_CASE("window_match finds translations and rotations") {
  Window one(3, {{Point{0, 0, 0}, 0}}, {});
  Window other(3, {{Point{0, 0, 0}, 1}}, {});
  CHECK_FALSE(window_match(one, other, MatchMode::Translation));
  auto rot = window_match(one, other, MatchMode::PositiveIsometry);
  REQUIRE(rot);
  CHECK(rot->positive());
  CHECK(one.transformed(*rot) == other);

  Curve c(kFirstB0);
  Window w = window_of_curves({c}, 3);
  auto t = window_match(w, w.translated(Point{3, -1, 2}), MatchMode::Translation);
  REQUIRE(t);
  CHECK(t->shift() == Point{3, -1, 2});
}

TEST_CASE("refinement is reflexive and sees extra connexions") {
  Curve c(kFirstB0);
  Window full = window_of_curves({c}, 3);
  Window bare(3, full.segments(), {});
  CHECK(refines(full, full));
  CHECK(refines(bare, full));
  CHECK_FALSE(refines(full, bare));
}

TEST_CASE("random windows round-trip through decompose") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 5);
  auto dirs = all_directions(3);
  for (int trial = 0; trial < 30; ++trial) {
    // random self-avoiding walk, then its window
    std::vector<Point> path{Point{0, 0, 0}};
    std::set<Segment> used;
    for (int step = 0; step < 20; ++step) {
      for (int attempt = 0; attempt < 12; ++attempt) {
        Point q = path.back() + dirs[static_cast<std::size_t>(pick(rng))].vec(3);
        Segment s = segment_between(path.back(), q);
        if (used.count(s)) continue;
        used.insert(s);
        path.push_back(q);
        break;
      }
    }
    Curve c(path);
    REQUIRE(self_avoiding(c));
    auto parts = decompose(window_of_curves({c}, 3));
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    CHECK(total == c.size());
  }
}
