#include <doctest.h>

#include <random>
#include <set>

#include "foldcurve/analysis.hpp"
#include "foldcurve/convolution.hpp"

using namespace foldcurve;

namespace {

const Point kO{0, 0, 0};

// Random self-avoiding walks that also avoid each other's segments.
std::vector<Curve> random_disjoint_curves(std::mt19937_64& rng, int count, int max_len) {
  std::uniform_int_distribution<int> pick(0, 5), len(1, max_len), off(-4, 4);
  auto dirs = all_directions(3);
  std::set<Segment> used;
  std::vector<Curve> out;
  for (int c = 0; c < count; ++c) {
    std::vector<Point> path{Point{off(rng), off(rng), off(rng)}};
    int want = len(rng);
    for (int step = 0; step < want; ++step) {
      bool moved = false;
      for (int attempt = 0; attempt < 12 && !moved; ++attempt) {
        const Direction& d = dirs[static_cast<std::size_t>(pick(rng))];
        Point q = path.back() + d.vec(3);
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

}  // namespace

TEST_CASE("property H") {
  CHECK(check_H(identity_covering(3), 1, 1).pass);
  CHECK(check_H(covering_C(), 2, 4).pass);
  CHECK_FALSE(check_H(covering_C(), 2, 2).pass);
  auto C2 = convolve(covering_C(), covering_C());
  CHECK(C2.k() == 4);
  CHECK(check_H(C2, 4, 16).pass);
}

TEST_CASE("identity laws") {
  const auto& C = covering_C();
  CHECK(convolve(C, identity_covering(3)) == C);
  CHECK(convolve(identity_covering(3), C) == C);
  CHECK(power(C, 0) == identity_covering(3));
  CHECK(power(C, 1) == C);
  Window w = restrict(identity_covering(3), Box{kO, 1});
  CHECK(w.segments().size() == 108);
  CHECK(w.connexions().empty());
}

TEST_CASE("associativity on a window") {
  const auto& C = covering_C();
  auto left = convolve(convolve(C, C), C);
  auto right = convolve(C, convolve(C, C));
  const Box b{kO, 8};
  CHECK(restrict(left, b) == restrict(right, b));
  CHECK(left.k() == 8);
  CHECK(restrict(power(C, 3), b) == restrict(left, b));
}

TEST_CASE("powers refine") {
  const Box b{kO, 4};
  const auto& C = covering_C();
  for (int s = 0; s < 3; ++s) CHECK(refines(restrict(power(C, s), b), restrict(power(C, s + 1), b)));
  CHECK_FALSE(refines(restrict(power(C, 2), b), restrict(C, b)));
  const auto C2 = power(C, 2);
  for (const auto& c : C2.reps()) CHECK(c.size() == 64);
}

TEST_CASE("curves of powers") {
  CHECK(curve_of_power(0, kO, Direction{0, 1}).size() == 1);
  CHECK(curve_of_power(1, kO, Direction{0, 1}).path() == blocks()[0].curves[0].path());
  Curve c = curve_of_power(2, kO, Direction{0, -1});
  CHECK(c.size() == 64);
  CHECK(c.back() == Point{-4, 0, 0});
  CHECK(self_avoiding(c));
  CHECK(multiplicities(c).at(Point{-1, 2, 1}) == 3);
  auto viaSet = power(covering_C(), 2).curve_between(kO, Point{-4, 0, 0});
  REQUIRE(viaSet);
  CHECK(viaSet->path() == c.path());
  CHECK_THROWS_AS(curve_of_power(2, Point{2, 0, 0}, Direction{0, 1}), Error);
}

TEST_CASE("pruned power windows agree with materialized ones") {
  const auto C3 = power(covering_C(), 3);
  for (const Box& b : {Box{kO, 3}, Box{Point{5, -3, 2}, 2}, Box{Point{8, 8, 0}, 4}})
    CHECK(power_window(3, b) == restrict(C3, b));
}

TEST_CASE("aligned segments at (2,2,0) in C^2") {
  Window w = power_window(2, Box{Point{2, 2, 0}, 1});
  CHECK(w.has(Connexion::make(Point{2, 2, 0}, Direction{2, -1}, Direction{2, 1})));
}

TEST_CASE("deconvolution") {
  const auto& C = covering_C();
  std::vector<Curve> one{Curve(std::vector<Point>{kO, Point{1, 0, 0}})};
  auto up = convolve(C, one);
  REQUIRE(up.size() == 1);
  CHECK(up[0].size() == 8);
  CHECK(deconvolve(C, up) == one);

  try {
    deconvolve(C, std::vector<Curve>{Curve(std::vector<Point>{kO, Point{0, -1, 0}, Point{0, -1, -1},
                                                              Point{-1, -1, -1}, Point{-1, 0, -1}, Point{-1, 0, 0},
                                                              Point{-1, 1, 0}, Point{0, 1, 0}, Point{0, 2, 0}})});
    FAIL("non-piece accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Deconvolution);
  }

  Window w8 = power_window(2, Box{kO, 8});
  Window down = deconvolve(C, w8);
  REQUIRE(down.region());
  CHECK(down.region()->radius == 2);
  CHECK(down == restrict(C, Box{kO, 2}));
  Window down11 = deconvolve(C, power_window(2, Box{kO, 11}));
  CHECK(down11 == restrict(C, Box{kO, 4}));
}

TEST_CASE("deconvolve inverts convolve on random inputs") {
  std::mt19937_64 rng(2024);
  int trials = 0;
  while (trials < 50) {
    auto B = random_disjoint_curves(rng, 3, 5);
    if (B.empty()) continue;
    ++trials;
    auto up = convolve(covering_C(), B);
    REQUIRE(up.size() == B.size());
    for (std::size_t i = 0; i < B.size(); ++i) CHECK(up[i].size() == 8 * B[i].size());
    auto back = deconvolve(covering_C(), up);
    REQUIRE(back.size() == B.size());
    for (std::size_t i = 0; i < B.size(); ++i) CHECK(back[i].path() == B[i].path());
  }
}

TEST_CASE("omega") {
  const Box b{kO, 4};
  Window w2 = power_window(2, b);
  Window w1 = restrict(covering_C(), b);
  CHECK(omega(1, kO, w2) == w1);
  CHECK(omega(2, kO, omega(2, kO, w2)) == omega(2, kO, w2));
  Window o = omega(2, kO, w2);
  for (const auto& c : w2.connexions())
    if (!o.has(c)) CHECK(c.at.divisible_by(4));
}

TEST_CASE("sigma arcs") {
  auto s0 = sigma_of_power(1, kO);
  std::vector<Curve> b0 = blocks()[0].curves;
  std::sort(b0.begin(), b0.end(), [](const Curve& a, const Curve& b) { return a.path() < b.path(); });
  REQUIRE(s0.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(s0[i].path() == b0[i].path());

  auto s1 = sigma_of_power(1, Point{2, 2, 0});
  REQUIRE(s1.size() == 6);
  for (const auto& c : s1) CHECK(std::find(blocks()[1].curves.begin(), blocks()[1].curves.end(), c) != blocks()[1].curves.end());

  // an odd point sits inside three curves of C; each contributes two capped arcs
  auto odd = sigma_of_power(1, Point{1, 0, 0});
  CHECK(odd.size() == 6);
  for (const auto& c : odd) {
    CHECK(c.front() == Point{1, 0, 0});
    CHECK(c.size() <= 8);
  }
}
