#include "foldcurve/generators.hpp"

#include <algorithm>

namespace foldcurve {

namespace {

// D_s as a point path from 0 to e_s.
std::vector<Point> seed_path(int s, int n) {
  std::vector<Point> d{Point(n), Point::unit(n, 0)};
  for (int t = 1; t < s; ++t) {
    const Point shift = Point::unit(n, t);
    std::vector<Point> next = d;
    for (auto it = d.rbegin(); it != d.rend(); ++it) next.push_back(*it + shift);
    d = std::move(next);
  }
  return d;
}

}  // namespace

Curve build_seed(int s, int n) {
  if (n < 1 || n > kMaxDim) throw Error(ErrorCode::InvalidArgument, "unsupported dimension");
  if (s < 1 || s > n)
    throw Error(ErrorCode::InvalidArgument, "build_seed needs 1 <= s <= n (s=" + std::to_string(s) + ")");
  auto path = seed_path(s, n);
  path.push_back(Point::unit(n, s - 1) * 2);
  return Curve(std::move(path));
}

std::vector<Fold> parse_folds(const std::string& word) {
  std::vector<Fold> out;
  for (char c : word) {
    if (c == 'L' || c == 'l') out.push_back(Fold::L);
    else if (c == 'R' || c == 'r') out.push_back(Fold::R);
    else throw Error(ErrorCode::Parse, std::string("bad fold letter '") + c + "'");
  }
  return out;
}

Curve unfold(const std::vector<Fold>& folds) {
  std::vector<Fold> turns;
  for (Fold f : folds) {
    std::vector<Fold> tail(turns.rbegin(), turns.rend());
    for (auto& t : tail) t = t == Fold::L ? Fold::R : Fold::L;
    turns.push_back(f);
    turns.insert(turns.end(), tail.begin(), tail.end());
  }
  std::vector<Point> path{Point(2), Point{1, 0}};
  Coord dx = 1, dy = 0;
  for (Fold t : turns) {
    // left turn: (dx,dy) -> (-dy,dx)
    if (t == Fold::L) {
      std::swap(dx, dy);
      dx = -dx;
    } else {
      std::swap(dx, dy);
      dy = -dy;
    }
    path.push_back(path.back() + Point{dx, dy});
  }
  return Curve(std::move(path));
}

Curve positive_folding(int s) { return unfold(std::vector<Fold>(static_cast<std::size_t>(s), Fold::L)); }

Curve alternate_folding(int s) {
  std::vector<Fold> w;
  for (int i = 0; i < s; ++i) w.push_back(i % 2 == 0 ? Fold::L : Fold::R);
  return unfold(w);
}

}  // namespace foldcurve
