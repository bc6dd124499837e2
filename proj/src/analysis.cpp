#include "foldcurve/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "foldcurve/blocks.hpp"
#include "foldcurve/parallel.hpp"

namespace foldcurve {

// ---------------------------------------------------------------- permutations and matchings

DirectionPermutation::DirectionPermutation(int dim) : dim_(dim) {
  for (int i = 0; i < 2 * dim; ++i) map_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
}

DirectionPermutation::DirectionPermutation(int dim, const std::vector<Direction>& images) : dim_(dim) {
  if (static_cast<int>(images.size()) != 2 * dim)
    throw Error(ErrorCode::InvalidArgument, "permutation needs one image per direction");
  std::array<bool, 2 * kMaxDim> hit{};
  for (int i = 0; i < 2 * dim; ++i) {
    int j = images[static_cast<std::size_t>(i)].index();
    if (j < 0 || j >= 2 * dim || hit[static_cast<std::size_t>(j)])
      throw Error(ErrorCode::InvalidArgument, "direction map is not a bijection");
    hit[static_cast<std::size_t>(j)] = true;
    map_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(j);
  }
}

DirectionPermutation DirectionPermutation::inverse() const {
  DirectionPermutation r(dim_);
  for (int i = 0; i < 2 * dim_; ++i) r.map_[static_cast<std::size_t>(map_[static_cast<std::size_t>(i)])] = static_cast<std::int8_t>(i);
  return r;
}

DirectionPermutation DirectionPermutation::compose(const DirectionPermutation& other) const {
  DirectionPermutation r(dim_);
  for (int i = 0; i < 2 * dim_; ++i)
    r.map_[static_cast<std::size_t>(i)] = map_[static_cast<std::size_t>(other.map_[static_cast<std::size_t>(i)])];
  return r;
}

bool DirectionPermutation::is_identity() const { return *this == DirectionPermutation(dim_); }

std::string DirectionPermutation::str() const {
  std::string s;
  for (int i = 0; i < 2 * dim_; ++i) {
    if (i) s += ", ";
    Direction d = Direction::from_index(i);
    s += d.name() + "\xE2\x86\x92" + (*this)(d).name();
  }
  return s;
}

PairingRelation::PairingRelation(int dim, const std::vector<std::pair<Direction, Direction>>& pairs) : dim_(dim) {
  std::array<bool, 2 * kMaxDim> hit{};
  if (static_cast<int>(pairs.size()) != dim) throw Error(ErrorCode::InvalidArgument, "a matching has n pairs");
  for (const auto& [u, v] : pairs) {
    int a = u.index(), b = v.index();
    if (a == b || a >= 2 * dim || b >= 2 * dim || hit[static_cast<std::size_t>(a)] || hit[static_cast<std::size_t>(b)])
      throw Error(ErrorCode::InvalidArgument, "pairs do not form a perfect matching");
    hit[static_cast<std::size_t>(a)] = hit[static_cast<std::size_t>(b)] = true;
    partner_[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(b);
    partner_[static_cast<std::size_t>(b)] = static_cast<std::int8_t>(a);
  }
}

std::vector<std::pair<Direction, Direction>> PairingRelation::pairs() const {
  std::vector<Direction> order;
  for (int sgn : {1, -1})
    for (int axis = 0; axis < dim_; ++axis) order.push_back({axis, sgn});
  std::vector<std::pair<Direction, Direction>> out;
  std::array<bool, 2 * kMaxDim> done{};
  for (const auto& d : order) {
    if (done[static_cast<std::size_t>(d.index())]) continue;
    Direction p = partner(d);
    done[static_cast<std::size_t>(d.index())] = done[static_cast<std::size_t>(p.index())] = true;
    out.emplace_back(d, p);
  }
  return out;
}

std::string PairingRelation::str() const {
  std::string s = "\xE2\x9F\xA8";  // ⟨
  bool first = true;
  for (const auto& [u, v] : pairs()) {
    if (!first) s += ",";
    first = false;
    s += "(" + u.name() + "," + v.name() + ")";
  }
  return s + "\xE2\x9F\xA9";  // ⟩
}

PairingRelation PairingRelation::image(const DirectionPermutation& g) const {
  std::vector<std::pair<Direction, Direction>> ps;
  for (const auto& [u, v] : pairs()) ps.emplace_back(g(u), g(v));
  return PairingRelation(dim_, ps);
}

namespace {

Direction parse_direction(std::string t) {
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty()) throw Error(ErrorCode::Parse, "empty direction");
  int sign = 1;
  const std::string bar = "\xC4\x93";
  if (t[0] == '-') {
    sign = -1;
    t = t.substr(1);
  } else if (t[0] == '+') {
    t = t.substr(1);
  }
  if (t.rfind(bar, 0) == 0) {
    sign = -sign;
    t = "e" + t.substr(bar.size());
  }
  if (!t.empty() && (t[0] == 'e' || t[0] == 'E')) t = t.substr(1);
  if (t.size() != 1 || t[0] < '1' || t[0] > '4') throw Error(ErrorCode::Parse, "bad direction '" + t + "'");
  return {t[0] - '1', sign};
}

}  // namespace

PairingRelation parse_pairing(const std::string& text) {
  std::vector<std::pair<Direction, Direction>> ps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::Parse, "pair '" + item + "' needs the form u:v");
    ps.emplace_back(parse_direction(item.substr(0, colon)), parse_direction(item.substr(colon + 1)));
  }
  return PairingRelation(3, ps);
}

const std::vector<PairingRelation>& all_matchings() {
  static const std::vector<PairingRelation> ms = [] {
    std::vector<PairingRelation> out;
    std::vector<std::pair<Direction, Direction>> cur;
    std::array<bool, 6> used{};
    auto rec = [&](auto&& self) -> void {
      int first = -1;
      for (int i = 0; i < 6; ++i)
        if (!used[static_cast<std::size_t>(i)]) {
          first = i;
          break;
        }
      if (first < 0) {
        out.emplace_back(3, cur);
        return;
      }
      used[static_cast<std::size_t>(first)] = true;
      for (int j = first + 1; j < 6; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        used[static_cast<std::size_t>(j)] = true;
        cur.emplace_back(Direction::from_index(first), Direction::from_index(j));
        self(self);
        cur.pop_back();
        used[static_cast<std::size_t>(j)] = false;
      }
      used[static_cast<std::size_t>(first)] = false;
    };
    rec(rec);
    return out;
  }();
  return ms;
}

int matching_code(const PairingRelation& r) {
  const auto& ms = all_matchings();
  auto it = std::find(ms.begin(), ms.end(), r);
  if (it == ms.end()) throw Error(ErrorCode::InvalidArgument, "not a dimension-3 matching");
  return static_cast<int>(it - ms.begin());
}

// ---------------------------------------------------------------- θ and R_x

DirectionPermutation theta_at(const Point& x) {
  if (x.dim() != 3 || !x.divisible_by(2))
    throw Error(ErrorCode::InvalidArgument, "theta is defined on 2Z^3, got " + x.str());
  std::vector<Direction> images;
  for (const auto& u : all_directions(3)) images.push_back(lookup_steps(x, u)[0]);
  return DirectionPermutation(3, images);
}

const DirectionPermutation& theta() {
  static const DirectionPermutation t = theta_at(Point{0, 0, 0});
  return t;
}

PairingRelation conjugate_theta(const PairingRelation& r) { return r.image(theta().inverse()); }

namespace {

struct PairingTables {
  std::array<int, 64> odd{};                 // code at odd points by residue mod 4
  std::array<std::array<int, 15>, 8> lift{};  // code of θ_x(R) by even residue and code(R)
};

int residue64(const Point& x) {
  return static_cast<int>(floor_mod(x[0], 4) * 16 + floor_mod(x[1], 4) * 4 + floor_mod(x[2], 4));
}
int residue8(const Point& x) {
  return static_cast<int>(floor_mod(x[0], 4) / 2 * 4 + floor_mod(x[1], 4) / 2 * 2 + floor_mod(x[2], 4) / 2);
}

const PairingTables& pairing_tables() {
  static const PairingTables t = [] {
    PairingTables t;
    t.odd.fill(-1);
    const Window w = restrict(covering_C(), Box{Point{2, 2, 2}, 3});
    for (const auto& p : Box{Point{2, 2, 2}, 2}.points()) {
      if (p[0] > 3 || p[1] > 3 || p[2] > 3 || p.divisible_by(2)) continue;
      auto cs = w.connexions_at(p);
      if (cs.size() != 3) throw Error(ErrorCode::Precondition, "odd point " + p.str() + " is not passed 3 times");
      std::vector<std::pair<Direction, Direction>> ps;
      for (const auto& c : cs) ps.emplace_back(c.a, c.b);
      t.odd[static_cast<std::size_t>(residue64(p))] = matching_code(PairingRelation(3, ps));
    }
    for (int r = 0; r < 8; ++r) {
      Point x{(r >> 2 & 1) * 2, (r >> 1 & 1) * 2, (r & 1) * 2};
      auto th = theta_at(x);
      for (int c = 0; c < 15; ++c)
        t.lift[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = matching_code(all_matchings()[static_cast<std::size_t>(c)].image(th));
    }
    return t;
  }();
  return t;
}

}  // namespace

int pairing_code(const Point& x) {
  if (x.is_zero()) throw Error(ErrorCode::InvalidArgument, "no connexions are defined at 0");
  const auto& t = pairing_tables();
  int depth = 0;
  Point q = x;
  while (q.divisible_by(2)) {
    q = q.div_exact(2);
    ++depth;
  }
  int code = t.odd[static_cast<std::size_t>(residue64(q))];
  for (int j = depth - 1; j >= 0; --j) {
    q = q * 2;
    code = t.lift[static_cast<std::size_t>(residue8(q))][static_cast<std::size_t>(code)];
  }
  return code;
}

PairingRelation pairing_at(const Point& x) { return all_matchings()[static_cast<std::size_t>(pairing_code(x))]; }

const std::vector<Point>& witness_points() {
  static const std::vector<Point> pts = [] {
    std::vector<Point> out;
    const Coord vals[] = {-2, 0, 2, 4};
    for (Coord a : vals)
      for (Coord b : vals)
        for (Coord c : vals) {
          auto corner = [](Coord v) { return v == 0 || v == 4; };
          if (corner(a) && corner(b) && corner(c)) continue;
          out.push_back(Point{a, b, c});
        }
    return out;
  }();
  return pts;
}

PResult satisfies_P(const PairingRelation& r) {
  const PairingRelation rt = conjugate_theta(r);
  for (const auto& x : witness_points()) {
    PairingRelation rx = pairing_at(x);
    if (rx == r) return {true, x, false};
    if (rx == rt) return {true, x, true};
  }
  return {};
}

Report classify_pairings() {
  Report rep("classify_pairings");
  std::int64_t count = 0;
  for (const auto& r : all_matchings()) {
    auto res = satisfies_P(r);
    std::string line = r.str() + " " + (res.holds ? "P" : "not P");
    if (res.witness) line += " witness " + res.witness->str() + (res.via_theta ? " (theta image)" : "");
    rep.note(line);
    count += res.holds ? 1 : 0;
  }
  rep.count("matchings", static_cast<std::int64_t>(all_matchings().size()));
  rep.count("satisfying_P", count);
  rep.expect(count > 0, "no matching satisfies (P)");
  return rep;
}

// ---------------------------------------------------------------- multiplicities and coverage

std::map<Point, int> multiplicities(const Curve& c) {
  std::map<Point, int> m;
  for (const auto& p : c.path()) ++m[p];
  return m;
}

namespace {

// 20 bits per coordinate, leaving room for a 2-bit axis tag in segment keys.
constexpr std::uint64_t kBias = 1u << 19;

std::uint64_t pack(const Point& p) {
  return ((static_cast<std::uint64_t>(p[0]) + kBias) << 40) | ((static_cast<std::uint64_t>(p[1]) + kBias) << 20) |
         (static_cast<std::uint64_t>(p[2]) + kBias);
}

Point unpack(std::uint64_t k) {
  const std::uint64_t mask = (1u << 20) - 1;
  return Point{static_cast<Coord>((k >> 40) & mask) - static_cast<Coord>(kBias),
               static_cast<Coord>((k >> 20) & mask) - static_cast<Coord>(kBias),
               static_cast<Coord>(k & mask) - static_cast<Coord>(kBias)};
}

struct KeySink {
  std::vector<std::uint64_t>* keys;
  void point(const Point& p) { keys->push_back(pack(p)); }
  void gap() {}
};

std::vector<std::uint64_t> sorted_point_keys(int s, const Point& x, Direction u) {
  std::vector<std::uint64_t> keys;
  keys.reserve((std::size_t{1} << (3 * s)) + 1);
  keys.push_back(pack(x));
  KeySink sink{&keys};
  walk_power(s, x, u, sink);
  std::sort(keys.begin(), keys.end());
  return keys;
}

// Points appearing three times in a sorted key list.
std::vector<std::uint64_t> triple_keys(const std::vector<std::uint64_t>& sorted) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + 2 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 2]) {
      out.push_back(sorted[i]);
      i += 2;
    }
  return out;
}

bool cube_all_triple(const std::vector<std::uint64_t>& triples, const Point& c, Coord h) {
  for (Coord a = -h; a <= h; ++a)
    for (Coord b = -h; b <= h; ++b)
      for (Coord d = -h; d <= h; ++d)
        if (!std::binary_search(triples.begin(), triples.end(), pack(c + Point{a, b, d}))) return false;
  return true;
}

std::optional<CubeCover> best_cube_from_triples(const std::vector<std::uint64_t>& triples, Coord grid) {
  std::optional<CubeCover> best;
  for (auto k : triples) {
    Point c = unpack(k);
    if (!c.divisible_by(grid)) continue;
    Coord h = best ? best->radius + 1 : 1;
    if (!cube_all_triple(triples, c, h)) continue;
    while (cube_all_triple(triples, c, h + 1)) ++h;
    if (!best || h > best->radius) best = CubeCover{c, h};
  }
  return best;
}

}  // namespace

int max_multiplicity(const Curve& c) {
  std::vector<Point> pts = c.path();
  std::sort(pts.begin(), pts.end());
  int best = 0;
  for (std::size_t i = 0; i < pts.size();) {
    std::size_t j = i;
    while (j < pts.size() && pts[j] == pts[i]) ++j;
    best = std::max(best, static_cast<int>(j - i));
    i = j;
  }
  return best;
}

std::vector<Curve> d_set(int s) {
  std::vector<Curve> out;
  for (const auto& u : all_directions(3)) out.push_back(curve_of_power(s, Point{0, 0, 0}, u));
  return out;
}

int coverage_radius(int s, CoverMode mode) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "coverage_radius needs s >= 1");
  std::vector<Segment> segs;
  for (const auto& c : d_set(s))
    for (const auto& x : c.segments()) segs.push_back(x);
  std::sort(segs.begin(), segs.end());
  int h = 0;
  const Coord cap = Coord{1} << s;
  while (h + 1 <= cap) {
    auto target = mode == CoverMode::Touching ? segments_touching(Box{Point{0, 0, 0}, h + 1})
                                              : segments_inside(Box{Point{0, 0, 0}, h + 1});
    bool all = std::all_of(target.begin(), target.end(),
                           [&](const Segment& t) { return std::binary_search(segs.begin(), segs.end(), t); });
    if (!all) break;
    ++h;
  }
  return h;
}

namespace {

struct NearestSink {
  Coord best;
  void point(const Point& p) { best = std::min(best, p.norm_inf()); }
  void gap() {}
};

}  // namespace

Coord complement_distance(int s) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "complement_distance needs s >= 1");
  const Coord g = Coord{1} << s;
  const Point origin{0, 0, 0};
  for (Coord R = 1;; R *= 2) {
    const Box box{origin, R};
    Coord best = R + 1;
    Coord span = floor_div(R + 2 * g, g) + 1;
    for (Coord a = -span; a <= span; ++a)
      for (Coord b = -span; b <= span; ++b)
        for (Coord c = -span; c <= span; ++c) {
          Point x{a * g, b * g, c * g};
          for (int axis = 0; axis < 3; ++axis) {
            Direction u{axis, 1};
            if (x.is_zero() || (x + u.vec(3) * g).is_zero()) continue;
            if (chord_box_distance(x, u, g, box) > g - 1) continue;
            NearestSink sink{x.norm_inf()};
            walk_power(s, x, u, sink, &box);
            best = std::min(best, sink.best);
          }
        }
    if (best <= R) return best;
  }
}

// ---------------------------------------------------------------- approximants and scans

int Approximant::code(const Point& p) const {
  if (p.is_zero()) return at_origin ? matching_code(*at_origin) : -1;
  if (grid >= 0 && p.divisible_by(Coord{1} << grid)) return -1;
  return pairing_code(p);
}

Window Approximant::window(const Box& box) const {
  std::vector<Connexion> cons;
  for (const auto& p : box.points()) {
    int c = code(p);
    if (c < 0) continue;
    for (const auto& [u, v] : all_matchings()[static_cast<std::size_t>(c)].pairs()) cons.push_back(Connexion::make(p, u, v));
  }
  return Window(3, segments_touching(box), std::move(cons), box);
}

namespace {

// Codes over a cube [-R, R]^3, index-addressed.
struct CodeField {
  Coord R;
  std::vector<std::int8_t> codes;
  std::size_t side() const { return static_cast<std::size_t>(2 * R + 1); }
  std::size_t idx(const Point& p) const {
    return (static_cast<std::size_t>(p[0] + R) * side() + static_cast<std::size_t>(p[1] + R)) * side() +
           static_cast<std::size_t>(p[2] + R);
  }
  int at(const Point& p) const { return codes[idx(p)]; }
};

CodeField make_field(const Approximant& E, Coord R, int jobs) {
  CodeField f{R, {}};
  const std::size_t side = f.side();
  f.codes.resize(side * side * side);
  parallel_for(side, jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < side; ++j)
      for (std::size_t k = 0; k < side; ++k) {
        Point p{static_cast<Coord>(i) - R, static_cast<Coord>(j) - R, static_cast<Coord>(k) - R};
        f.codes[(i * side + j) * side + k] = static_cast<std::int8_t>(E.code(p));
      }
  });
  return f;
}

std::vector<Point> shell(Coord r) {
  std::vector<Point> out;
  for (Coord a = -r; a <= r; ++a)
    for (Coord b = -r; b <= r; ++b) {
      if (std::max(std::abs(a), std::abs(b)) == r) {
        for (Coord c = -r; c <= r; ++c) out.push_back(Point{a, b, c});
      } else {
        out.push_back(Point{a, b, -r});
        if (r > 0) out.push_back(Point{a, b, r});
      }
    }
  return out;
}

}  // namespace

std::optional<ScanHit> property_C_scan(const Approximant& E, const Point& x, Coord h, Coord bound, int jobs) {
  const Box home{x, h};
  const CodeField field = make_field(E, bound + h, jobs);
  std::vector<std::pair<Point, int>> ref;
  for (const auto& p : Box{Point{0, 0, 0}, h}.points()) ref.emplace_back(p, E.code(x + p));
  for (Coord r = 0; r <= bound; ++r) {
    auto cand = shell(r);
    std::vector<char> ok(cand.size(), 0);
    parallel_for(cand.size(), jobs, [&](std::size_t i) {
      const Point& y = cand[i];
      if (home.contains(y)) return;
      for (const auto& [p, c] : ref)
        if (field.at(y + p) != c) return;
      ok[i] = 1;
    });
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!ok[i]) continue;
      const Point& y = cand[i];
      auto m = window_match(E.window(home), E.window(Box{y, h}), MatchMode::Translation);
      if (m && m->shift() == y - x) return ScanHit{y, *m};
    }
  }
  return std::nullopt;
}

Report aperiodicity_scan(const Approximant& E, Coord h, Coord w_bound) {
  Report rep("aperiodicity_scan");
  std::int64_t tested = 0, broken = 0;
  for (const auto& w : Box{Point{0, 0, 0}, w_bound}.points()) {
    if (w.is_zero()) continue;
    ++tested;
    std::optional<Point> witness;
    for (const auto& p : Box{Point{0, 0, 0}, h}.points())
      if (E.code(p) != E.code(p + w)) {
        witness = p;
        break;
      }
    if (witness) {
      ++broken;
      if (rep.witnesses.size() < 8) rep.note("w=" + w.str() + " differs at " + witness->str());
    } else {
      rep.fail("window invariant under " + w.str());
    }
  }
  rep.count("translations", tested);
  rep.count("with_mismatch", broken);
  return rep;
}

// ---------------------------------------------------------------- autosimilarity

namespace {

std::optional<Isometry> positive_map(const Curve& from, const std::vector<Point>& to) {
  if (from.path().size() != to.size()) return std::nullopt;
  for (const auto& g : Isometry::rotations(3)) {
    for (bool rev : {false, true}) {
      const Point& target0 = rev ? to.back() : to.front();
      Isometry h = g.with_shift(target0 - g.apply_linear(from.front()));
      bool same = true;
      for (std::size_t i = 0; i < to.size() && same; ++i)
        same = h.apply(from.path()[i]) == (rev ? to[to.size() - 1 - i] : to[i]);
      if (same) return h;
    }
  }
  return std::nullopt;
}

}  // namespace

AutosimilarityResult autosimilarity_split(int s) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "autosimilarity_split needs s >= 1");
  AutosimilarityResult res;
  res.s = s;
  const Point origin{0, 0, 0};
  const Curve big = curve_of_power(s + 1, origin, Direction{0, 1});
  const Curve small = curve_of_power(s, origin, Direction{0, 1});
  const std::size_t L = small.size();
  res.consecutive = big.front() == origin;
  for (std::size_t j = 0; j < 8; ++j) {
    std::vector<Point> run(big.path().begin() + static_cast<std::ptrdiff_t>(j * L),
                           big.path().begin() + static_cast<std::ptrdiff_t>((j + 1) * L) + 1);
    res.piece_maps.push_back(positive_map(small, run));
    res.ok = res.ok && res.piece_maps.back().has_value();
  }
  res.disjoint = self_avoiding(big);
  res.ok = res.ok && res.disjoint && res.consecutive;
  return res;
}

// ---------------------------------------------------------------- Σ refinement

Report lemma26_check() {
  Report rep("lemma26");
  const Point origin{0, 0, 0};
  const auto base = sigma_of_power(1, origin);
  std::int64_t refined = 0, odd = 0, type1 = 0, rotated = 0;
  for (Coord a = 0; a < 4; ++a)
    for (Coord b = 0; b < 4; ++b)
      for (Coord c = 0; c < 4; ++c) {
        Point x{a, b, c};
        if (x.is_zero()) continue;
        auto arcs = sigma_of_power(1, x);
        std::vector<Curve> shifted;
        for (const auto& cv : base) shifted.push_back(cv.translated(x));
        bool ref = refines(window_of_curves(arcs, 3), window_of_curves(shifted, 3));
        std::string reason;
        if (!x.divisible_by(2)) {
          reason = "odd-point splice mismatch";
          ++odd;
        } else if (endpoint_type(x) == 1) {
          reason = "type-1 endpoint";
          ++type1;
        } else {
          reason = "rotated block";
          ++rotated;
        }
        if (ref) {
          ++refined;
          rep.fail("residue " + x.str() + " refines the shifted Sigma_0");
        } else if (x.divisible_by(2)) {
          rep.note("residue " + x.str() + ": " + reason);
        }
      }
  rep.count("residues", 63);
  rep.count("refining", refined);
  rep.count("odd", odd);
  rep.count("type1", type1);
  rep.count("rotated", rotated);
  return rep;
}

CurveBound max_curve_bound(const Point& x) {
  CurveBound cb;
  const Box box{x, 1};
  for (const auto& p : box.points()) {
    if (p == x) continue;
    int out = 0, nonzero = 0;
    for (int i = 0; i < 3; ++i) nonzero += p[i] != x[i];
    for (const auto& d : all_directions(3))
      if (!box.contains(p + d.vec(3))) ++out;
    cb.outgoing += out;
    if (nonzero == 3) ++cb.vertices;
    if (nonzero == 2) ++cb.edge_midpoints;
    if (nonzero == 1) ++cb.face_centers;
  }
  cb.bound = cb.outgoing / 2;
  return cb;
}

// ---------------------------------------------------------------- triple points at scale

Report lemma22_check(std::size_t stride, int jobs) {
  Report rep("lemma22");
  constexpr std::size_t kChords = 16 * 16 * 16 * 3;
  if (stride == 0) stride = 1;
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < kChords; i += stride) picks.push_back(i);
  std::vector<char> ok(picks.size(), 0);
  parallel_for(picks.size(), jobs, [&](std::size_t j) {
    std::size_t i = picks[j];
    int axis = static_cast<int>(i % 3);
    std::size_t cell = i / 3;
    Point x{static_cast<Coord>(cell / 256) * 16, static_cast<Coord>(cell / 16 % 16) * 16,
            static_cast<Coord>(cell % 16) * 16};
    ok[j] = triple_keys(sorted_point_keys(4, x, Direction{axis, 1})).empty() ? 0 : 1;
  });
  std::set<std::pair<Point, int>> classes;
  for (std::size_t j = 0; j < picks.size(); ++j) {
    std::size_t i = picks[j];
    std::size_t cell = i / 3;
    Point x{static_cast<Coord>(cell / 256) * 16, static_cast<Coord>(cell / 16 % 16) * 16,
            static_cast<Coord>(cell % 16) * 16};
    classes.insert({x.mod(32), static_cast<int>(i % 3)});
    if (!ok[j]) rep.fail("curve from " + x.str() + " along e" + std::to_string(i % 3 + 1) + " has no triple point");
  }
  rep.count("chords_total", static_cast<std::int64_t>(kChords));
  rep.count("chords_checked", static_cast<std::int64_t>(picks.size()));
  rep.count("translation_classes_mod_32", static_cast<std::int64_t>(classes.size()));
  return rep;
}

std::optional<CubeCover> best_covered_cube(const Curve& c, Coord grid) {
  std::vector<std::uint64_t> keys;
  for (const auto& p : c.path()) keys.push_back(pack(p));
  std::sort(keys.begin(), keys.end());
  return best_cube_from_triples(triple_keys(keys), grid);
}

std::optional<CubeCover> covered_cube_of_power(int s, const Point& x, Direction u, Coord grid) {
  return best_cube_from_triples(triple_keys(sorted_point_keys(s, x, u)), grid);
}

// ---------------------------------------------------------------- growing a single curve

namespace {

struct ClassCurve {
  Point start;
  Direction dir;
};

std::vector<ClassCurve> power_classes(int s) {
  std::vector<ClassCurve> out;
  const Coord g = Coord{1} << s;
  for (Coord a : {Coord{0}, g})
    for (Coord b : {Coord{0}, g})
      for (Coord c : {Coord{0}, g})
        for (int axis = 0; axis < 3; ++axis) out.push_back({Point{a, b, c}, Direction{axis, 1}});
  return out;
}

std::uint64_t pack_segment(const Segment& s) { return (pack(s.base) << 2) | static_cast<std::uint64_t>(s.axis); }

struct SegSink {
  std::vector<std::uint64_t>* segs;
  Point prev;
  void point(const Point& p) {
    segs->push_back(pack_segment(segment_between(prev, p)));
    prev = p;
  }
  void gap() {}
};

std::vector<std::uint64_t> sorted_segment_keys(int s, const Point& x, Direction u) {
  std::vector<std::uint64_t> segs;
  segs.reserve(std::size_t{1} << (3 * s));
  SegSink sink{&segs, x};
  walk_power(s, x, u, sink);
  std::sort(segs.begin(), segs.end());
  return segs;
}

}  // namespace

GrowResult grow_single_curve(int levels, int s_cap, int jobs) {
  GrowResult res;
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "levels must be >= 1");
  // level 0
  for (int s = 1; s <= s_cap && res.levels.empty(); ++s) {
    auto classes = power_classes(s);
    std::vector<std::optional<CubeCover>> found(classes.size());
    parallel_for(classes.size(), jobs, [&](std::size_t i) {
      found[i] = covered_cube_of_power(s, classes[i].start, classes[i].dir, 1);
    });
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (found[i]) {
        res.levels.push_back({s, classes[i].start, classes[i].dir, Point{0, 0, 0}, Box{found[i]->center, 1}});
        break;
      }
  }
  if (res.levels.empty()) {
    res.exhausted = true;
    res.notice = "no curve of C^s with s <= " + std::to_string(s_cap) + " covers a cube of radius 1";
    return res;
  }
  while (static_cast<int>(res.levels.size()) < levels) {
    const GrowLevel prev = res.levels.back();
    const Coord period = Coord{1} << (prev.power + 1);
    // previous curve in its placed position
    const Point prev_start = prev.chord_start;
    bool grown = false;
    for (int s = prev.power + 1; s <= s_cap && !grown; ++s) {
      auto classes = power_classes(s);
      struct Hit {
        Point y;
        Point shift;
      };
      std::vector<std::optional<Hit>> hits(classes.size());
      parallel_for(classes.size(), jobs, [&](std::size_t i) {
        auto keys = sorted_point_keys(s, classes[i].start, classes[i].dir);
        auto triples = triple_keys(keys);
        keys.clear();
        keys.shrink_to_fit();
        std::vector<std::uint64_t> segs;
        for (auto k : triples) {
          Point y = unpack(k);
          if (!(y - prev.cube.center).divisible_by(period)) continue;
          if (!cube_all_triple(triples, y, prev.cube.radius + 1)) continue;
          Point t = y - prev.cube.center;
          if (segs.empty()) segs = sorted_segment_keys(s, classes[i].start, classes[i].dir);
          // the translated previous curve must sit inside this one
          struct Check {
            const std::vector<std::uint64_t>& segs;
            Point prev;
            bool ok = true;
            void point(const Point& p) {
              ok = ok && std::binary_search(segs.begin(), segs.end(), pack_segment(segment_between(prev, p)));
              prev = p;
            }
            void gap() {}
          } check{segs, prev_start + t};
          walk_power(prev.power, prev_start + t, prev.dir, check);
          if (check.ok) {
            hits[i] = Hit{y, t};
            return;
          }
        }
      });
      for (std::size_t i = 0; i < classes.size(); ++i)
        if (hits[i]) {
          res.levels.push_back({s, classes[i].start, classes[i].dir, hits[i]->shift,
                                Box{hits[i]->y, prev.cube.radius + 1}});
          grown = true;
          break;
        }
    }
    if (!grown) {
      res.exhausted = true;
      res.notice = "bound exhausted at level " + std::to_string(res.levels.size()) + " with s_cap " +
                   std::to_string(s_cap);
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------- Γ funnel

Dyadic distance_to_curves(const DyadicPoint& z, const std::vector<Curve>& D) {
  std::optional<Dyadic> best;
  for (const auto& c : D)
    for (const auto& s : c.segments()) {
      Dyadic d = cheb_distance(z, s);
      if (!best || d < *best) best = d;
    }
  if (!best) throw Error(ErrorCode::InvalidArgument, "empty curve set");
  return *best;
}

FunnelResult gamma_funnel_check(const std::vector<Curve>& D, int n_cap) {
  FunnelResult res;
  if (D.empty()) throw Error(ErrorCode::InvalidArgument, "empty curve set");
  std::vector<DyadicPoint> probes{DyadicPoint(Point{0, 0, 0})};
  for (const auto& c : D) probes.emplace_back(c.front());
  std::vector<Curve> cur = D;
  for (int m = 0; m <= n_cap; ++m) {
    if (m > 0) {
      auto next = deconvolve(covering_C(), cur);
      // contraction of distances under Γ
      for (auto& z : probes) {
        Dyadic before = distance_to_curves(z, cur);
        DyadicPoint zh = z.halved();
        Dyadic after = distance_to_curves(zh, next);
        if (after > (before + Dyadic(1)).half()) {
          res.contraction_ok = false;
          res.log.push_back("contraction fails at level " + std::to_string(m) + " for " + z.str());
        }
        z = zh;
      }
      cur = std::move(next);
    }
    std::set<Point> cands;
    for (const auto& p : cur.front().path())
      for (const auto& q : Box{p, 1}.points()) cands.insert(q);
    for (const auto& x : cands) {
      const Box b{x, 1};
      bool all = std::all_of(cur.begin(), cur.end(), [&](const Curve& c) {
        return std::any_of(c.path().begin(), c.path().end(), [&](const Point& p) { return b.contains(p); });
      });
      if (all) {
        res.found = true;
        res.n = m;
        res.x = x;
        res.log.push_back("level " + std::to_string(m) + ": all curves meet P_{" + x.str() + ",1}");
        return res;
      }
    }
    res.log.push_back("level " + std::to_string(m) + ": no common unit cube");
  }
  return res;
}

}  // namespace foldcurve
