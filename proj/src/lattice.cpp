#include "foldcurve/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace foldcurve {

// ---------------------------------------------------------------- Point

Point::Point(int dim) : dim_(static_cast<std::uint8_t>(dim)) {
  if (dim < 1 || dim > kMaxDim)
    throw Error(ErrorCode::InvalidArgument, "unsupported dimension " + std::to_string(dim));
}

Point::Point(std::initializer_list<Coord> coords) : Point(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point Point::unit(int dim, int axis, int sign) {
  Point p(dim);
  p[axis] = sign;
  return p;
}

Point Point::operator+(const Point& o) const {
  Point r = *this;
  r += o;
  return r;
}

Point& Point::operator+=(const Point& o) {
  for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Point Point::operator-(const Point& o) const {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] -= o.c_[i];
  return r;
}

Point Point::operator-() const {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] = -r.c_[i];
  return r;
}

Point Point::operator*(Coord f) const {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] *= f;
  return r;
}

Coord Point::norm_inf() const {
  Coord m = 0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, c_[i] < 0 ? -c_[i] : c_[i]);
  return m;
}

bool Point::divisible_by(Coord k) const {
  for (int i = 0; i < dim_; ++i)
    if (floor_mod(c_[i], k) != 0) return false;
  return true;
}

Point Point::div_exact(Coord k) const {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] = floor_div(c_[i], k);
  return r;
}

Point Point::mod(Coord k) const {
  Point r = *this;
  for (int i = 0; i < dim_; ++i) r.c_[i] = floor_mod(c_[i], k);
  return r;
}

bool Point::is_zero() const {
  for (int i = 0; i < dim_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::string Point::str() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s + ")";
}

std::size_t PointHash::operator()(const Point& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.dim());
  for (int i = 0; i < p.dim(); ++i)
    h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(p[i]) + 0x632BE59BD9B4E019ULL;
  return h ^ (h >> 29);
}

// ---------------------------------------------------------------- Dyadic

Dyadic Dyadic::make(Coord num, int exp) {
  if (num == 0) return Dyadic{};
  while (exp > 0 && (num % 2) == 0) {
    num /= 2;
    --exp;
  }
  while (exp < 0) {
    num *= 2;
    ++exp;
  }
  Dyadic d;
  d.num_ = num;
  d.exp_ = exp;
  return d;
}

Coord Dyadic::scaled_to(int e) const {
  if (e < exp_) throw Error(ErrorCode::InvalidArgument, "dyadic rescale would lose bits");
  return num_ * (Coord{1} << (e - exp_));
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  int e = std::max(exp_, o.exp_);
  return make(scaled_to(e) + o.scaled_to(e), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const { return make(num_ * o.num_, exp_ + o.exp_); }

double Dyadic::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(Coord{1} << exp_);
}

std::string Dyadic::str() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(Coord{1} << exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int e = std::max(a.exp_, b.exp_);
  return a.scaled_to(e) <=> b.scaled_to(e);
}

DyadicPoint::DyadicPoint(const Point& p) : dim_(static_cast<std::uint8_t>(p.dim())) {
  for (int i = 0; i < p.dim(); ++i) c_[i] = Dyadic(p[i]);
}

DyadicPoint::DyadicPoint(std::initializer_list<Dyadic> coords)
    : dim_(static_cast<std::uint8_t>(coords.size())) {
  if (coords.size() < 1 || coords.size() > static_cast<std::size_t>(kMaxDim))
    throw Error(ErrorCode::InvalidArgument, "unsupported dimension");
  std::copy(coords.begin(), coords.end(), c_.begin());
}

DyadicPoint DyadicPoint::halved() const {
  DyadicPoint r = *this;
  for (int i = 0; i < dim_ && i < kMaxDim; ++i) r.c_[i] = c_[i].half();
  return r;
}

std::string DyadicPoint::str() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ',';
    s += c_[i].str();
  }
  return s + ")";
}

// ---------------------------------------------------------------- Direction

Direction Direction::from_code(int code) {
  if (code == 0 || code > kMaxDim || code < -kMaxDim)
    throw Error(ErrorCode::Parse, "bad direction code " + std::to_string(code));
  return {(code > 0 ? code : -code) - 1, code > 0 ? 1 : -1};
}

std::string Direction::name() const {
  // U+0113 (ē) for negative directions.
  return std::string(sign < 0 ? "\xC4\x93" : "e") + std::to_string(axis + 1);
}

bool adjacent(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) return false;
  int diffs = 0;
  for (int i = 0; i < p.dim(); ++i) {
    Coord d = q[i] - p[i];
    if (d == 0) continue;
    if (d != 1 && d != -1) return false;
    ++diffs;
  }
  return diffs == 1;
}

Direction direction_between(const Point& p, const Point& q) {
  if (!adjacent(p, q))
    throw Error(ErrorCode::NotAdjacent, "points " + p.str() + " and " + q.str() + " are not adjacent");
  for (int i = 0; i < p.dim(); ++i)
    if (q[i] != p[i]) return {i, q[i] > p[i] ? 1 : -1};
  return {};
}

std::vector<Direction> all_directions(int dim) {
  std::vector<Direction> out;
  for (int i = 0; i < 2 * dim; ++i) out.push_back(Direction::from_index(i));
  return out;
}

// ---------------------------------------------------------------- Segment

Segment segment_between(const Point& p, const Point& q) {
  Direction d = direction_between(p, q);
  return {d.sign > 0 ? p : q, d.axis};
}

std::string Segment::str() const { return "[" + base.str() + "," + tip().str() + "]"; }

std::size_t SegmentHash::operator()(const Segment& s) const noexcept {
  return PointHash{}(s.base) * 31 + static_cast<std::size_t>(s.axis);
}

// ---------------------------------------------------------------- Box

bool Box::contains(const Point& p) const {
  for (int i = 0; i < p.dim(); ++i) {
    Coord d = p[i] - center[i];
    if (d > radius || d < -radius) return false;
  }
  return true;
}

bool Box::contains(const DyadicPoint& p) const {
  for (int i = 0; i < p.dim(); ++i) {
    Dyadic d = (p[i] - Dyadic(center[i])).abs();
    if (d > Dyadic(radius)) return false;
  }
  return true;
}

bool Box::touches(const Segment& s) const {
  // A unit lattice segment meets an integer box iff one endpoint lies in it.
  return contains(s.base) || contains(s.tip());
}

bool Box::contains(const Segment& s) const { return contains(s.base) && contains(s.tip()); }

std::vector<Point> Box::points() const {
  const int n = center.dim();
  std::vector<Point> out;
  Point p = center;
  for (int i = 0; i < n; ++i) p[i] = center[i] - radius;
  while (true) {
    out.push_back(p);
    int i = n - 1;
    while (i >= 0 && p[i] == center[i] + radius) {
      p[i] = center[i] - radius;
      --i;
    }
    if (i < 0) break;
    ++p[i];
  }
  return out;
}

Dyadic cheb_distance(const DyadicPoint& x, const Segment& s) {
  if (x.dim() != s.base.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  Dyadic best(0);
  for (int i = 0; i < x.dim(); ++i) {
    Dyadic lo(s.base[i]);
    Dyadic hi = i == s.axis ? Dyadic(s.base[i] + 1) : lo;
    Dyadic d(0);
    if (x[i] < lo) d = lo - x[i];
    else if (x[i] > hi) d = x[i] - hi;
    if (d > best) best = d;
  }
  return best;
}

Coord cheb_distance(const Point& x, const Segment& s) {
  Coord best = 0;
  for (int i = 0; i < x.dim(); ++i) {
    Coord lo = s.base[i];
    Coord hi = i == s.axis ? lo + 1 : lo;
    Coord d = x[i] < lo ? lo - x[i] : (x[i] > hi ? x[i] - hi : 0);
    best = std::max(best, d);
  }
  return best;
}

namespace {

std::vector<Segment> enumerate_segments(const Box& box, bool inside_only) {
  const int n = box.center.dim();
  std::vector<Segment> out;
  for (int axis = 0; axis < n; ++axis) {
    Point lo = box.center, hi = box.center;
    for (int i = 0; i < n; ++i) {
      lo[i] -= box.radius;
      hi[i] += box.radius;
    }
    if (inside_only) hi[axis] -= 1;
    else lo[axis] -= 1;
    Point p = lo;
    while (true) {
      out.push_back({p, axis});
      int i = n - 1;
      while (i >= 0 && p[i] == hi[i]) {
        p[i] = lo[i];
        --i;
      }
      if (i < 0) break;
      ++p[i];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Segment> segments_touching(const Box& box) { return enumerate_segments(box, false); }

std::vector<Segment> segments_inside(const Box& box) { return enumerate_segments(box, true); }

// ---------------------------------------------------------------- Isometry

Isometry::Isometry(int dim) : shift_(dim) {
  for (int i = 0; i < dim; ++i) {
    axis_[i] = static_cast<std::int8_t>(i);
    sign_[i] = 1;
  }
}

Isometry::Isometry(const std::vector<Direction>& images, Point shift) : shift_(shift) {
  const int n = shift.dim();
  if (static_cast<int>(images.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "isometry needs one image per axis");
  std::array<bool, kMaxDim> used{};
  for (int i = 0; i < n; ++i) {
    if (images[i].axis < 0 || images[i].axis >= n || used[images[i].axis])
      throw Error(ErrorCode::InvalidArgument, "isometry linear part is not a signed permutation");
    used[images[i].axis] = true;
    axis_[i] = static_cast<std::int8_t>(images[i].axis);
    sign_[i] = static_cast<std::int8_t>(images[i].sign);
  }
}

Isometry Isometry::translation(const Point& t) {
  Isometry g(t.dim());
  g.shift_ = t;
  return g;
}

Isometry Isometry::rho() {
  return Isometry({{1, 1}, {2, 1}, {0, 1}}, Point{0, 0, 0});
}

Isometry Isometry::sigma() {
  return Isometry({{1, -1}, {0, -1}, {2, -1}}, Point{0, 0, 0});
}

std::vector<Isometry> Isometry::linear_group(int dim) {
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Isometry> out;
  do {
    for (int mask = 0; mask < (1 << dim); ++mask) {
      std::vector<Direction> images;
      for (int i = 0; i < dim; ++i) images.push_back({perm[i], (mask >> i) & 1 ? -1 : 1});
      out.emplace_back(images, Point(dim));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Isometry> Isometry::rotations(int dim) {
  std::vector<Isometry> out;
  for (auto& g : linear_group(dim))
    if (g.positive()) out.push_back(g);
  return out;
}

Direction Isometry::image(Direction d) const {
  return {axis_[d.axis], sign_[d.axis] * d.sign};
}

int Isometry::determinant() const {
  const int n = dim();
  int det = 1;
  for (int i = 0; i < n; ++i) det *= sign_[i];
  // permutation parity by inversion count
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (axis_[i] > axis_[j]) det = -det;
  return det;
}

bool Isometry::is_identity() const { return *this == Isometry(dim()); }

Point Isometry::apply_linear(const Point& p) const {
  Point r(p.dim());
  for (int i = 0; i < p.dim(); ++i) r[axis_[i]] += sign_[i] * p[i];
  return r;
}

Point Isometry::apply(const Point& p) const {
  if (p.dim() != dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  return apply_linear(p) + shift_;
}

Segment Isometry::apply(const Segment& s) const {
  return segment_between(apply(s.base), apply(s.tip()));
}

Isometry Isometry::with_shift(const Point& t) const {
  Isometry g = *this;
  g.shift_ = t;
  return g;
}

Isometry Isometry::compose(const Isometry& other) const {
  // (this ∘ other)(x) = L(L' x + t') + t
  Isometry r(dim());
  for (int i = 0; i < dim(); ++i) {
    Direction d = image(other.image({i, 1}));
    r.axis_[i] = static_cast<std::int8_t>(d.axis);
    r.sign_[i] = static_cast<std::int8_t>(d.sign);
  }
  r.shift_ = apply(other.shift_);
  return r;
}

Isometry Isometry::inverse() const {
  Isometry r(dim());
  for (int i = 0; i < dim(); ++i) {
    r.axis_[axis_[i]] = static_cast<std::int8_t>(i);
    r.sign_[axis_[i]] = sign_[i];
  }
  r.shift_ = -r.apply_linear(shift_);
  return r;
}

std::string Isometry::str() const {
  std::ostringstream os;
  os << "{";
  for (int i = 0; i < dim(); ++i) {
    if (i) os << ",";
    os << "e" << (i + 1) << "->" << image({i, 1}).name();
  }
  os << "; shift " << shift_.str() << "}";
  return os.str();
}

}  // namespace foldcurve
