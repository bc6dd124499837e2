#pragma once

// Exact lattice geometry: points of Z^n, dyadic points, unit directions,
// unit segments, boxes P_{x,h} and lattice isometries.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace foldcurve {

inline constexpr int kMaxDim = 4;
using Coord = std::int64_t;

enum class ErrorCode {
  InvalidArgument = 1,
  NotAdjacent,
  Backtrack,
  Precondition,
  Branching,
  Deconvolution,
  Io,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Floor division and non-negative remainder for any sign of `a` (b > 0).
constexpr Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
constexpr Coord floor_mod(Coord a, Coord b) { return a - floor_div(a, b) * b; }

class Point {
 public:
  Point() = default;
  explicit Point(int dim);
  Point(std::initializer_list<Coord> coords);

  static Point unit(int dim, int axis, int sign = 1);

  int dim() const { return dim_; }
  Coord operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Coord& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator-() const;
  Point operator*(Coord f) const;
  Point& operator+=(const Point& o);

  /// Chebyshev norm.
  Coord norm_inf() const;
  bool divisible_by(Coord k) const;
  Point div_exact(Coord k) const;
  /// Componentwise non-negative remainder.
  Point mod(Coord k) const;
  bool is_zero() const;

  std::string str() const;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::uint8_t dim_ = 0;
  std::array<Coord, kMaxDim> c_{};
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
};

/// A dyadic rational num / 2^exp, kept reduced (num odd or exp == 0).
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(Coord v) : num_(v), exp_(0) {}  // NOLINT: implicit from integers
  static Dyadic make(Coord num, int exp);

  Coord num() const { return num_; }
  int exp() const { return exp_; }
  bool is_integer() const { return exp_ == 0; }
  double to_double() const;

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator-() const { return make(-num_, exp_); }
  Dyadic operator*(const Dyadic& o) const;
  /// Exact halving.
  Dyadic half() const { return make(num_, exp_ + 1); }
  Dyadic abs() const { return make(num_ < 0 ? -num_ : num_, exp_); }
  /// Numerator when expressed over 2^e (e >= exp()).
  Coord scaled_to(int e) const;

  std::string str() const;

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }

 private:
  Coord num_ = 0;
  int exp_ = 0;
};

class DyadicPoint {
 public:
  DyadicPoint() = default;
  explicit DyadicPoint(const Point& p);
  DyadicPoint(std::initializer_list<Dyadic> coords);

  int dim() const { return dim_; }
  const Dyadic& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Dyadic& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  DyadicPoint halved() const;
  std::string str() const;

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  std::uint8_t dim_ = 0;
  std::array<Dyadic, kMaxDim> c_{};
};

/// One of the 2n unit directions e_i / ē_i. `axis` is 0-based.
struct Direction {
  int axis = 0;
  int sign = 1;

  static Direction from_index(int index) { return {index / 2, (index % 2) ? -1 : 1}; }
  /// Position in the order e1, ē1, e2, ē2, ...
  int index() const { return 2 * axis + (sign < 0 ? 1 : 0); }
  /// Signed 1-based encoding used by the file formats (+1, -1, +2, ...).
  int code() const { return sign * (axis + 1); }
  static Direction from_code(int code);
  Direction opposite() const { return {axis, -sign}; }
  Point vec(int dim) const { return Point::unit(dim, axis, sign); }
  /// "e1" or "ē1".
  std::string name() const;

  friend auto operator<=>(const Direction& a, const Direction& b) {
    return a.index() <=> b.index();
  }
  friend bool operator==(const Direction&, const Direction&) = default;
};

/// Direction of q - p when p, q are lattice-adjacent.
Direction direction_between(const Point& p, const Point& q);
bool adjacent(const Point& p, const Point& q);
std::vector<Direction> all_directions(int dim);

/// The unit segment [base, base + e_axis].
struct Segment {
  Point base;
  int axis = 0;

  Point tip() const { return base + Point::unit(base.dim(), axis); }
  bool has_endpoint(const Point& p) const { return p == base || p == tip(); }
  std::string str() const;

  friend auto operator<=>(const Segment&, const Segment&) = default;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentHash {
  std::size_t operator()(const Segment& s) const noexcept;
};

Segment segment_between(const Point& p, const Point& q);

/// The closed box P_{center,radius}.
struct Box {
  Point center;
  Coord radius = 1;

  bool contains(const Point& p) const;
  bool contains(const DyadicPoint& p) const;
  /// True iff the closed segment meets the closed box.
  bool touches(const Segment& s) const;
  /// True iff the whole segment lies in the box.
  bool contains(const Segment& s) const;
  std::vector<Point> points() const;
  Box grown(Coord by) const { return {center, radius + by}; }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Exact Chebyshev distance from x to the closed segment S.
Dyadic cheb_distance(const DyadicPoint& x, const Segment& s);
Coord cheb_distance(const Point& x, const Segment& s);

/// Segments meeting the closed box, sorted by (base, axis).
std::vector<Segment> segments_touching(const Box& box);
/// Segments contained in the closed box, sorted.
std::vector<Segment> segments_inside(const Box& box);

/// x -> linear * x + shift with a signed-permutation linear part.
class Isometry {
 public:
  Isometry() = default;
  explicit Isometry(int dim);  // identity
  /// images[i] is the image of e_i.
  Isometry(const std::vector<Direction>& images, Point shift);

  static Isometry translation(const Point& t);
  /// ρ: e1 -> e2 -> e3 -> e1.
  static Isometry rho();
  /// σ: e1 -> ē2, e2 -> ē1, e3 -> ē3.
  static Isometry sigma();
  /// All signed permutations of the given dimension, fixed order.
  static std::vector<Isometry> linear_group(int dim);
  /// The determinant +1 subset of linear_group, same order.
  static std::vector<Isometry> rotations(int dim);

  int dim() const { return shift_.dim(); }
  const Point& shift() const { return shift_; }
  Direction image(Direction d) const;
  int determinant() const;
  bool positive() const { return determinant() == 1; }
  bool is_identity() const;

  Point apply(const Point& p) const;
  Point apply_linear(const Point& p) const;
  Segment apply(const Segment& s) const;

  Isometry with_shift(const Point& t) const;
  /// (*this) ∘ other.
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const;

  std::string str() const;

  friend bool operator==(const Isometry&, const Isometry&) = default;

 private:
  // axis_[i], sign_[i]: image of e_i is sign_[i] * e_{axis_[i]}.
  std::array<std::int8_t, kMaxDim> axis_{};
  std::array<std::int8_t, kMaxDim> sign_{};
  Point shift_;
};

}  // namespace foldcurve
