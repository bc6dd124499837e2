#pragma once

#include <vector>

#include "foldcurve/blocks.hpp"
#include "foldcurve/curve.hpp"
#include "foldcurve/report.hpp"

namespace foldcurve {

/// All one-segment curves: (k, period) = (1, 1).
PeriodicCurveSet identity_covering(int dim);

/// Property (H) for (k, l), checked on P_{0,2l}.
Report check_H(const PeriodicCurveSet& A, Coord k, Coord l);

/// A ∗ B for a finite set of disjoint self-avoiding curves B.
std::vector<Curve> convolve(const PeriodicCurveSet& A, const std::vector<Curve>& B);
/// A ∗ B for a periodic B.  The stored period is the smallest one the
/// construction guarantees, lcm(k_A·l_B, l_A).
PeriodicCurveSet convolve(const PeriodicCurveSet& A, const PeriodicCurveSet& B);
PeriodicCurveSet power(const PeriodicCurveSet& A, int s);

/// Walks the curve of C^s from x to x + 2^s·u without materializing it.
/// The sink gets point(p) for every path point after x, in order, and gap()
/// when a sub-curve lying entirely outside `prune` was skipped; the point
/// following a gap is the end of the skipped piece.
template <class Sink>
void walk_power(int s, const Point& x, Direction u, Sink& sink, const Box* prune = nullptr);

Curve curve_of_power(int s, const Point& x, Direction u);

/// restrict(C^s, box) through pruned enumeration of the curves of C^s.
Window power_window(int s, const Box& box);

/// Chebyshev distance between the chord [x, x + len·u] and a box.
Coord chord_box_distance(const Point& x, Direction u, Coord len, const Box& box);

/// Γ for A: each piece between points of kZ^n is replaced by its chord, then
/// scaled by 1/k.  Every curve must split into complete pieces of A.
std::vector<Curve> deconvolve(const PeriodicCurveSet& A, const std::vector<Curve>& D);
/// Window form: only complete pieces are collapsed.  When W has a region
/// P_{c,h}, the result is restricted to the part that is fully determined.
Window deconvolve(const PeriodicCurveSet& A, const Window& W);

/// Ω_{s,x}: drops connexions at x + k^s Z^n.
Window omega(int s, const Point& x, const Window& E, Coord k = 2);

/// Σ_{s,x}: arcs starting at x inside curves of E, each capped at 8^s segments.
std::vector<Curve> sigma(int s, const Point& x, const Window& E);
/// Σ_{s,x}(C^s), read from a window of C^s large enough for the cap.
std::vector<Curve> sigma_of_power(int s, const Point& x);

// ---------------------------------------------------------------- implementation

namespace detail {

template <class Sink>
void walk_power_rec(int s, const Point& x, Direction u, Sink& sink, const Box* prune) {
  if (s == 0) {
    sink.point(x + u.vec(3));
    return;
  }
  const Coord scale = Coord{1} << (s - 1);
  const auto& steps = lookup_steps(x.div_exact(scale), u);
  Point p = x;
  for (const Direction& d : steps) {
    if (prune && chord_box_distance(p, d, scale, *prune) > scale - 1) {
      p += d.vec(3) * scale;
      sink.gap();
      sink.point(p);
      continue;
    }
    walk_power_rec(s - 1, p, d, sink, prune);
    p += d.vec(3) * scale;
  }
}

}  // namespace detail

template <class Sink>
void walk_power(int s, const Point& x, Direction u, Sink& sink, const Box* prune) {
  const Coord scale = Coord{1} << s;
  if (!x.divisible_by(scale))
    throw Error(ErrorCode::InvalidArgument, "chord start " + x.str() + " is not on the 2^s grid");
  detail::walk_power_rec(s, x, u, sink, prune);
}

}  // namespace foldcurve
