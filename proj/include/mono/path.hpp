#ifndef MONO_PATH_HPP
#define MONO_PATH_HPP

#include <span>
#include <vector>

#include "mono/numerics.hpp"

namespace mono {

/// One smooth parametrized arc in C with analytic position and derivative.
/// Local parameter u runs over [0,1].
class Segment {
public:
  enum class Kind { line, arc, bezier };

  static Segment line(Complex a, Complex b);
  /// Circular arc z(u) = center + radius * exp(i*(angle0 + u*(angle1-angle0))).
  /// Angles may wind any number of turns; angle1 > angle0 is counterclockwise.
  static Segment arc(Complex center, double radius, double angle0, double angle1);
  static Segment cubic(Complex p0, Complex p1, Complex p2, Complex p3);

  Complex point(double u) const;
  Complex velocity(double u) const;  // dz/du
  Segment reversed() const;
  Complex start() const { return point(0.0); }
  Complex end() const { return point(1.0); }
  Kind kind() const { return kind_; }

private:
  Segment() = default;
  Kind kind_ = Kind::line;
  Complex p_[4];      // line: a,b; bezier: control points
  double radius_ = 0, ang0_ = 0, ang1_ = 0;  // arc
};

/// Piecewise-smooth curve in C. Consecutive segments must share endpoints;
/// the global parameter s in [0,1] gives each segment an equal share, so the
/// interior junctions i/m are the breakpoints.
class Path {
public:
  explicit Path(std::vector<Segment> segments);

  Complex point(double s) const;
  Complex velocity(double s) const;  // dz/ds (chain rule over the rescaling)
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool closed() const { return closed_; }
  Complex start() const { return segments_.front().start(); }
  Complex end() const { return segments_.back().end(); }
  std::size_t size() const { return segments_.size(); }
  const Segment& segment(std::size_t i) const { return segments_[i]; }

  Path reversed() const;

private:
  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;
  bool closed_ = false;
};

/// Orientation reversal; involutive.
inline Path reverse_path(const Path& p) { return p.reversed(); }

/// Concatenation: a followed by b. Endpoints must match within 1e-9.
Path join(const Path& a, const Path& b);

/// Counterclockwise circle starting at center + radius.
Path circle(Complex center, double radius);

/// The standard generator loop: from base, straight to the circle of the
/// given radius around the point, once around counterclockwise, and back.
Path lasso(Complex base, Complex around, double radius);

/// Straight segments through the listed points (open or closed).
Path polyline(std::span<const Complex> points);

Path line_path(Complex a, Complex b);

}  // namespace mono

#endif
