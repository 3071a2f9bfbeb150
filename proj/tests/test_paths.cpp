#include <cmath>

#include "doctest.h"
#include "mono/path.hpp"

using namespace mono;

TEST_CASE("circle is closed and winds once") {
  const Path c = circle(Complex(0.5, -0.25), 2.0);
  CHECK(c.closed());
  CHECK(std::abs(c.point(0.0) - Complex(2.5, -0.25)) <= 1e-12);
  CHECK(std::abs(c.point(0.5) - Complex(-1.5, -0.25)) <= 1e-12);
  // velocity is i * 2*pi * (z - center)
  const Complex z = c.point(0.3), v = c.velocity(0.3);
  CHECK(std::abs(v - Complex(0, 2 * M_PI) * (z - Complex(0.5, -0.25))) <= 1e-12);
}

TEST_CASE("open segments are not closed") {
  CHECK_FALSE(line_path(Complex(0, 0), Complex(1, 1)).closed());
}

TEST_CASE("polyline squares close and break at corners") {
  const Complex pts[] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {1, 1}};
  const Path sq = polyline(pts);
  CHECK(sq.closed());
  CHECK(sq.size() == 4);
  CHECK(sq.breakpoints() == std::vector<double>{0.25, 0.5, 0.75});
}

TEST_CASE("mismatched segments are rejected") {
  CHECK_THROWS(Path({Segment::line({0, 0}, {1, 0}),
                     Segment::line({2, 0}, {3, 0})}));
}

TEST_CASE("reversal is an involution with identical sample points") {
  const Path p({Segment::line({0, 0}, {1, 0}),
                Segment::arc({1, 1}, 1.0, -M_PI / 2, 0.0),
                Segment::cubic({2, 1}, {2.5, 1.5}, {2.5, 2.5}, {2, 3})});
  const Path q = p.reversed().reversed();
  for (double s : {0.0, 0.1, 0.333, 0.5, 0.75, 0.999, 1.0}) {
    CHECK(p.point(s) == q.point(s));
    CHECK(p.velocity(s) == q.velocity(s));
  }
  // reversal flips orientation
  CHECK(std::abs(p.reversed().point(0.25) - p.point(0.75)) <= 1e-12);
}

TEST_CASE("lasso starts and ends at the base point") {
  const Path l = lasso(Complex(2, 1), Complex(0, 0), 0.5);
  CHECK(l.closed());
  CHECK(std::abs(l.start() - Complex(2, 1)) <= 1e-12);
  CHECK(l.size() == 3);
}

TEST_CASE("join concatenates and checks endpoints") {
  const Path a = line_path({0, 0}, {1, 0});
  const Path b = line_path({1, 0}, {1, 1});
  const Path ab = join(a, b);
  CHECK(ab.size() == 2);
  CHECK(std::abs(ab.point(0.75) - Complex(1, 0.5)) <= 1e-12);
  CHECK_THROWS(join(a, line_path({5, 5}, {6, 6})));
}
