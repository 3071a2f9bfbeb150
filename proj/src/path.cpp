#include "mono/path.hpp"

#include <cmath>
#include <stdexcept>

namespace mono {

Segment Segment::line(Complex a, Complex b) {
  Segment s;
  s.kind_ = Kind::line;
  s.p_[0] = a;
  s.p_[1] = b;
  return s;
}

Segment Segment::arc(Complex center, double radius, double angle0, double angle1) {
  if (!(radius > 0)) throw std::invalid_argument("arc radius must be positive");
  Segment s;
  s.kind_ = Kind::arc;
  s.p_[0] = center;
  s.radius_ = radius;
  s.ang0_ = angle0;
  s.ang1_ = angle1;
  return s;
}

Segment Segment::cubic(Complex p0, Complex p1, Complex p2, Complex p3) {
  Segment s;
  s.kind_ = Kind::bezier;
  s.p_[0] = p0;
  s.p_[1] = p1;
  s.p_[2] = p2;
  s.p_[3] = p3;
  return s;
}

Complex Segment::point(double u) const {
  switch (kind_) {
    case Kind::line:
      return p_[0] + u * (p_[1] - p_[0]);
    case Kind::arc: {
      const double th = ang0_ + u * (ang1_ - ang0_);
      return p_[0] + radius_ * Complex(std::cos(th), std::sin(th));
    }
    case Kind::bezier: {
      const double v = 1.0 - u;
      return v * v * v * p_[0] + 3.0 * v * v * u * p_[1] +
             3.0 * v * u * u * p_[2] + u * u * u * p_[3];
    }
  }
  return {};
}

Complex Segment::velocity(double u) const {
  switch (kind_) {
    case Kind::line:
      return p_[1] - p_[0];
    case Kind::arc: {
      const double th = ang0_ + u * (ang1_ - ang0_);
      return (ang1_ - ang0_) * radius_ * Complex(-std::sin(th), std::cos(th));
    }
    case Kind::bezier: {
      const double v = 1.0 - u;
      return 3.0 * v * v * (p_[1] - p_[0]) + 6.0 * v * u * (p_[2] - p_[1]) +
             3.0 * u * u * (p_[3] - p_[2]);
    }
  }
  return {};
}

Segment Segment::reversed() const {
  Segment s = *this;
  switch (kind_) {
    case Kind::line:
      std::swap(s.p_[0], s.p_[1]);
      break;
    case Kind::arc:
      std::swap(s.ang0_, s.ang1_);
      break;
    case Kind::bezier:
      std::swap(s.p_[0], s.p_[3]);
      std::swap(s.p_[1], s.p_[2]);
      break;
  }
  return s;
}

Path::Path(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("path needs at least one segment");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    const Complex gap = segments_[i + 1].start() - segments_[i].end();
    const double scale = std::max(1.0, std::abs(segments_[i].end()));
    if (std::abs(gap) > 1e-9 * scale)
      throw std::invalid_argument("consecutive path segments do not share endpoints");
  }
  const std::size_t m = segments_.size();
  breakpoints_.reserve(m - 1);
  for (std::size_t i = 1; i < m; ++i)
    breakpoints_.push_back(static_cast<double>(i) / static_cast<double>(m));
  closed_ = std::abs(end() - start()) <= 1e-12 * std::max(1.0, std::abs(start()));
}

Complex Path::point(double s) const {
  const double m = static_cast<double>(segments_.size());
  auto i = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, s) * m),
                                 segments_.size() - 1);
  return segments_[i].point(s * m - static_cast<double>(i));
}

Complex Path::velocity(double s) const {
  const double m = static_cast<double>(segments_.size());
  auto i = std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, s) * m),
                                 segments_.size() - 1);
  return m * segments_[i].velocity(s * m - static_cast<double>(i));
}

Path Path::reversed() const {
  std::vector<Segment> rev;
  rev.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    rev.push_back(it->reversed());
  return Path(std::move(rev));
}

Path join(const Path& a, const Path& b) {
  if (std::abs(a.end() - b.start()) > 1e-9 * std::max(1.0, std::abs(a.end())))
    throw std::invalid_argument("paths to join do not share an endpoint");
  std::vector<Segment> segs;
  segs.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) segs.push_back(a.segment(i));
  for (std::size_t i = 0; i < b.size(); ++i) segs.push_back(b.segment(i));
  return Path(std::move(segs));
}

Path circle(Complex center, double radius) {
  return Path({Segment::arc(center, radius, 0.0, 2.0 * M_PI)});
}

Path lasso(Complex base, Complex around, double radius) {
  const Complex dir = base - around;
  const double dist = std::abs(dir);
  if (dist <= radius)
    throw std::invalid_argument("lasso base point lies inside the circle");
  const Complex entry = around + radius * dir / dist;
  const double th = std::arg(dir);
  return Path({Segment::line(base, entry),
               Segment::arc(around, radius, th, th + 2.0 * M_PI),
               Segment::line(entry, base)});
}

Path polyline(std::span<const Complex> points) {
  if (points.size() < 2)
    throw std::invalid_argument("polyline needs at least two points");
  std::vector<Segment> segs;
  segs.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    segs.push_back(Segment::line(points[i], points[i + 1]));
  return Path(std::move(segs));
}

Path line_path(Complex a, Complex b) { return Path({Segment::line(a, b)}); }

}  // namespace mono
