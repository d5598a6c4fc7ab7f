#include "fdisac/array_geometry.hpp"

#include <cmath>
#include <string>

#include "fdisac/units.hpp"

namespace fdisac {

namespace {

double wrap_two_pi(double angle) {
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a value just below a multiple of 2 pi can round up to 2 pi.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

}  // namespace

Direction Direction::normalized() const {
  double t = wrap_two_pi(theta);
  double p = phi;
  if (t > kPi) {
    t = kTwoPi - t;
    p += kPi;
  }
  return Direction{t, wrap_two_pi(p)};
}

Vec3 Direction::unit_vector() const {
  const double st = std::sin(theta);
  return Vec3(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

ArrayLayout::ArrayLayout(std::vector<Vec3> elements, double wavelength)
    : elements_(std::move(elements)), wavelength_(wavelength) {
  if (elements_.empty()) throw InvalidArgument("array layout needs at least one element");
  if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_))
    throw InvalidArgument("wavelength must be positive and finite");
  for (const auto& u : elements_) {
    if (!u.allFinite()) throw InvalidArgument("array element coordinates must be finite");
  }
}

ArrayLayout ArrayLayout::transformed(const Eigen::Matrix3d& rotation, const Vec3& offset) const {
  std::vector<Vec3> moved;
  moved.reserve(elements_.size());
  for (const auto& u : elements_) moved.emplace_back(rotation * u + offset);
  return ArrayLayout(std::move(moved), wavelength_);
}

double circular_radius(int count, double wavelength) {
  return static_cast<double>(count) * wavelength / (4.0 * kPi);
}

ArrayLayout circular_layout(int count, double wavelength) {
  if (count < 1) throw InvalidArgument("circular_layout: count must be >= 1, got " + std::to_string(count));
  if (!(wavelength > 0.0)) throw InvalidArgument("circular_layout: wavelength must be > 0");
  const double r = circular_radius(count, wavelength);
  std::vector<Vec3> elements;
  elements.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const double a = kTwoPi * n / count;
    elements.emplace_back(r * std::cos(a), r * std::sin(a), 0.0);
  }
  return ArrayLayout(std::move(elements), wavelength);
}

Vec3 wavevector(const Direction& dir, double wavelength) {
  if (!(wavelength > 0.0)) throw InvalidArgument("wavevector: wavelength must be > 0");
  return (kTwoPi / wavelength) * dir.unit_vector();
}

CVector steering_vector(const ArrayLayout& layout, const Direction& dir) {
  const Vec3 k = wavevector(dir.normalized(), layout.wavelength());
  const auto n = static_cast<Eigen::Index>(layout.count());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector a(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double phase = k.dot(layout.elements()[static_cast<std::size_t>(i)]);
    a(i) = std::polar(scale, phase);
  }
  return a;
}

Eigen::Matrix3d rotation_z_to(const Direction& normal) {
  // R = Rz(phi) * Ry(theta) sends +z to the unit vector of `normal`.
  const Eigen::Matrix3d rz = Eigen::AngleAxisd(normal.phi, Vec3::UnitZ()).toRotationMatrix();
  const Eigen::Matrix3d ry = Eigen::AngleAxisd(normal.theta, Vec3::UnitY()).toRotationMatrix();
  return rz * ry;
}

}  // namespace fdisac
