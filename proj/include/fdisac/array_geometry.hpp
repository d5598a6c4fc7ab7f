#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace fdisac {

using Vec3 = Eigen::Vector3d;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Propagation direction in the array frame. `theta` is the polar angle
/// measured from +z, `phi` the azimuth measured from +x toward +y.
struct Direction {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  /// Maps any (theta, phi) pair onto the canonical ranges while keeping the
  /// same unit vector. A negative polar angle flips the azimuth by pi, which
  /// is how elevation cuts through the pole are expressed.
  [[nodiscard]] Direction normalized() const;

  /// Unit vector (sin t cos p, sin t sin p, cos t).
  [[nodiscard]] Vec3 unit_vector() const;

  bool operator==(const Direction&) const = default;
};

/// Element positions of one antenna array plus the carrier wavelength.
class ArrayLayout {
 public:
  ArrayLayout(std::vector<Vec3> elements, double wavelength);

  [[nodiscard]] const std::vector<Vec3>& elements() const { return elements_; }
  [[nodiscard]] double wavelength() const { return wavelength_; }
  [[nodiscard]] std::size_t count() const { return elements_.size(); }

  /// Returns a copy rotated by `rotation` and then shifted by `offset`.
  [[nodiscard]] ArrayLayout transformed(const Eigen::Matrix3d& rotation, const Vec3& offset) const;

 private:
  std::vector<Vec3> elements_;
  double wavelength_;
};

/// Uniform circular array in the z = 0 plane with half-wavelength arc
/// spacing, i.e. radius count * wavelength / (4 pi). Element n sits at
/// azimuth 2 pi n / count.
ArrayLayout circular_layout(int count, double wavelength);

/// Radius used by circular_layout.
double circular_radius(int count, double wavelength);

/// k(theta, phi) = (2 pi / lambda) * unit_vector.
Vec3 wavevector(const Direction& dir, double wavelength);

/// a_n = exp(i k . u_n) / sqrt(N). Unit Euclidean norm.
CVector steering_vector(const ArrayLayout& layout, const Direction& dir);

/// Rotation that maps +z onto the unit vector of `normal`. Used to tilt the
/// circular arrays; the identity for normal = +z.
Eigen::Matrix3d rotation_z_to(const Direction& normal);

}  // namespace fdisac
