#ifndef CONDKIN_VEC3_HPP
#define CONDKIN_VEC3_HPP

#include <cmath>

namespace condkin {

// Momentum/velocity vector. Grids with dimension d < 3 leave the trailing
// components at zero, so all dot products and norms work unchanged.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_ = 0.0, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
};

}  // namespace condkin

#endif
