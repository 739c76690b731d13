#pragma once

#include <cmath>
#include <initializer_list>

namespace pcase {

// Quaternion w + x i + y j + z k.
struct Quat {
    double w = 0, x = 0, y = 0, z = 0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    static constexpr Quat real(double r) { return {r, 0, 0, 0}; }
    static constexpr Quat pure(double x, double y, double z) { return {0, x, y, z}; }

    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

inline constexpr Quat ONE{1, 0, 0, 0};
inline constexpr Quat QI{0, 1, 0, 0};
inline constexpr Quat QJ{0, 0, 1, 0};
inline constexpr Quat QK{0, 0, 0, 1};

constexpr double kUnitTol = 1e-9;

Quat mul(const Quat& a, const Quat& b);
double real_part(const Quat& q);
Quat ima(const Quat& q);
Quat conj(const Quat& q);
// Inverse of a unit quaternion. Throws std::domain_error off the unit sphere.
Quat conj_inv(const Quat& q);
// exp of the imaginary part of v; callers pass pure quaternions.
Quat qexp(const Quat& v);
Quat normalized(const Quat& q);
double dist(const Quat& a, const Quat& b);

// Product of a list of unit quaternions, renormalizing every 64 factors.
Quat product(std::initializer_list<Quat> factors);

inline Quat operator*(const Quat& a, const Quat& b) { return mul(a, b); }
inline Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
inline Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

}  // namespace pcase
