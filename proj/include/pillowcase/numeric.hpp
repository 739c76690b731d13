#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace pcase {

using Vec2 = std::array<double, 2>;

// Row-major 2x2.
struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;
    double det() const { return a * d - b * c; }
};

Vec2 solve2(const Mat2& m, const Vec2& r);
std::array<double, 2> singular_values2(const Mat2& m);  // {max, min}
double cond2(const Mat2& m);

using Fn2 = std::function<Vec2(const Vec2&)>;

constexpr double kFdStep = 1e-6;

Mat2 jacobian_fd(const Fn2& f, const Vec2& x, double h = kFdStep);

struct NewtonResult {
    Vec2 x{};
    bool converged = false;
    int iterations = 0;
    double residual = 0;
    double cond = 0;
};

struct NewtonOptions {
    int max_iter = 50;
    double tol = 1e-12;
};

// Damped Newton with central-difference Jacobian.
NewtonResult newton2(const Fn2& f, Vec2 x0, const NewtonOptions& opt = {});

inline double inf_norm(const Vec2& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

}  // namespace pcase
