#include "pillowcase/numeric.hpp"

#include <limits>

namespace pcase {

Vec2 solve2(const Mat2& m, const Vec2& r) {
    const double det = m.det();
    return {(m.d * r[0] - m.b * r[1]) / det, (-m.c * r[0] + m.a * r[1]) / det};
}

std::array<double, 2> singular_values2(const Mat2& m) {
    // eigenvalues of M^T M
    const double p = m.a * m.a + m.c * m.c;
    const double q = m.b * m.b + m.d * m.d;
    const double r = m.a * m.b + m.c * m.d;
    const double tr = p + q;
    const double disc = std::sqrt(std::max(0.0, (p - q) * (p - q) + 4 * r * r));
    const double l1 = 0.5 * (tr + disc);
    const double det = std::abs(m.det());
    const double s1 = std::sqrt(l1);
    const double s2 = s1 > 0 ? det / s1 : 0.0;
    return {s1, s2};
}

double cond2(const Mat2& m) {
    const auto sv = singular_values2(m);
    if (sv[1] <= 0) return std::numeric_limits<double>::infinity();
    return sv[0] / sv[1];
}

Mat2 jacobian_fd(const Fn2& f, const Vec2& x, double h) {
    Vec2 xp = x, xm = x;
    xp[0] += h;
    xm[0] -= h;
    const Vec2 f0p = f(xp), f0m = f(xm);
    xp = x;
    xm = x;
    xp[1] += h;
    xm[1] -= h;
    const Vec2 f1p = f(xp), f1m = f(xm);
    return {(f0p[0] - f0m[0]) / (2 * h), (f1p[0] - f1m[0]) / (2 * h), (f0p[1] - f0m[1]) / (2 * h),
            (f1p[1] - f1m[1]) / (2 * h)};
}

NewtonResult newton2(const Fn2& f, Vec2 x, const NewtonOptions& opt) {
    NewtonResult res;
    Vec2 fx = f(x);
    double r = inf_norm(fx);
    for (int it = 0; it < opt.max_iter; ++it) {
        res.iterations = it;
        if (r < opt.tol) {
            res.converged = true;
            break;
        }
        const Mat2 J = jacobian_fd(f, x);
        if (J.det() == 0 || !std::isfinite(J.det())) break;
        const Vec2 dx = solve2(J, fx);
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k) {
            const Vec2 xn{x[0] - lambda * dx[0], x[1] - lambda * dx[1]};
            const Vec2 fn = f(xn);
            const double rn = inf_norm(fn);
            if (std::isfinite(rn) && rn < r) {
                x = xn;
                fx = fn;
                r = rn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }
    if (r < opt.tol) res.converged = true;
    res.x = x;
    res.residual = r;
    res.cond = cond2(jacobian_fd(f, x));
    return res;
}

}  // namespace pcase
