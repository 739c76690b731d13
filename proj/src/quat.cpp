#include "pillowcase/quat.hpp"

#include <stdexcept>

namespace pcase {

Quat mul(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

double real_part(const Quat& q) { return q.w; }

Quat ima(const Quat& q) { return {0, q.x, q.y, q.z}; }

Quat conj(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

Quat conj_inv(const Quat& q) {
    if (std::abs(q.norm2() - 1.0) > kUnitTol) throw std::domain_error("conj_inv: quaternion is not unit");
    return conj(q);
}

Quat qexp(const Quat& v) {
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    double sinc;
    if (n < 1e-4) {
        const double n2 = n * n;
        sinc = 1.0 - n2 / 6.0 * (1.0 - n2 / 20.0 * (1.0 - n2 / 42.0));
    } else {
        sinc = std::sin(n) / n;
    }
    return {std::cos(n), sinc * v.x, sinc * v.y, sinc * v.z};
}

Quat normalized(const Quat& q) {
    const double n = q.norm();
    return {q.w / n, q.x / n, q.y / n, q.z / n};
}

double dist(const Quat& a, const Quat& b) { return (a - b).norm(); }

Quat product(std::initializer_list<Quat> factors) {
    Quat r = ONE;
    int count = 0;
    for (const Quat& f : factors) {
        r = mul(r, f);
        if (++count % 64 == 0) r = normalized(r);
    }
    return r;
}

}  // namespace pcase
