#include "pillowcase/pillowcase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcase {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Side s) { return s == Side::P0 ? "P0" : "P1"; }

Side parse_side(const std::string& s) {
    if (s == "P0") return Side::P0;
    if (s == "P1") return Side::P1;
    throw std::invalid_argument("unknown side: " + s);
}

bool PillowPoint::is_corner(double tol) const {
    static const R3 corners[4] = {{1, 1, 1}, {-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}};
    for (const R3& c : corners)
        if (r3_dist(r3, c) < tol) return true;
    return false;
}

R3 r3_of(double gamma, double theta) { return {std::cos(gamma), std::cos(theta), std::cos(gamma - theta)}; }

double surface_residual(const R3& p) {
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 2 * p[0] * p[1] * p[2] - 1;
}

double r3_dist(const R3& a, const R3& b) { return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2])); }

PillowPoint make_pillow(Side side, double gamma, double theta) {
    double g = wrap_angle(gamma), t = wrap_angle(theta);
    if (g > kPi) {
        g = 2 * kPi - g;
        t = wrap_angle(-t);
    }
    constexpr double eps = 1e-12;
    if ((g < eps || g > kPi - eps) && t > kPi) t = wrap_angle(-t);
    if (g < eps) g = 0;
    if (g > kPi - eps) g = kPi;
    PillowPoint p;
    p.side = side;
    p.gamma = g;
    p.theta = t;
    p.r3 = r3_of(g, t);
    return p;
}

std::array<double, 2> angles_from_r3(const R3& p) {
    const double x = std::clamp(p[0], -1.0, 1.0), y = std::clamp(p[1], -1.0, 1.0);
    const double w = p[2] - x * y;  // sin(gamma) sin(theta)
    const double sg = std::sqrt(std::max(0.0, 1 - x * x));
    const double st = std::sqrt(std::max(0.0, 1 - y * y));
    if (sg >= st) {
        const double g = std::atan2(sg, x);
        const double t = std::atan2(sg > 0 ? w / sg : 0.0, y);
        return {g, t};
    }
    const double t = std::atan2(st, y);
    const double g = std::atan2(w / st, x);
    return {g, t};
}

PillowPoint pi0(const ChartPoint& pt) { return make_pillow(Side::P0, pt.gamma, pt.theta); }

R3 pi0_characters(const Rep& r) {
    return {real_part(r.b * conj(r.a)), real_part(r.f * conj(r.a)), real_part(r.b * conj(r.f))};
}

R3 pi1_characters(const Rep& r) {
    const auto ch = characters(r);
    return {ch[3], ch[4], ch[5]};
}

PillowPoint pi1(const Rep& rep) {
    const R3 c = pi1_characters(rep);
    if (std::abs(surface_residual(c)) > 1e-6) throw std::domain_error("pi1: characters are off the pillowcase surface");
    const auto a = angles_from_r3(c);
    PillowPoint p = make_pillow(Side::P1, a[0], a[1]);
    return p;
}

PillowPoint theta_map(const PillowPoint& p) { return make_pillow(p.side, p.gamma, -p.theta); }

R3 theta_r3(const R3& p) { return {p[0], p[1], 2 * p[0] * p[1] - p[2]}; }

PillowPoint psi_map(const PillowPoint& p) {
    PillowPoint q = p;
    q.side = p.side == Side::P0 ? Side::P1 : Side::P0;
    return q;
}

PillowPoint w1_hat(const PillowPoint& p) { return make_pillow(p.side, p.gamma + kPi, p.theta + kPi); }
PillowPoint w2_hat(const PillowPoint& p) { return make_pillow(p.side, p.gamma + kPi, p.theta); }

ChartPoint W1(const ChartPoint& pt) { return ChartPoint{pt.s, pt.gamma + kPi, pt.theta + kPi, -pt.nu, pt.tau + kPi}.normalized(); }
ChartPoint W2(const ChartPoint& pt) { return ChartPoint{pt.s, pt.gamma + kPi, pt.theta, -pt.nu, -pt.tau + kPi}.normalized(); }
ChartPoint iota_hat(const ChartPoint& pt) { return ChartPoint{pt.s, -pt.gamma, -pt.theta, pt.nu, pt.tau + kPi}.normalized(); }

namespace {

Quat conjugate_by(const Quat& g, const Quat& x) { return g * x * conj(g); }

// Unit quaternion rotating the pure unit vector v onto i.
Quat rotate_to_i(const Quat& v) {
    const double c = v.x;
    // axis = v x i
    const double ax = 0, ay = v.z, az = -v.y;
    const double sn = std::hypot(ay, az);
    if (sn < 1e-14) {
        if (c > 0) return ONE;
        return QK;  // rotation by pi about k sends -i to i
    }
    const double ang = std::atan2(sn, c);
    return qexp((0.5 * ang / sn) * Quat::pure(ax, ay, az));
}

}  // namespace

ChartPoint chart_of(const Rep& r) {
    ChartPoint pt;
    pt.s = r.s;
    pt.gamma = wrap_angle(std::atan2(r.b.y, r.b.x));
    pt.theta = wrap_angle(std::atan2(r.f.y, r.f.x));
    pt.nu = r.h.x;
    pt.tau = wrap_angle(std::atan2(r.h.z, r.h.y));
    return pt;
}

Rep u_involution(const Rep& r) {
    const Quat c = eval_word(r, words::c());
    const Quat d = eval_word(r, words::d());
    Quat A = conj(d);
    Quat B = conj(d) * conj(c) * d;
    Quat F = conj(r.f);
    Quat H;
    if (r.variant == Variant::earring) {
        H = conj(r.h) * conj(eval_word(r, words::w()));
    } else {
        H = eval_word(r, Word("AhQPHpqHa"));
    }
    A = ima(A);
    B = ima(B);
    F = ima(F);
    H = ima(H);
    const Quat g1 = rotate_to_i(normalized(A));
    A = conjugate_by(g1, A);
    B = conjugate_by(g1, B);
    F = conjugate_by(g1, F);
    H = conjugate_by(g1, H);
    const double jk = std::hypot(B.y, B.z);
    if (jk < 1e-12) throw std::runtime_error("u_involution: a and b are aligned; cannot re-gauge");
    // rotate about i so that b lies in the ij-plane with positive j part
    const double phi = std::atan2(B.z, B.y);
    const Quat g2 = qexp((-0.5 * phi) * QI);
    B = conjugate_by(g2, B);
    F = conjugate_by(g2, F);
    H = conjugate_by(g2, H);
    if (std::abs(F.z) > 1e-6) throw std::runtime_error("u_involution: input is not on the variety");
    Rep tmp;
    tmp.s = r.s;
    tmp.b = normalized(B);
    tmp.f = normalized(F);
    tmp.h = normalized(H);
    ChartPoint pt = chart_of(tmp);
    if (std::abs(pt.nu) > 0.5) throw std::runtime_error("u_involution: image outside the chart domain");
    return embed_L(pt, r.variant);
}

double verify_factorization(const Rep& rep) {
    const R3 lhs = pi1_characters(rep);
    const Rep u = u_involution(rep);
    const R3 rhs = theta_r3(pi0_characters(u));
    return r3_dist(lhs, rhs);
}

}  // namespace pcase
