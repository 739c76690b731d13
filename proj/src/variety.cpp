#include "pillowcase/variety.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcase {

namespace {
constexpr double kPi = std::numbers::pi;

double angle_diff(double a, double b) {
    double d = std::remainder(a - b, 2 * kPi);
    return d;
}

double sol_dist(const Vec2& x, const Vec2& y) {
    return std::hypot(x[0] - y[0], angle_diff(x[1], y[1]));
}

Fn2 fiber_system(Variant v, double s, double gamma, double theta) {
    return [=](const Vec2& x) -> Vec2 {
        // outside the slice: reject so the line search backs off
        if (!(std::abs(x[0]) <= 0.5)) return {NAN, NAN};
        return defining_hat(v, {s, gamma, theta, x[0], x[1]});
    };
}
}  // namespace

std::string to_string(FiberStatus s) {
    switch (s) {
        case FiberStatus::two_sheets: return "two_sheets";
        case FiberStatus::fold_region: return "fold_region";
        case FiberStatus::empty: return "empty";
        default: return "failed";
    }
}

std::string to_string(SheetLabel s) { return s == SheetLabel::plus ? "plus" : "minus"; }

SheetLabel sheet_of(double gamma, double theta, double tau) {
    const double d = std::cos(tau) * std::sin(gamma) + std::sin(tau) * std::sin(theta);
    return d >= 0 ? SheetLabel::plus : SheetLabel::minus;
}

FiberSolutions solve_fiber(Variant v, double s, double gamma, double theta, const FiberConfig& cfg) {
    FiberSolutions out;
    out.gamma = gamma;
    out.theta = theta;
    out.variant = v;
    out.s = s;
    const double sg = std::sin(gamma), st = std::sin(theta);
    const double n = std::hypot(sg, st);
    const bool fixed = n < 1e-12;

    if (s == 0) {
        if (fixed) {
            out.status = FiberStatus::fold_region;
            return out;
        }
        const double t0 = std::atan2(st / n, sg / n);
        out.solutions = {{0.0, wrap_angle(t0)}, {0.0, wrap_angle(t0 + kPi)}};
        out.status = FiberStatus::two_sheets;
        out.max_cond = 1;
        return out;
    }

    std::vector<Vec2> seeds;
    if (fixed) {
        for (int k = 0; k < 4; ++k) seeds.push_back({0.0, k * kPi / 2});
    } else {
        const double t0 = std::atan2(st / n, sg / n);
        seeds = {{0.0, t0}, {0.0, t0 + kPi}};
    }

    std::vector<Vec2> found;
    double max_cond = 0;
    bool ill = false;
    // tau turns at a rate ~ 2/r in s near a corner, r = |(sin gamma, sin theta)|
    const double guard = 10 + 4 / std::min(1.0, std::max(n, 1e-3));
    const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(s) / cfg.max_ds - 1e-12)));
    for (const Vec2& seed : seeds) {
        Vec2 x = seed;
        bool ok = true;
        double cond = 0;
        if (fixed) {
            const NewtonResult r = newton2(fiber_system(v, s, gamma, theta), x);
            ok = r.converged && std::abs(r.x[0]) <= 0.5;
            x = r.x;
            cond = r.cond;
        } else {
            double sc = 0;
            double ds = s / nsteps;
            int halvings = 0;
            while (std::abs(s - sc) > 1e-15) {
                if (std::abs(ds) > std::abs(s - sc)) ds = s - sc;
                // a good continuation step converges in a handful of iterations
                const NewtonResult r = newton2(fiber_system(v, sc + ds, gamma, theta), x, {15, 1e-12});
                const double jump = sol_dist(r.x, x);
                if (r.converged && std::abs(r.x[0]) <= 0.5 && jump < guard * std::abs(ds) + 1e-4) {
                    x = r.x;
                    sc += ds;
                    cond = r.cond;
                    if (halvings > 0) {
                        --halvings;
                        ds *= 2;
                    }
                    continue;
                }
                if (++halvings > cfg.max_halvings) {
                    ok = false;
                    break;
                }
                ds *= 0.5;
            }
        }
        if (!ok) continue;
        max_cond = std::max(max_cond, cond);
        if (cond > cfg.cond_limit) ill = true;
        const Pair g = defining(v, ChartPoint{s, gamma, theta, x[0], x[1]});
        if (std::max(std::abs(g[0]), std::abs(g[1])) > 1e-10) continue;
        Vec2 xw{x[0], wrap_angle(x[1])};
        bool dup = false;
        for (const Vec2& y : found)
            if (sol_dist(xw, y) < cfg.dedup) dup = true;
        if (!dup) found.push_back(xw);
    }
    out.solutions = found;
    out.max_cond = max_cond;
    if (found.empty())
        out.status = FiberStatus::empty;
    else if (found.size() == 2 && !ill && !fixed)
        out.status = FiberStatus::two_sheets;
    else
        out.status = FiberStatus::fold_region;
    return out;
}

// ---------------------------------------------------------------- fold locus

double FoldCircle::corner_gamma() const { return eps_gamma > 0 ? 0.0 : kPi; }
double FoldCircle::corner_theta() const { return eps_theta > 0 ? 0.0 : kPi; }

int FoldCircle::winding() const {
    double total = 0;
    for (size_t i = 0; i < image.size(); ++i) {
        const Vec2& p = image[i];
        const Vec2& q = image[(i + 1) % image.size()];
        total += angle_diff(std::atan2(q[1], q[0]), std::atan2(p[1], p[0]));
    }
    return static_cast<int>(std::lround(total / (2 * kPi)));
}

double FoldCircle::mean_radius() const {
    double acc = 0;
    for (const Vec2& p : image) acc += std::hypot(p[0], p[1]);
    return image.empty() ? 0 : acc / image.size();
}

double FoldCircle::max_radius_deviation() const {
    double m = 0;
    for (const Vec2& p : image) m = std::max(m, std::abs(std::hypot(p[0], p[1]) - 2 * std::abs(s)));
    return m;
}

double FoldCircle::radius_at(double phi) const {
    if (image.empty()) return 0;
    std::vector<std::pair<double, double>>& pr = polar_;
    if (pr.size() != image.size()) {
        pr.clear();
        for (const Vec2& p : image) pr.push_back({wrap_angle(std::atan2(p[1], p[0])), std::hypot(p[0], p[1])});
        std::sort(pr.begin(), pr.end());
    }
    phi = wrap_angle(phi);
    auto it = std::lower_bound(pr.begin(), pr.end(), std::make_pair(phi, -1.0));
    const auto& hi = it == pr.end() ? pr.front() : *it;
    const auto& lo = it == pr.begin() ? pr.back() : *(it - 1);
    double span = hi.first - lo.first;
    double off = phi - lo.first;
    if (span <= 0) span += 2 * kPi;
    if (off < 0) off += 2 * kPi;
    return lo.second + (hi.second - lo.second) * (span > 0 ? off / span : 0);
}

namespace {

struct Chart {
    Variant v;
    double s;
    int eg, et;

    ChartPoint point(double x, double y, double nu, double tau) const {
        const double u = x * std::cos(tau) - y * std::sin(tau);
        const double w = x * std::sin(tau) + y * std::cos(tau);
        const double gamma = (eg > 0 ? 0.0 : kPi) + eg * std::asin(u);
        const double theta = (et > 0 ? 0.0 : kPi) + et * std::asin(w);
        return {s, gamma, theta, nu, tau};
    }
    Vec2 F(double x, double y, double nu, double tau) const { return defining_hat(v, point(x, y, nu, tau)); }
};

// Fourth-order stencil; the fold condition differentiates G1/s, whose rounding
// noise is amplified by 1/s.
Mat2 jacobian_fd4(const Fn2& f, const Vec2& x, double h = 1e-4) {
    Mat2 J;
    for (int k = 0; k < 2; ++k) {
        auto at = [&](double t) {
            Vec2 z = x;
            z[k] += t;
            return f(z);
        };
        const Vec2 p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
        const double d0 = (8 * (p1[0] - m1[0]) - (p2[0] - m2[0])) / (12 * h);
        const double d1 = (8 * (p1[1] - m1[1]) - (p2[1] - m2[1])) / (12 * h);
        if (k == 0) {
            J.a = d0;
            J.c = d1;
        } else {
            J.b = d0;
            J.d = d1;
        }
    }
    return J;
}

struct DetEval {
    double det = 0;
    double y = 0, nu = 0;
    bool ok = false;
};

// Solve F(x, y, nu, tau) = 0 for (y, nu) and evaluate dY/dtau + x + Y dY/dx.
DetEval eval_det(const Chart& ch, double x, double tau, Vec2 seed) {
    DetEval out;
    const Fn2 f = [&](const Vec2& z) { return ch.F(x, z[0], z[1], tau); };
    const NewtonResult r = newton2(f, seed);
    if (!r.converged) return out;
    out.y = r.x[0];
    out.nu = r.x[1];
    const Mat2 Jyn = jacobian_fd4(f, r.x);
    const Fn2 g = [&](const Vec2& z) { return ch.F(z[0], out.y, out.nu, z[1]); };
    const Mat2 Jxt = jacobian_fd4(g, {x, tau});
    // d(y,nu)/dx and d(y,nu)/dtau from the implicit function theorem
    const Vec2 dx = solve2(Jyn, {-Jxt.a, -Jxt.c});
    const Vec2 dt = solve2(Jyn, {-Jxt.b, -Jxt.d});
    out.det = dt[0] + x + out.y * dx[0];
    out.ok = std::isfinite(out.det);
    return out;
}

}  // namespace

std::vector<FoldCircle> fold_locus(Variant v, double s, const FoldConfig& cfg) {
    if (s == 0 || std::abs(s) > 0.25) throw std::domain_error("fold_locus: need 0 < |s| <= 0.25");
    std::vector<FoldCircle> out;
    for (int eg : {1, -1}) {
        for (int et : {1, -1}) {
            const Chart ch{v, s, eg, et};
            FoldCircle fc;
            fc.eps_gamma = eg;
            fc.eps_theta = et;
            fc.s = s;
            double x = 0;
            Vec2 seed{-2 * s * eg * et, v == Variant::earring ? s * eg : 0.0};
            for (int k = 0; k < cfg.samples; ++k) {
                const double tau = 2 * kPi * k / cfg.samples;
                // secant iteration on x
                double x0 = x, x1 = x + 1e-4;
                DetEval d0 = eval_det(ch, x0, tau, seed);
                if (!d0.ok) throw std::runtime_error("fold_locus: chart solve failed");
                DetEval d1 = eval_det(ch, x1, tau, {d0.y, d0.nu});
                bool done = false;
                for (int it = 0; it < 60 && d1.ok; ++it) {
                    if (std::abs(d1.det) < 1e-12 || std::abs(x1 - x0) < 1e-12) {
                        done = true;
                        break;
                    }
                    const double denom = d1.det - d0.det;
                    if (denom == 0) break;
                    const double x2 = x1 - d1.det * (x1 - x0) / denom;
                    x0 = x1;
                    d0 = d1;
                    x1 = x2;
                    d1 = eval_det(ch, x1, tau, {d0.y, d0.nu});
                }
                if (!done && d1.ok && std::abs(d1.det) < 1e-8) done = true;
                if (!done || !d1.ok) throw std::runtime_error("fold_locus: critical point not found");
                x = x1;
                seed = {d1.y, d1.nu};
                const ChartPoint pt = ch.point(x, d1.y, d1.nu, tau);
                fc.samples.push_back(pt);
                fc.image.push_back({x * std::cos(tau) - d1.y * std::sin(tau), x * std::sin(tau) + d1.y * std::cos(tau)});
            }
            // closure: continuing to tau = 2 pi must land on the first sample
            const Vec2& first = fc.image.front();
            const Vec2& last = fc.image.back();
            const double spacing = 2 * kPi * 2 * std::abs(s) / cfg.samples;
            if (std::hypot(first[0] - last[0], first[1] - last[1]) > 10 * spacing + 1e-12)
                throw std::runtime_error("fold_locus: loop did not close");
            if (fc.mean_radius() < 0.1 * std::abs(s)) throw std::runtime_error("fold_locus: circle collapsed onto corner");
            out.push_back(std::move(fc));
        }
    }
    return out;
}

CornerChart corner_chart(double gamma, double theta) {
    const double g = wrap_angle(gamma), t = wrap_angle(theta);
    CornerChart c;
    const int ci = (std::cos(g) >= 0 ? 0 : 1);
    const int cj = (std::cos(t) >= 0 ? 0 : 1);
    c.corner = ci + 2 * cj;
    c.w = {std::sin(g), std::sin(t)};
    return c;
}

// ----------------------------------------------------------------- rank test

namespace {
using Vec4 = Eigen::Vector4d;

Eigen::Vector2d fhat4(Variant v, double s, const Vec4& z) {
    const Pair p = defining_hat(v, {s, z[0], z[1], z[2], z[3]});
    return {p[0], p[1]};
}

Eigen::Vector3d pi1_chars(Variant v, double s, const Vec4& z) {
    const auto ch = characters(embed_L({s, z[0], z[1], z[2], z[3]}, v));
    return {ch[3], ch[4], ch[5]};
}
}  // namespace

FoldRank fold_rank(Variant v, const ChartPoint& pt) {
    const Vec4 z{pt.gamma, pt.theta, pt.nu, pt.tau};
    const double h = kFdStep;
    Eigen::Matrix<double, 2, 4> dF;
    Eigen::Matrix<double, 3, 4> dP1;
    for (int k = 0; k < 4; ++k) {
        Vec4 zp = z, zm = z;
        zp[k] += h;
        zm[k] -= h;
        dF.col(k) = (fhat4(v, pt.s, zp) - fhat4(v, pt.s, zm)) / (2 * h);
        dP1.col(k) = (pi1_chars(v, pt.s, zp) - pi1_chars(v, pt.s, zm)) / (2 * h);
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(dF, Eigen::ComputeFullV);
    const Eigen::Matrix<double, 4, 2> B = svd.matrixV().rightCols<2>();  // tangent plane, orthonormal
    const Eigen::Matrix2d dP0 = B.topRows<2>();
    const Eigen::Matrix<double, 3, 2> dQ = dP1 * B;
    Eigen::JacobiSVD<Eigen::Matrix2d> s0(dP0, Eigen::ComputeFullV);
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> s1(dQ, Eigen::ComputeFullV);
    FoldRank r;
    r.ratio0 = s0.singularValues()[1] / s0.singularValues()[0];
    r.ratio1 = s1.singularValues()[1] / s1.singularValues()[0];
    const Eigen::Vector2d k0 = s0.matrixV().col(1);
    const Eigen::Vector2d k1 = s1.matrixV().col(1);
    const double c = std::min(1.0, std::abs(k0.dot(k1)));
    r.kernel_angle = std::acos(c);
    return r;
}

// ------------------------------------------------------------------ topology

TopologyReport verify_topology(Variant v, double s, int grid, std::vector<FiberSolutions>* cells) {
    TopologyReport rep;
    rep.variant = v;
    rep.s = s;
    rep.grid = grid;

    auto tally = [&](const FiberSolutions& fs) {
        switch (fs.status) {
            case FiberStatus::two_sheets: ++rep.two_sheets; break;
            case FiberStatus::fold_region: ++rep.fold_region; break;
            case FiberStatus::empty: ++rep.empty; break;
            default: ++rep.failed; break;
        }
    };

    if (s == 0) {
        rep.degenerate = true;
        int circles = 0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const double g = 2 * kPi * i / grid, t = 2 * kPi * j / grid;
                const FiberSolutions fs = solve_fiber(v, 0, g, t);
                tally(fs);
                if (cells) cells->push_back(fs);
                const bool fixed = std::hypot(std::sin(g), std::sin(t)) < 1e-12;
                if (fixed) {
                    if (fs.status == FiberStatus::fold_region) ++circles; else ++rep.inconsistent;
                } else if (fs.status != FiberStatus::two_sheets) {
                    ++rep.inconsistent;
                }
            }
        rep.fold_circles = circles;
        rep.euler_characteristic = rep.sheets * (0 - circles);
        rep.genus_upstairs = 1 - rep.euler_characteristic / 2;
        rep.genus_quotient = 1 - rep.euler_characteristic / 4;
        rep.consistent = rep.inconsistent == 0 && circles == 4;
        rep.note = "s = 0: circle fibers over the four fixed points; the projection to the pillowcase is not a branched cover here";
        return rep;
    }

    const std::vector<FoldCircle> folds = fold_locus(v, s);
    rep.fold_circles = static_cast<int>(folds.size());
    for (const FoldCircle& fc : folds) rep.windings.push_back(fc.winding());

    auto fold_for = [&](int corner) -> const FoldCircle& {
        const int eg = (corner % 2 == 0) ? 1 : -1;
        const int et = (corner / 2 == 0) ? 1 : -1;
        for (const FoldCircle& fc : folds)
            if (fc.eps_gamma == eg && fc.eps_theta == et) return fc;
        throw std::logic_error("missing fold circle");
    };

    auto check = [&](double g, double t, bool record) {
        const FiberSolutions fs = solve_fiber(v, s, g, t);
        tally(fs);
        if (record && cells) cells->push_back(fs);
        const CornerChart cc = corner_chart(g, t);
        const double r = std::hypot(cc.w[0], cc.w[1]);
        const double rf = fold_for(cc.corner).radius_at(std::atan2(cc.w[1], cc.w[0]));
        const double margin = 0.2 * rf;
        if (r > rf + margin) {
            if (fs.status != FiberStatus::two_sheets) {
                ++rep.inconsistent;
                return;
            }
            if (sheet_of(g, t, fs.solutions[0][1]) == sheet_of(g, t, fs.solutions[1][1])) ++rep.inconsistent;
        } else if (r < rf - margin) {
            if (fs.status != FiberStatus::empty) ++rep.inconsistent;
        }
    };

    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) check(2 * kPi * i / grid, 2 * kPi * j / grid, true);
    // refine 4x around each corner
    const double h = 2 * kPi / grid / 4;
    const int m = static_cast<int>(std::ceil(3 * std::abs(s) / h));
    for (double gc : {0.0, kPi})
        for (double tc : {0.0, kPi})
            for (int i = -m; i <= m; ++i)
                for (int j = -m; j <= m; ++j) check(gc + i * h, tc + j * h, false);

    bool windings_ok = true;
    for (int w : rep.windings) windings_ok = windings_ok && std::abs(w) == 1;
    rep.consistent = rep.inconsistent == 0 && rep.failed == 0 && rep.fold_circles == 4 && windings_ok;
    // two copies of T minus four disks, glued along four circles
    rep.euler_characteristic = rep.sheets * (0 - rep.fold_circles);
    rep.genus_upstairs = 1 - rep.euler_characteristic / 2;
    rep.genus_quotient = 1 - rep.euler_characteristic / 4;
    return rep;
}

// ------------------------------------------------------------- closed forms

double eta(double s, double sigma) {
    if (std::abs(s) >= 0.5) throw std::domain_error("eta: need |s| < 1/2");
    double e = 0;
    for (int k = 0; k < 500; ++k) {
        const double next = -0.5 * s * std::cos(sigma + 2 * e);
        if (std::abs(next - e) < 1e-16) {
            e = next;
            break;
        }
        e = next;
    }
    return e;
}

Rep k_circle(Variant v, double s, double sigma) {
    const Quat h0 = qexp(sigma * QI) * QJ;
    const Quat u = qexp(sigma * QI) * QK;
    Rep r;
    r.variant = v;
    r.s = s;
    r.a = QI;
    r.f = QI;
    if (v == Variant::bypass) {
        r.h = h0;
    } else {
        const double e = eta(s, sigma);
        r.h = product({qexp(e * u), h0, qexp(-e * u)});
    }
    const Quat esh = qexp(s * r.h), emsh = qexp(-s * r.h);
    r.b = product({esh, qexp(-sigma * u), QI, emsh});
    if (v == Variant::bypass)
        r.p = product({esh, qexp(s * std::cos(sigma) * u), emsh});
    else
        r.p = product({esh, qexp(-2 * eta(s, sigma) * u), emsh});
    r.q = esh;
    return r;
}

}  // namespace pcase
