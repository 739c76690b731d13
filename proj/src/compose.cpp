#include "pillowcase/compose.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "pillowcase/pillowcase.hpp"

namespace pcase {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

using V3 = Eigen::Vector3d;

// C1 parameterization of a polyline lift by Catmull-Rom splines, extended past the ends
// equivariantly: by the deck for circles, by the point reflection through the end corner for arcs.
class ParamCurve {
public:
    explicit ParamCurve(const Component& c) : kind_(c.kind), pts_(c.lift) {
        if (pts_.size() < 2) throw std::invalid_argument("compose: component needs at least two points");
        n_ = static_cast<long>(pts_.size()) - 1;
        if (kind_ == CurveKind::circle) {
            deck_ = c.closure();
            find_sub_period();
        }
        d_ = c.length() / n_;
        if (!(d_ > 0)) throw std::invalid_argument("compose: degenerate component");
    }

    // A circle lift that repeats itself k times (e.g. a twisted double) has the
    // shorter period n/k with its own deck transformation.
    int repeats() const { return k_; }
    double sub_period() const { return period() / k_; }
    const Deck& sub_deck() const { return sub_; }

    double period() const { return n_ * d_; }
    bool periodic() const { return kind_ == CurveKind::circle; }
    const Deck& deck() const { return deck_; }

    Vec2 node(long k) const {
        if (periodic()) {
            const long m = k >= 0 ? k / n_ : -((-k + n_ - 1) / n_);
            const Vec2& p = pts_[k - m * n_];
            if (deck_.sign > 0) return {p[0] + m * deck_.shift[0], p[1] + m * deck_.shift[1]};
            return (m % 2 == 0) ? p : deck_.apply(p);
        }
        if (k < 0) {
            const Vec2& a = pts_[0];
            const Vec2& q = pts_[std::min<long>(-k, n_)];
            return {2 * a[0] - q[0], 2 * a[1] - q[1]};
        }
        if (k > n_) {
            const Vec2& a = pts_[n_];
            const Vec2& q = pts_[std::max<long>(2 * n_ - k, 0)];
            return {2 * a[0] - q[0], 2 * a[1] - q[1]};
        }
        return pts_[k];
    }

    void eval(double u, Vec2& x, Vec2& dx) const {
        const double f0 = u / d_;
        const long k = static_cast<long>(std::floor(f0));
        const double f = f0 - k;
        const Vec2 p0 = node(k - 1), p1 = node(k), p2 = node(k + 1), p3 = node(k + 2);
        for (int i = 0; i < 2; ++i) {
            const double b = -p0[i] + p2[i];
            const double c = 2 * p0[i] - 5 * p1[i] + 4 * p2[i] - p3[i];
            const double e = -p0[i] + 3 * p1[i] - 3 * p2[i] + p3[i];
            x[i] = 0.5 * (2 * p1[i] + f * (b + f * (c + f * e)));
            dx[i] = 0.5 * (b + f * (2 * c + 3 * f * e)) / d_;
        }
    }

    Vec2 at(double u) const {
        Vec2 x, dx;
        eval(u, x, dx);
        return x;
    }

    // u in vertex-index units
    double to_index(double u) const { return u / d_; }

private:
    void find_sub_period() {
        sub_ = deck_;
        for (int k = 8; k >= 2; --k) {
            if (n_ % k != 0) continue;
            const long m = n_ / k;
            for (int sg : {1, -1}) {
                const Vec2 sh{pts_[m][0] - sg * pts_[0][0], pts_[m][1] - sg * pts_[0][1]};
                const Vec2 lat{kTwoPi * std::round(sh[0] / kTwoPi), kTwoPi * std::round(sh[1] / kTwoPi)};
                bool ok = std::hypot(sh[0] - lat[0], sh[1] - lat[1]) < 1e-9;
                for (long j = 0; ok && j + m <= n_; ++j)
                    ok = std::hypot(pts_[j + m][0] - sg * pts_[j][0] - lat[0], pts_[j + m][1] - sg * pts_[j][1] - lat[1]) < 1e-9;
                if (ok) {
                    k_ = k;
                    sub_ = {sg, lat};
                    return;
                }
            }
        }
    }

    CurveKind kind_;
    std::vector<Vec2> pts_;
    long n_ = 0;
    double d_ = 1;
    Deck deck_;
    int k_ = 1;
    Deck sub_;
};

struct System {
    const ParamCurve& curve;
    Variant v;
    double s;

    V3 zero3() const { return V3::Zero(); }

    Eigen::Vector2d F(const V3& X) const {
        const Vec2 g = curve.at(X[0]);
        const Pair r = defining_hat(v, {s, g[0], g[1], X[1], X[2]});
        return {r[0], r[1]};
    }

    Eigen::Matrix<double, 2, 3> J(const V3& X) const {
        Eigen::Matrix<double, 2, 3> out;
        const double h = 1e-7;
        for (int j = 0; j < 3; ++j) {
            V3 a = X, b = X;
            a[j] += h;
            b[j] -= h;
            out.col(j) = (F(a) - F(b)) / (2 * h);
        }
        return out;
    }

    V3 tangent(const V3& X, const V3& prev) const {
        const auto j = J(X);
        V3 t = V3(j.row(0).transpose()).cross(V3(j.row(1).transpose()));
        const double n = t.norm();
        if (!(n > 0)) return prev;
        t /= n;
        return t.dot(prev) < 0 ? V3(-t) : t;
    }

    // Newton on F = 0 and T.(X - P) = 0, starting at P.
    bool correct(const V3& P, const V3& T, double tol, V3& X) const {
        X = P;
        for (int it = 0; it < 10; ++it) {
            const Eigen::Vector2d f = F(X);
            if (!f.allFinite()) return false;
            Eigen::Matrix3d M;
            M.topRows<2>() = J(X);
            M.row(2) = T.transpose();
            V3 r;
            r << f, T.dot(X - P);
            const V3 dx = M.partialPivLu().solve(r);
            if (!dx.allFinite()) return false;
            X -= dx;
            if (dx.norm() < 1e-10) {
                const Eigen::Vector2d f2 = F(X);
                return f2.allFinite() && f2.cwiseAbs().maxCoeff() < tol;
            }
        }
        return false;
    }
};

// Displacement from X to the start point X0 of the loop, taken modulo the
// symmetries of the parameterization.
V3 to_start(const ParamCurve& pc, const V3& X0, const V3& X) {
    double du = X0[0] - X[0];
    double tau0 = X0[2];
    if (pc.periodic()) {
        const long m = std::lround((X[0] - X0[0]) / pc.sub_period());
        du += m * pc.sub_period();
        if (pc.sub_deck().sign < 0 && (m % 2 != 0)) tau0 += kPi;
    }
    return {du, X0[1] - X[1], std::remainder(tau0 - X[2], kTwoPi)};
}

Branch trace(const System& sys, const V3& seed, const ContinuationOptions& opt, int component) {
    const ParamCurve& pc = sys.curve;
    V3 X = seed;
    V3 T0 = sys.tangent(X, V3(1, 0, 0));
    if (T0[0] < 0) T0 = -T0;
    V3 T = T0;
    double h = opt.h0;
    double travelled = 0;
    int streak = 0;

    Branch br;
    br.component = component;
    std::vector<double> du;
    auto push = [&](const V3& x, const V3& t) {
        const Vec2 g = pc.at(x[0]);
        br.samples.push_back({x[0], x[1], x[2], g[0], g[1], sheet_of(g[0], g[1], x[2])});
        du.push_back(t[0]);
    };
    push(X, T);

    for (int step = 0; step < opt.max_steps; ++step) {
        const V3 d = to_start(pc, seed, X);
        if (travelled > 20 * opt.h0 && T.dot(T0) > 0.9) {
            if (d.norm() < opt.close_tol) {
                // the last sample repeats the start
                br.samples.pop_back();
                du.pop_back();
                br.closed = true;
                break;
            }
            const double ahead = d.dot(T);
            if (ahead > 0 && d.norm() < 1.5 * h && ahead <= h * 1.0001) {
                V3 Xn;
                if (sys.correct(X + ahead * T, T, opt.tol, Xn) && to_start(pc, seed, Xn).norm() < opt.close_tol) {
                    br.closed = true;
                    break;
                }
            }
        }

        V3 Xn;
        bool ok = sys.correct(X + h * T, T, opt.tol, Xn);
        V3 Tn = T;
        if (ok) {
            Tn = sys.tangent(Xn, T);
            ok = (Xn - X).norm() < 2 * h && Tn.dot(T) > 0.95;
        }
        if (!ok) {
            h *= opt.shrink;
            streak = 0;
            if (h < opt.h_min) throw CompositionError("fiber_product: step rejection cascade below the step floor");
            continue;
        }
        travelled += (Xn - X).norm();
        X = Xn;
        T = Tn;
        push(X, T);
        if (++streak >= 4 && h < opt.h0) {
            h = std::min(opt.h0, 2 * h);
            streak = 0;
        }
    }
    if (!br.closed) throw CompositionError("fiber_product: branch failed to close within the step bound");

    // a loop closing over part of a repeated input is copied along the remaining repeats
    if (pc.periodic() && pc.repeats() > 1) {
        const long m = std::lround((br.samples.back().t - seed[0]) / pc.sub_period());
        const long r = pc.repeats() / std::gcd(std::labs(m), static_cast<long>(pc.repeats()));
        const std::size_t base = br.samples.size();
        for (long j = 1; j < r; ++j)
            for (std::size_t i = 0; i < base; ++i) {
                const FiberSample& x = br.samples[i];
                const double t = x.t + j * m * pc.sub_period();
                const double tau = x.tau + ((pc.sub_deck().sign < 0 && (j * m) % 2 != 0) ? kPi : 0.0);
                const Vec2 g = pc.at(t);
                br.samples.push_back({t, x.nu, tau, g[0], g[1], sheet_of(g[0], g[1], tau)});
                du.push_back(du[i]);
            }
    }

    for (std::size_t i = 0; i < du.size(); ++i) {
        const double a = du[i], b = du[(i + 1) % du.size()];
        if ((a > 0) != (b > 0)) br.reversals.push_back((i + 1) % du.size());
    }
    std::sort(br.reversals.begin(), br.reversals.end());
    return br;
}

bool on_branch(const ParamCurve& pc, const Branch& br, const V3& x, double tol) {
    for (const FiberSample& q : br.samples)
        if (to_start(pc, x, {q.t, q.nu, q.tau}).norm() < tol) return true;
    return false;
}

// Lift a loop of pillowcase points given in R3, choosing among the orbit
// representatives the one nearest to the previous lift point.
Component lift_loop(const std::vector<R3>& pts) {
    Component c;
    c.kind = CurveKind::circle;
    if (pts.empty()) return c;
    auto nearest = [](const Vec2& prev, const R3& p) {
        const auto a = angles_from_r3(p);
        Vec2 best{};
        double bd = 1e300;
        for (int sg : {1, -1}) {
            const Vec2 q{sg * a[0], sg * a[1]};
            const Vec2 k{std::round((prev[0] - q[0]) / kTwoPi), std::round((prev[1] - q[1]) / kTwoPi)};
            const Vec2 r{q[0] + kTwoPi * k[0], q[1] + kTwoPi * k[1]};
            const double dd = std::hypot(r[0] - prev[0], r[1] - prev[1]);
            if (dd < bd) {
                bd = dd;
                best = r;
            }
        }
        return best;
    };
    const auto a0 = angles_from_r3(pts[0]);
    c.lift.push_back({a0[0], a0[1]});
    for (std::size_t i = 1; i < pts.size(); ++i) c.lift.push_back(nearest(c.lift.back(), pts[i]));
    // close exactly through the deck transformation
    const Vec2 end = nearest(c.lift.back(), pts[0]);
    Component probe = c;
    probe.lift.push_back(end);
    const Deck dk = probe.closure();
    c.lift.push_back(dk.apply(c.lift.front()));
    return c;
}

template <class Map>
ImmersedCurve push_with(const FiberProduct& fp, Side side, Map map) {
    ImmersedCurve out;
    out.side = side;
    for (const Branch& br : fp.branches) {
        std::vector<R3> pts;
        pts.reserve(br.samples.size());
        for (const FiberSample& x : br.samples) pts.push_back(map(embed_L(fp.chart(x), fp.variant)));
        out.components.push_back(lift_loop(pts));
    }
    return out;
}

constexpr double kTurnBound = 15 * kPi / 180;

bool immersed(const ImmersedCurve& c) {
    for (const Component& k : c.components)
        if (!(max_turn(k) < kTurnBound)) return false;
    return true;
}

template <class Push>
ImmersedCurve with_refinement(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt, Push push) {
    ImmersedCurve out = push(fiber_product(c, v, s, opt));
    if (immersed(out)) return out;
    ContinuationOptions fine = opt;
    fine.h0 = opt.h0 / 4;
    out = push(fiber_product(c, v, s, fine));
    if (!immersed(out)) throw CompositionError("push_forward: output fails the immersion proxy after refinement");
    return out;
}

}  // namespace

const std::vector<FoldCircle>& cached_fold_locus(Variant v, double s) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::vector<FoldCircle>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(static_cast<int>(v), s);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, fold_locus(v, s)).first;
    return it->second;
}

TransversalityReport check_transversality(const ImmersedCurve& c, const std::vector<FoldCircle>& folds) {
    TransversalityReport rep;
    if (c.side != Side::P0) throw std::invalid_argument("check_transversality: curve must lie in P0");
    const FoldCircle* by_corner[4] = {nullptr, nullptr, nullptr, nullptr};
    for (const FoldCircle& fc : folds) {
        const int k = (fc.eps_gamma > 0 ? 0 : 1) + (fc.eps_theta > 0 ? 0 : 2);
        by_corner[k] = &fc;
    }
    const double touch = 1e-4, near = 0.5, step = 1e-3;

    struct S {
        double param;
        int corner;
        Vec2 w, x;
        double f;
        bool valid;
    };
    for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
        const auto& L = c.components[ci].lift;
        std::vector<S> pts;
        for (std::size_t i = 0; i + 1 < L.size(); ++i) {
            const double len = std::hypot(L[i + 1][0] - L[i][0], L[i + 1][1] - L[i][1]);
            const int m = std::max(1, static_cast<int>(std::ceil(len / step)));
            for (int j = 0; j < m || (i + 2 == L.size() && j == m); ++j) {
                const double f = static_cast<double>(j) / m;
                const Vec2 x{L[i][0] + f * (L[i + 1][0] - L[i][0]), L[i][1] + f * (L[i + 1][1] - L[i][1])};
                const CornerChart cc = corner_chart(x[0], x[1]);
                const double r = std::hypot(cc.w[0], cc.w[1]);
                S p{i + f, cc.corner, cc.w, x, 0, r < near && by_corner[cc.corner] != nullptr};
                if (p.valid) p.f = r - by_corner[cc.corner]->radius_at(std::atan2(cc.w[1], cc.w[0]));
                pts.push_back(p);
            }
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const S &a = pts[i], &b = pts[i + 1];
            if (!a.valid || !b.valid || a.corner != b.corner) continue;
            if ((a.f < 0) != (b.f < 0)) {
                const double lam = a.f / (a.f - b.f);
                const Vec2 w{a.w[0] + lam * (b.w[0] - a.w[0]), a.w[1] + lam * (b.w[1] - a.w[1])};
                const FoldCircle& fc = *by_corner[a.corner];
                const double phi = std::atan2(w[1], w[0]), dp = 1e-3;
                const double r = fc.radius_at(phi), dr = (fc.radius_at(phi + dp) - fc.radius_at(phi - dp)) / (2 * dp);
                const Vec2 tf{dr * std::cos(phi) - r * std::sin(phi), dr * std::sin(phi) + r * std::cos(phi)};
                const Vec2 dw{b.w[0] - a.w[0], b.w[1] - a.w[1]};
                const double cr = std::abs(tf[0] * dw[1] - tf[1] * dw[0]) / (std::hypot(tf[0], tf[1]) * std::hypot(dw[0], dw[1]));
                FoldCrossing x;
                x.component = static_cast<int>(ci);
                x.param = a.param + lam * (b.param - a.param);
                x.corner = a.corner;
                x.angle = std::asin(std::min(1.0, cr));
                x.point = {a.x[0] + lam * (b.x[0] - a.x[0]), a.x[1] + lam * (b.x[1] - a.x[1])};
                rep.crossings.push_back(x);
                if (x.angle <= 1e-2 && rep.transverse) {
                    rep.transverse = false;
                    rep.reason = "tangential crossing of the fold image";
                }
            }
            // a touch without a sign change
            if (i > 0 && pts[i - 1].valid && pts[i - 1].corner == a.corner && b.corner == a.corner) {
                const double fm = pts[i - 1].f, f0 = a.f, fp = b.f;
                if (std::abs(f0) < touch && std::abs(f0) <= std::abs(fm) && std::abs(f0) <= std::abs(fp) && (fm < 0) == (f0 < 0) &&
                    (fp < 0) == (f0 < 0) && rep.transverse) {
                    rep.transverse = false;
                    rep.reason = "curve touches the fold image";
                }
            }
        }
    }
    return rep;
}

TransversalityReport check_transversality(const ImmersedCurve& c, Variant v, double s) {
    return check_transversality(c, cached_fold_locus(v, s));
}

double FiberProduct::max_residual() const {
    double m = 0;
    for (const Branch& br : branches)
        for (const FiberSample& x : br.samples) {
            const Pair g = defining(variant, chart(x));
            m = std::max({m, std::abs(g[0]), std::abs(g[1])});
        }
    return m;
}

FiberProduct fiber_product(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt) {
    if (c.side != Side::P0) throw std::invalid_argument("fiber_product: curve must lie in P0");
    if (s == 0) throw std::invalid_argument("fiber_product: needs s != 0");
    FiberProduct fp;
    fp.input = c;
    fp.variant = v;
    fp.s = s;

    for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
        const Component& comp = c.components[ci];
        if (comp.kind == CurveKind::open_arc) throw std::invalid_argument("fiber_product: open arcs are not supported");
        const ParamCurve pc(comp);
        const System sys{pc, v, s};

        // seeds: t = 0 for circles, mid-parameter for arcs
        std::vector<V3> seeds;
        const double base = pc.periodic() ? 0.0 : 0.5 * pc.period();
        for (int k = 0; k < 16 && seeds.empty(); ++k) {
            const double u = base + (k % 2 ? 1 : -1) * ((k + 1) / 2) * 0.013 * pc.period();
            const Vec2 g = pc.at(u);
            const FiberSolutions fs = solve_fiber(v, s, g[0], g[1]);
            if (fs.status != FiberStatus::two_sheets) continue;
            for (const Vec2& x : fs.solutions) {
                V3 X(u, x[0], x[1]);
                V3 Xc;
                // polish on the spline parameterization
                if (!sys.correct(X, V3(1, 0, 0), opt.tol, Xc)) throw CompositionError("fiber_product: seed does not converge");
                seeds.push_back(Xc);
            }
        }
        if (seeds.empty()) throw CompositionError("fiber_product: no regular seed found");

        std::vector<Branch> found;
        if (pc.periodic()) {
            // distinct sheets over a circle: continue them independently
            std::vector<std::future<Branch>> jobs;
            for (const V3& x : seeds)
                jobs.push_back(std::async(std::launch::async, [&, x] { return trace(sys, x, opt, static_cast<int>(ci)); }));
            for (std::size_t k = 0; k < jobs.size(); ++k) {
                Branch br = jobs[k].get();
                bool dup = false;
                for (const Branch& b : found) dup = dup || on_branch(pc, b, seeds[k], 4 * opt.h0);
                if (!dup) found.push_back(std::move(br));
            }
        } else {
            for (const V3& x : seeds) {
                bool dup = false;
                for (const Branch& b : found) dup = dup || on_branch(pc, b, x, 4 * opt.h0);
                if (!dup) found.push_back(trace(sys, x, opt, static_cast<int>(ci)));
            }
        }
        for (Branch& b : found) fp.branches.push_back(std::move(b));
    }
    return fp;
}

ImmersedCurve push_forward(const FiberProduct& fp) {
    return push_with(fp, Side::P1, [](const Rep& r) { return pi1_characters(r); });
}

ImmersedCurve push_forward_factored(const FiberProduct& fp) {
    return push_with(fp, Side::P1, [](const Rep& r) { return theta_r3(pi0_characters(u_involution(r))); });
}

ImmersedCurve compose(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt) {
    const TransversalityReport tr = check_transversality(c, v, s);
    if (!tr.transverse) throw TangencyError("compose: " + tr.reason + "; try a different s");
    return with_refinement(c, v, s, opt, [](const FiberProduct& fp) { return push_forward(fp); });
}

ImmersedCurve pullback(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt) {
    if (c.side != Side::P1) throw std::invalid_argument("pullback: curve must lie in P1");
    // pi1 = Psi Theta pi0 U, so pi1^-1(c) = U(pi0^-1(Theta Psi^-1 c))
    const ImmersedCurve c0 = apply_theta(apply_psi(c));
    const TransversalityReport tr = check_transversality(c0, v, s);
    if (!tr.transverse) throw TangencyError("pullback: " + tr.reason + "; try a different s");
    return with_refinement(c0, v, s, opt, [](const FiberProduct& fp) {
        return push_with(fp, Side::P0, [](const Rep& r) { return pi0_characters(u_involution(r)); });
    });
}

ImmersedCurve predicted(const ImmersedCurve& c, double s) {
    if (c.side != Side::P0) throw std::invalid_argument("predicted: curve must lie in P0");
    ImmersedCurve out;
    out.side = Side::P0;
    for (const Component& k : c.components) {
        const ImmersedCurve one = single(Side::P0, k);
        const ImmersedCurve img = k.kind == CurveKind::circle ? double_curve(one) : figure_eight(one, s, 2000);
        for (const Component& x : img.components) out.components.push_back(x);
    }
    return apply_psi(out);
}

TheoremBReport verify_theorem_B(const ImmersedCurve& c, Variant v, double s) {
    if (c.components.size() != 1) throw std::invalid_argument("verify_theorem_B: needs a single component");
    TheoremBReport rep;
    const TransversalityReport tr = check_transversality(c, v, s);
    rep.fold_crossings = static_cast<int>(tr.crossings.size());
    if (!tr.transverse) throw TangencyError("verify_theorem_B: " + tr.reason);
    const ImmersedCurve got = compose(c, v, s);
    const ImmersedCurve want = predicted(c, s);
    rep.branches = static_cast<int>(got.components.size());
    rep.computed = invariants(got).canonical();
    rep.expected = invariants(want).canonical();
    rep.hausdorff = hausdorff_r3(got, want);
    rep.ok = rep.computed == rep.expected;
    if (!rep.ok) {
        std::ostringstream os;
        os << "components " << rep.computed.components << " vs " << rep.expected.components << "; double points "
           << rep.computed.double_points << " vs " << rep.expected.double_points;
        for (std::size_t i = 0; i < std::min(rep.computed.per.size(), rep.expected.per.size()); ++i) {
            const auto &a = rep.computed.per[i], &b = rep.expected.per[i];
            if (a == b) continue;
            os << "; component " << i << ": homology (" << a.homology[0] << "," << a.homology[1] << ") vs (" << b.homology[0]
               << "," << b.homology[1] << "), rotation " << a.rotation << " vs " << b.rotation << ", windings";
            for (int k = 0; k < 4; ++k) os << ' ' << a.corner_winding[k] << '/' << b.corner_winding[k];
            os << ", double points " << a.double_points << " vs " << b.double_points << ", flagged " << a.flagged << " vs "
               << b.flagged << ", closure " << a.closure_sign << " vs " << b.closure_sign;
        }
        rep.diff = os.str();
    }
    return rep;
}

std::vector<R3> tangents_at_x_zero(const ImmersedCurve& c) {
    std::vector<R3> out;
    for (const Component& k : c.components) {
        const auto& L = k.lift;
        const std::size_t n = L.size() - 1;  // last point repeats the first in P
        auto p = [&](std::size_t i) { return r3_of(L[i % n][0], L[i % n][1]); };
        for (std::size_t i = 0; i < n; ++i) {
            const R3 a = p(i), b = p(i + 1);
            if ((a[0] < 0) == (b[0] < 0)) continue;
            // central difference over the crossing segment
            const R3 pa = p(i + n - 1), pb = p(i + 2);
            R3 t{pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]};
            const double sc = -1 / t[0];
            out.push_back({-1, t[1] * sc, t[2] * sc});
        }
    }
    return out;
}

}  // namespace pcase
