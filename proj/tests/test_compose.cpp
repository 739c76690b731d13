#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pillowcase/compose.hpp"
#include "support.hpp"

using namespace pcase;
using namespace testing_support;

namespace {

ImmersedCurve p0(Component c) { return single(Side::P0, std::move(c)); }

// [sigma, -2s cos(sigma + shift(sigma))] on side P1, densely sampled.
template <class Shift>
ImmersedCurve teardrop(double s, Shift shift, int n = 200000) {
    Component c;
    c.kind = CurveKind::circle;
    for (int k = 0; k <= n; ++k) {
        const double sg = 2 * pi * k / n;
        c.lift.push_back({sg, -2 * s * std::cos(sg + shift(sg))});
    }
    return single(Side::P1, c);
}

// eta by bisection on 2 eta + s cos(sigma + 2 eta) = 0
double eta_bisect(double s, double sigma) {
    double lo = -std::abs(s), hi = std::abs(s);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        const double f = 2 * m + s * std::cos(sigma + 2 * m);
        ((f > 0) == (2 * hi + s * std::cos(sigma + 2 * hi) > 0) ? hi : lo) = m;
    }
    return 0.5 * (lo + hi);
}

double seg_dist2(const Vec2& p, const Vec2& a, const Vec2& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double t = std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
    return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

Component curved_arc() {
    Component c;
    c.kind = CurveKind::good_arc;
    for (int k = 0; k <= 720; ++k) {
        const double t = pi * k / 720;
        c.lift.push_back({t, t + 0.3 * std::sin(2 * t)});
    }
    return c;
}

}  // namespace

TEST_CASE("transversality to the fold image") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass}) {
        const TransversalityReport b = check_transversality(p0(beta()), v, s);
        CHECK(b.transverse);
        REQUIRE(b.crossings.size() == 2);
        for (const FoldCrossing& x : b.crossings) CHECK(x.angle > 1e-2);
        CHECK(b.crossings[0].corner != b.crossings[1].corner);

        CHECK(check_transversality(p0(vertical_circle()), v, s).crossings.empty());

        // a vertical circle through the rightmost point of the fold image at (0,0)
        const auto& folds = cached_fold_locus(v, s);
        double gmax = 0;
        for (const FoldCircle& fc : folds)
            if (fc.eps_gamma > 0 && fc.eps_theta > 0)
                for (const Vec2& w : fc.image) gmax = std::max(gmax, std::asin(w[0]));
        REQUIRE(gmax > s);
        Component touch = vertical_circle();
        for (Vec2& p : touch.lift) p[0] = gmax;
        const TransversalityReport t = check_transversality(p0(touch), v, s);
        CHECK_FALSE(t.transverse);
        CHECK_THROWS_AS(compose(p0(touch), v, s), TangencyError);

        // moved inside: clean crossings near (0,0) and (0,pi)
        for (Vec2& p : touch.lift) p[0] = gmax - 0.02;
        const TransversalityReport in = check_transversality(p0(touch), v, s);
        CHECK(in.transverse);
        CHECK(in.crossings.size() == 4);
    }
}

TEST_CASE("fiber product over the vertical circle") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass}) {
        const ImmersedCurve c = p0(vertical_circle());
        const FiberProduct fp = fiber_product(c, v, s);
        REQUIRE(fp.branches.size() == 2);
        CHECK(fp.max_residual() < 1e-9);
        int plus_near_zero = 0;
        for (const Branch& br : fp.branches) {
            CHECK(br.closed);
            CHECK(br.reversals.empty());
            const FiberSample& x0 = br.samples.front();
            if (std::abs(std::remainder(x0.tau, 2 * pi)) < 0.3 && x0.sheet == SheetLabel::plus) ++plus_near_zero;
            // each branch projects onto the input curve {(0, cos t, sin t)}
            double worst = 0;
            for (const FiberSample& x : br.samples) {
                const R3 q = pi0_characters(embed_L(fp.chart(x), v));
                worst = std::max({worst, std::abs(q[0]), std::abs(q[1] * q[1] + q[2] * q[2] - 1)});
            }
            CHECK(worst < 1e-8);
            // sheets do not change away from the folds
            for (const FiberSample& x : br.samples) CHECK(x.sheet == x0.sheet);
        }
        CHECK(plus_near_zero == 1);
        CHECK(fp.branches[0].samples.front().sheet != fp.branches[1].samples.front().sheet);
    }
}

TEST_CASE("fiber product over beta follows the closed-form circle") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass}) {
        const FiberProduct fp = fiber_product(p0(beta()), v, s);
        REQUIRE(fp.branches.size() == 1);
        CHECK(fp.branches[0].reversals.size() == 2);
        CHECK(fp.max_residual() < 1e-9);

        // (Re(b conj a), Re(b conj h)) along k_circle, densely sampled
        std::vector<Vec2> ref;
        const int n = 40000;
        for (int k = 0; k <= n; ++k) {
            const Rep r = k_circle(v, s, 2 * pi * k / n);
            ref.push_back({real_part(r.b * conj(r.a)), real_part(r.b * conj(r.h))});
        }
        double worst = 0;
        const auto& S = fp.branches[0].samples;
        for (std::size_t i = 0; i < S.size(); i += 11) {
            const Rep r = embed_L(fp.chart(S[i]), v);
            const Vec2 q{real_part(r.b * conj(r.a)), real_part(r.b * conj(r.h))};
            double best = 1e9;
            for (std::size_t k = 0; k + 1 < ref.size(); ++k) best = std::min(best, seg_dist2(q, ref[k], ref[k + 1]));
            worst = std::max(worst, best);
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("fold-crossing parity") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass})
        for (const Component& arc : {slope_one_arc(), slope_two_arc(), curved_arc()}) {
            const TransversalityReport tr = check_transversality(p0(arc), v, s);
            const FiberProduct fp = fiber_product(p0(arc), v, s);
            REQUIRE(fp.branches.size() == 1);
            CHECK(fp.branches[0].reversals.size() == tr.crossings.size());
            CHECK(fp.max_residual() < 1e-9);
        }
}

TEST_CASE("push-forward of beta") {
    const double s = 0.1;
    const ImmersedCurve by = compose(p0(beta()), Variant::bypass, s);
    CHECK(by.side == Side::P1);
    CHECK(hausdorff_r3(by, teardrop(s, [](double) { return 0.0; })) < 1e-6);
    CHECK(self_intersect(by).count == 1);

    const ImmersedCurve ea = compose(p0(beta()), Variant::earring, s);
    CHECK(hausdorff_r3(ea, teardrop(s, [s](double sg) { return 2 * eta_bisect(s, sg); })) < 1e-6);
    CHECK(self_intersect(ea).count == 1);
    // earring and bypass images differ at order s^2
    CHECK(hausdorff_r3(ea, by) > 1e-3);
}

TEST_CASE("factorization along the fiber product") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass})
        for (const Component& c : {beta(), vertical_circle(90)}) {
            const FiberProduct fp = fiber_product(p0(c), v, s);
            const ImmersedCurve a = push_forward(fp), b = push_forward_factored(fp);
            REQUIRE(a.components.size() == b.components.size());
            double worst = 0;
            for (std::size_t k = 0; k < a.components.size(); ++k) {
                const auto &la = a.components[k].lift, &lb = b.components[k].lift;
                REQUIRE(la.size() == lb.size());
                for (std::size_t i = 0; i < la.size(); ++i) worst = std::max(worst, r3_dist(r3_of(la[i][0], la[i][1]), r3_of(lb[i][0], lb[i][1])));
            }
            CHECK(worst < 1e-6);
        }
}

TEST_CASE("vertical circle composes to a nearby double") {
    for (Variant v : {Variant::earring, Variant::bypass}) {
        std::vector<double> d;
        for (double s : {0.1, 0.05, 0.025}) {
            const ImmersedCurve out = compose(p0(vertical_circle()), v, s);
            REQUIRE(out.components.size() == 2);
            const ImmersedCurve target = apply_psi(p0(vertical_circle()));
            double m = 0;
            for (const Component& k : out.components) m = std::max(m, hausdorff_r3(single(Side::P1, k), target));
            CHECK(m <= 5 * s);
            d.push_back(m);
        }
        // linear decay in s
        CHECK(d[0] / d[1] == doctest::Approx(2).epsilon(0.2));
        CHECK(d[1] / d[2] == doctest::Approx(2).epsilon(0.2));
    }
}

TEST_CASE("composition matches the predicted curve") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass}) {
        for (const Component& c : {beta(), slope_one_arc(), curved_arc(), vertical_circle()}) {
            const TheoremBReport r = verify_theorem_B(p0(c), v, s);
            CHECK_MESSAGE(r.ok, r.diff);
        }
        const TheoremBReport tw = verify_theorem_B(twisted_double(p0(vertical_circle())), v, s);
        CHECK_MESSAGE(tw.ok, tw.diff);
        CHECK(tw.branches == 2);
    }
}

TEST_CASE("tangent anchor at the teardrop") {
    for (Variant v : {Variant::earring, Variant::bypass})
        for (double s : {0.05, 0.025}) {
            const std::vector<R3> t = tangents_at_x_zero(compose(p0(beta()), v, s));
            REQUIRE(t.size() == 2);
            int hit_plus = 0, hit_minus = 0;
            for (const R3& x : t) {
                if (r3_dist(x, {-1, 0, -1 + 2 * s}) < 3 * s * s) ++hit_plus;
                if (r3_dist(x, {-1, 0, -1 - 2 * s}) < 3 * s * s) ++hit_minus;
            }
            CHECK(hit_plus == 1);
            CHECK(hit_minus == 1);
        }
}

TEST_CASE("pullback") {
    const double s = 0.05;
    for (Variant v : {Variant::earring, Variant::bypass}) {
        // Theta fixes beta and the vertical circle, so the pullbacks look like their forward images in P0
        const ImmersedCurve b = pullback(apply_psi(p0(beta())), v, s);
        CHECK(b.side == Side::P0);
        CHECK(invariants(b).canonical() == invariants(figure_eight(p0(beta()), s)).canonical());
        const ImmersedCurve c = pullback(apply_psi(p0(vertical_circle())), v, s);
        CHECK(invariants(c).canonical() == invariants(double_curve(p0(vertical_circle()))).canonical());
    }
    CHECK_THROWS_AS(pullback(p0(beta()), Variant::earring, s), std::invalid_argument);
}

TEST_CASE("torus-knot pairings") {
    const double s = 0.05;
    const ImmersedCurve a1 = p0(slope_one_arc());
    ImmersedCurve w = double_curve(twisted_double(p0(vertical_circle())));
    w.components.insert(w.components.begin(), slope_two_arc());
    w = apply_psi(w);
    for (Variant v : {Variant::earring, Variant::bypass}) {
        CHECK(intersect(compose(a1, v, s), w).count == 9);
        CHECK(intersect(a1, pullback(w, v, s)).count == 9);
    }
}

TEST_CASE("compose input checks") {
    CHECK_THROWS_AS(fiber_product(apply_psi(p0(beta())), Variant::earring, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(fiber_product(p0(beta_bl()), Variant::earring, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(fiber_product(p0(beta()), Variant::earring, 0.0), std::invalid_argument);
}
