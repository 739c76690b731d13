#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pillowcase/curves.hpp"
#include "pillowcase/variety.hpp"

namespace pcase {

// Numerical failure during composition (non-convergence, tangency).
struct CompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TangencyError : CompositionError {
    using CompositionError::CompositionError;
};

struct FoldCrossing {
    int component = 0;
    double param = 0;  // fractional vertex index
    int corner = 0;
    double angle = 0;  // radians, in the corner chart
    Vec2 point{};
};

struct TransversalityReport {
    bool transverse = true;
    std::vector<FoldCrossing> crossings;
    std::string reason;
};

TransversalityReport check_transversality(const ImmersedCurve& c, const std::vector<FoldCircle>& folds);
TransversalityReport check_transversality(const ImmersedCurve& c, Variant v, double s);

// Cached fold locus per (variant, s).
const std::vector<FoldCircle>& cached_fold_locus(Variant v, double s);

struct FiberSample {
    double t = 0, nu = 0, tau = 0;
    double gamma = 0, theta = 0;  // input curve at t
    SheetLabel sheet = SheetLabel::plus;
};

struct Branch {
    int component = 0;
    std::vector<FiberSample> samples;  // closed loop; the last sample precedes the first
    std::vector<std::size_t> reversals;  // indices where dt/ds changes sign
    bool closed = false;
};

struct FiberProduct {
    ImmersedCurve input;
    Variant variant = Variant::earring;
    double s = 0;
    std::vector<Branch> branches;

    ChartPoint chart(const FiberSample& x) const { return {s, x.gamma, x.theta, x.nu, x.tau}; }
    double max_residual() const;  // max |G| (resp. |G'|) over all samples
};

struct ContinuationOptions {
    double h0 = 1e-3;
    double h_min = 1e-7;
    double shrink = 0.5;
    int max_steps = 100000;
    double close_tol = 1e-5;
    double tol = 1e-12;  // on the rescaled system
};

FiberProduct fiber_product(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt = {});

// Image under pi1 of each branch, as a P1 curve.
ImmersedCurve push_forward(const FiberProduct& fp);
// Same branches pushed through Psi o Theta o pi0 o U.
ImmersedCurve push_forward_factored(const FiberProduct& fp);

// Forward composition: transversality check, fiber product, push-forward.
ImmersedCurve compose(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt = {});
// Transposed composition of a P1 curve back to P0.
ImmersedCurve pullback(const ImmersedCurve& c, Variant v, double s, const ContinuationOptions& opt = {});

// Psi o F8 for arcs, Psi o D for circles.
ImmersedCurve predicted(const ImmersedCurve& c, double s);

struct TheoremBReport {
    bool ok = false;
    CurveInvariants computed, expected;
    double hausdorff = 0;
    int fold_crossings = 0;
    int branches = 0;
    std::string diff;
};

TheoremBReport verify_theorem_B(const ImmersedCurve& c, Variant v, double s);

// Unit tangents (scaled to x = -1) of a P1 curve where its R3 x-coordinate vanishes.
std::vector<R3> tangents_at_x_zero(const ImmersedCurve& c);

}  // namespace pcase
