#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pillowcase/compose.hpp"

namespace pcase::cli {

enum Exit { ok = 0, verification_failed = 1, usage = 2, numerical = 3 };

// A set of curves on one side, drawn over the fundamental domain.
struct Scene {
    Side side = Side::P0;
    std::vector<std::pair<std::string, ImmersedCurve>> curves;
    std::vector<FoldCircle> folds;  // optional annotation
};

// SVG 1.1 of [0,pi] x [0,2pi] with corner markers, fold images and curves.
std::string render_svg(const Scene& scene);

// Built-in curve by name (beta, beta_bl, ..., slope_one, slope_two, bver), or a JSON curve file.
ImmersedCurve load_curve(const std::string& spec);

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    Variant variant = Variant::earring;
    double s = 0.05;
    unsigned long seed = 0;
    double fault = 0;  // added to every defining-equation residual (mutation testing)
};

std::vector<SuiteResult> verify_all(const VerifyOptions& opt);

struct TorusKnotResult {
    int forward = 0;   // (u_s)_*(A1) against A2 and D(D~(B_ver)) in P1
    int backward = 0;  // A1 against the pullback of the same curves in P0
    ImmersedCurve a1, w_side, composed, pulled;
};

TorusKnotResult torus_knot(Variant v, double s);

// Entry point; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcase::cli
