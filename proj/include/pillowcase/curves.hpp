#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pillowcase/numeric.hpp"
#include "pillowcase/pillowcase.hpp"

namespace pcase {

enum class CurveKind { circle, good_arc, open_arc };
std::string to_string(CurveKind k);
CurveKind parse_curve_kind(const std::string& s);

// Deck transformation of the plane over P*: x -> sign * x + shift, shift in 2 pi Z^2.
struct Deck {
    int sign = 1;
    Vec2 shift{0, 0};
    Vec2 apply(const Vec2& x) const { return {sign * x[0] + shift[0], sign * x[1] + shift[1]}; }
};

// A polyline lift to the plane. For circles the last point is the deck image of the first.
struct Component {
    CurveKind kind = CurveKind::circle;
    std::vector<Vec2> lift;

    Deck closure() const;  // circles only; throws if the ends are not deck-related
    double length() const;
};

struct ImmersedCurve {
    Side side = Side::P0;
    std::vector<Component> components;
};

ImmersedCurve single(Side side, Component c);

// Raised for tangential crossings when transverse position is required.
struct NonGeneric : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Corners in the order (0,0), (pi,0), (0,pi), (pi,pi).
constexpr int kCornerCount = 4;
Vec2 corner_point(int k);

struct ComponentInvariants {
    CurveKind kind = CurveKind::circle;
    std::array<int, 4> corner_winding{0, 0, 0, 0};  // relative, shifted so the lower median is 0
    std::array<int, 2> homology{0, 0};             // of the closed lift in H1(T)
    int closure_sign = 1;                           // -1 when the lift closes up only through iota
    double rotation = 0;                            // turning / 2 pi, a multiple of 1/2
    int double_points = 0;
    int flagged = 0;  // near-tangential self crossings, not counted

    bool operator==(const ComponentInvariants&) const = default;
};

struct CurveInvariants {
    int components = 0;
    std::vector<ComponentInvariants> per;
    int double_points = 0;  // all transverse self and mutual crossings; reported, not compared
    int flagged = 0;

    // Orientation- and lift-independent form; components sorted.
    CurveInvariants canonical() const;
    // Mutual crossings between components change under regular homotopy, so only
    // the component count and per-component data take part.
    bool operator==(const CurveInvariants& o) const { return components == o.components && per == o.per; }
};

struct Crossing {
    Vec2 point;  // representative in the plane
    double angle = 0;
    int sign = 0;
    int comp_a = 0, comp_b = 0;
    double param_a = 0, param_b = 0;  // fractional vertex index along each lift
};

struct IntersectionResult {
    std::vector<Crossing> points;  // one per point of P
    int count = 0;
    int flagged = 0;
};

struct IntersectOptions {
    double angle_tol = 1e-3;
    bool throw_on_tangency = true;
};

IntersectionResult intersect(const ImmersedCurve& a, const ImmersedCurve& b, const IntersectOptions& opt = {});
IntersectionResult self_intersect(const ImmersedCurve& c, const IntersectOptions& opt = {.angle_tol = 1e-3, .throw_on_tangency = false});

CurveInvariants invariants(const ImmersedCurve& c);

ImmersedCurve double_curve(const ImmersedCurve& c);
ImmersedCurve twisted_double(const ImmersedCurve& c);

// Equivariant circle lift of a good arc: the arc followed by its reflection through the end corner.
std::vector<Vec2> circle_lift(const Component& arc);
ImmersedCurve figure_eight(const ImmersedCurve& arc, double s, int samples = 720);

// Immersion proxy: largest turn between consecutive segments (radians), closing turn included.
double max_turn(const Component& c);

// Standard curves. n is the number of segments per pi of parameter.
Component beta(int n = 360);
Component beta_bl(double eps = 1.0, int n = 360);
Component beta_br(double eps = 1.0, int n = 360);
Component beta_tl(double eps = 1.0, int n = 360);
Component beta_tr(double eps = 1.0, int n = 360);
Component slope_one_arc(int n = 360);
Component slope_two_arc(int n = 360);
Component vertical_circle(int n = 360);

ImmersedCurve map_curve(const ImmersedCurve& c, const std::function<Vec2(const Vec2&)>& f);
ImmersedCurve apply_w1(const ImmersedCurve& c);
ImmersedCurve apply_w2(const ImmersedCurve& c);
ImmersedCurve apply_theta(const ImmersedCurve& c);
ImmersedCurve apply_psi(const ImmersedCurve& c);

// Hausdorff distance between the images in the R3 model of the pillowcase.
double hausdorff_r3(const ImmersedCurve& a, const ImmersedCurve& b);
// Distance in R3 from p to the curve.
double distance_r3(const ImmersedCurve& c, const R3& p);

std::string to_json(const ImmersedCurve& c);
ImmersedCurve curve_from_json(const std::string& text);

}  // namespace pcase
