#pragma once

#include <array>
#include <string>

#include "pillowcase/words.hpp"

namespace pcase {

enum class Side { P0, P1 };
std::string to_string(Side s);
Side parse_side(const std::string& s);

using R3 = std::array<double, 3>;

struct PillowPoint {
    Side side = Side::P0;
    double gamma = 0, theta = 0;  // canonical orbit representative
    R3 r3{};

    bool is_corner(double tol = 1e-8) const;
};

// Canonical representative: gamma in [0,pi]; if gamma is 0 or pi, theta in [0,pi].
PillowPoint make_pillow(Side side, double gamma, double theta);
R3 r3_of(double gamma, double theta);
double surface_residual(const R3& p);  // x^2+y^2+z^2-2xyz-1
// An orbit representative (gamma, theta) of a point on the pillowcase surface.
std::array<double, 2> angles_from_r3(const R3& p);
double r3_dist(const R3& a, const R3& b);

PillowPoint pi0(const ChartPoint& pt);
R3 pi0_characters(const Rep& rep);
R3 pi1_characters(const Rep& rep);
// Throws std::domain_error when the characters are off the pillowcase surface.
PillowPoint pi1(const Rep& rep);

PillowPoint theta_map(const PillowPoint& p);
R3 theta_r3(const R3& p);
PillowPoint psi_map(const PillowPoint& p);
PillowPoint w1_hat(const PillowPoint& p);
PillowPoint w2_hat(const PillowPoint& p);

ChartPoint W1(const ChartPoint& pt);
ChartPoint W2(const ChartPoint& pt);
ChartPoint iota_hat(const ChartPoint& pt);

// Re-gauged image of the involution U_s.
Rep u_involution(const Rep& rep);
// Chart coordinates of a slice rep (a = i, b and f in the ij-plane).
ChartPoint chart_of(const Rep& rep);
double verify_factorization(const Rep& rep);

}  // namespace pcase
