#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pillowcase/numeric.hpp"
#include "pillowcase/words.hpp"

namespace pcase {

enum class FiberStatus { two_sheets, fold_region, empty, failed };
enum class SheetLabel { plus, minus };

std::string to_string(FiberStatus s);
std::string to_string(SheetLabel s);

struct FiberSolutions {
    double gamma = 0, theta = 0;
    Variant variant = Variant::earring;
    double s = 0;
    std::vector<Vec2> solutions;  // (nu, tau)
    FiberStatus status = FiberStatus::failed;
    double max_cond = 0;
};

struct FiberConfig {
    double max_ds = 0.01;
    double cond_limit = 1e8;
    double dedup = 1e-6;
    int max_halvings = 14;
};

FiberSolutions solve_fiber(Variant v, double s, double gamma, double theta, const FiberConfig& cfg = {});

// Sheet of an s=0 seed, extended by continuity: sign of (cos tau, sin tau).(sin gamma, sin theta).
SheetLabel sheet_of(double gamma, double theta, double tau);

struct FoldCircle {
    int eps_gamma = 1, eps_theta = 1;
    double s = 0;
    std::vector<ChartPoint> samples;
    std::vector<Vec2> image;  // (sin gamma, sin theta) near the corner

    double corner_gamma() const;
    double corner_theta() const;
    int winding() const;
    double mean_radius() const;
    double max_radius_deviation() const;  // max | |image| - 2|s| |
    // Radius of the image circle in direction phi, by interpolation.
    double radius_at(double phi) const;

private:
    mutable std::vector<std::pair<double, double>> polar_;
};

struct FoldConfig {
    int samples = 720;
};

std::vector<FoldCircle> fold_locus(Variant v, double s, const FoldConfig& cfg = {});

// Local corner chart: (sin gamma, sin theta) relative to the nearest corner.
struct CornerChart {
    int corner = 0;  // 0:(0,0) 1:(pi,0) 2:(0,pi) 3:(pi,pi)
    Vec2 w{};
};
CornerChart corner_chart(double gamma, double theta);

// Rank data of d(pi0) and d(pi1) on the tangent plane of the variety.
struct FoldRank {
    double ratio0 = 0, ratio1 = 0;  // sigma_min / sigma_max
    double kernel_angle = 0;        // angle between the two kernels
};
FoldRank fold_rank(Variant v, const ChartPoint& pt);

struct TopologyReport {
    Variant variant = Variant::earring;
    double s = 0;
    int grid = 64;
    int two_sheets = 0, fold_region = 0, empty = 0, failed = 0;
    int inconsistent = 0;
    int fold_circles = 0;
    std::vector<int> windings;
    int sheets = 2;
    int euler_characteristic = 0;
    int genus_upstairs = 0;
    int genus_quotient = 0;
    bool degenerate = false;
    bool consistent = false;
    std::string note;
};

// cells, when given, receives the grid fibers in row order (gamma outer).
TopologyReport verify_topology(Variant v, double s, int grid = 64, std::vector<FiberSolutions>* cells = nullptr);

double eta(double s, double sigma);
Rep k_circle(Variant v, double s, double sigma);

}  // namespace pcase
