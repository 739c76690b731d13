#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pillowcase/quat.hpp"
#include "pillowcase/words.hpp"

namespace testing_support {

constexpr double pi = std::numbers::pi;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(unsigned long seed = 0) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    double angle() { return uniform(0, 2 * pi); }
    pcase::Quat unit() {
        std::normal_distribution<double> n;
        pcase::Quat q{n(rng), n(rng), n(rng), n(rng)};
        return pcase::normalized(q);
    }
    pcase::Quat pure_unit() {
        std::normal_distribution<double> n;
        pcase::Quat q{0, n(rng), n(rng), n(rng)};
        return pcase::normalized(q);
    }
    pcase::ChartPoint chart(double smax = 0.2) {
        return {uniform(-smax, smax), angle(), angle(), uniform(-0.5, 0.5), angle()};
    }
};

// Hamilton product through the left-multiplication matrix.
inline pcase::Quat matrix_mul(const pcase::Quat& a, const pcase::Quat& b) {
    const double L[4][4] = {{a.w, -a.x, -a.y, -a.z}, {a.x, a.w, -a.z, a.y}, {a.y, a.z, a.w, -a.x}, {a.z, -a.y, a.x, a.w}};
    const double v[4] = {b.w, b.x, b.y, b.z};
    double r[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += L[i][j] * v[j];
    return {r[0], r[1], r[2], r[3]};
}

// exp by truncated power series.
inline pcase::Quat series_exp(const pcase::Quat& v, int terms = 30) {
    pcase::Quat sum{1, 0, 0, 0}, term{1, 0, 0, 0};
    for (int k = 1; k < terms; ++k) {
        term = (1.0 / k) * matrix_mul(term, v);
        sum = sum + term;
    }
    return sum;
}

inline double qdist(const pcase::Quat& a, const pcase::Quat& b) { return (a - b).norm(); }

}  // namespace testing_support
