#include "pillowcase/curves.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <tuple>
#include <unordered_map>

namespace pcase {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }
Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec2 add(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec2 scale(double k, const Vec2& a) { return {k * a[0], k * a[1]}; }

double lattice_err(const Vec2& d) {
    return std::hypot(std::remainder(d[0], kTwoPi), std::remainder(d[1], kTwoPi));
}
Vec2 lattice_round(const Vec2& d) { return {kTwoPi * std::round(d[0] / kTwoPi), kTwoPi * std::round(d[1] / kTwoPi)}; }

// ------------------------------------------------------------ segment sweep

struct Seg {
    Vec2 a, b;
    int comp = 0;
    bool image = false;  // iota image of the lift
    int idx = 0;
    int set = 0;
    Vec2 prev{};  // direction of the segment arriving at a
};

void push_component(std::vector<Seg>& out, const Component& c, int comp, int set) {
    const size_t n = c.lift.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        const Vec2& p = c.lift[i];
        const Vec2& q = c.lift[i + 1];
        Vec2 prev = sub(q, p);  // arcs continue through the corner by the point reflection
        if (i > 0) {
            prev = sub(p, c.lift[i - 1]);
        } else if (c.kind == CurveKind::circle && n > 2) {
            prev = scale(c.closure().sign, sub(c.lift[n - 1], c.lift[n - 2]));
        }
        out.push_back({p, q, comp, false, static_cast<int>(i), set, prev});
        out.push_back({{-p[0], -p[1]}, {-q[0], -q[1]}, comp, true, static_cast<int>(i), set, scale(-1, prev)});
    }
}

// Do the polylines cross at a point where at least one of them has a vertex?
// Rays leave the point along -in and +out; a shared direction means overlap, not a crossing.
bool vertex_crossing(const Seg& A, const Seg& B, bool at_a, bool at_b) {
    const Vec2 dA = sub(A.b, A.a), dB = sub(B.b, B.a);
    auto side = [](const Vec2& line, const Vec2& r) {
        const double c = cross(line, r);
        return std::abs(c) < 1e-10 * norm(line) * norm(r) ? 0 : (c > 0 ? 1 : -1);
    };
    if (at_a && !at_b) {
        const int x = side(dB, scale(-1, A.prev)), y = side(dB, dA);
        return x != 0 && y != 0 && x != y;
    }
    if (at_b && !at_a) {
        const int x = side(dA, scale(-1, B.prev)), y = side(dA, dB);
        return x != 0 && y != 0 && x != y;
    }
    // both at vertices: B's rays must lie on opposite sides of A's path
    const Vec2 ain = scale(-1, A.prev), bin = scale(-1, B.prev);
    const double a0 = std::atan2(ain[1], ain[0]);
    auto rel = [&](const Vec2& r) {
        double t = std::atan2(r[1], r[0]) - a0;
        while (t < 0) t += kTwoPi;
        while (t >= kTwoPi) t -= kTwoPi;
        return t;
    };
    const double ao = rel(dA), b1 = rel(bin), b2 = rel(dB);
    const double tiny = 1e-10;
    for (double b : {b1, b2})
        if (b < tiny || kTwoPi - b < tiny || std::abs(b - ao) < tiny) return false;
    return (b1 < ao) != (b2 < ao);
}

struct Hit {
    size_t i, j;
    double t, u;
    Vec2 p;
    double angle;
    int sign;
};

// All crossings in T between segments of set 0 and set 1, or among set 0 when self is set.
std::vector<Hit> sweep(const std::vector<Seg>& segs, bool self) {
    std::vector<Hit> hits;
    if (segs.empty()) return hits;
    double longest = 0;
    for (const Seg& s : segs) longest = std::max(longest, norm(sub(s.b, s.a)));
    if (longest > 1.5) throw std::invalid_argument("curve sweep: segments must be shorter than 1.5");
    const int n = std::clamp(static_cast<int>(kTwoPi / std::max(longest, kTwoPi / 256)), 1, 256);
    const double h = kTwoPi / n;
    std::vector<std::vector<int>> cells(static_cast<size_t>(n) * n);
    auto cell_of = [&](double v) {
        int k = static_cast<int>(std::floor(v / h));
        k %= n;
        if (k < 0) k += n;
        return k;
    };
    for (size_t k = 0; k < segs.size(); ++k) {
        const Seg& s = segs[k];
        const double lx = std::min(s.a[0], s.b[0]), hx = std::max(s.a[0], s.b[0]);
        const double ly = std::min(s.a[1], s.b[1]), hy = std::max(s.a[1], s.b[1]);
        const int x0 = static_cast<int>(std::floor(lx / h)) - 1, x1 = static_cast<int>(std::floor(hx / h)) + 1;
        const int y0 = static_cast<int>(std::floor(ly / h)) - 1, y1 = static_cast<int>(std::floor(hy / h)) + 1;
        std::vector<int> seen;
        for (int x = x0; x <= x1; ++x)
            for (int y = y0; y <= y1; ++y) {
                const int cx = ((x % n) + n) % n, cy = ((y % n) + n) % n;
                const int id = cx * n + cy;
                if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
                seen.push_back(id);
                cells[id].push_back(static_cast<int>(k));
            }
    }
    constexpr double eps = 1e-9;
    for (size_t cid = 0; cid < cells.size(); ++cid) {
        const std::vector<int>& cell = cells[cid];
        for (size_t x = 0; x < cell.size(); ++x)
            for (size_t y = x + 1; y < cell.size(); ++y) {
                size_t i = cell[x], j = cell[y];
                if (!self) {
                    if (segs[i].set == segs[j].set) continue;
                    if (segs[i].set == 1) std::swap(i, j);
                } else if (i > j) {
                    std::swap(i, j);
                }
                const Seg& A = segs[i];
                const Seg& B = segs[j];
                const Vec2 dA = sub(A.b, A.a), dB = sub(B.b, B.a);
                const Vec2 shift = lattice_round(sub(scale(0.5, add(A.a, A.b)), scale(0.5, add(B.a, B.b))));
                const Vec2 b0 = add(B.a, shift);
                const double den = cross(dA, dB);
                const double la = norm(dA), lb = norm(dB);
                // below 1e-10 rad the segments overlap up to rounding (repeated passes, doubles)
                if (la == 0 || lb == 0 || std::abs(den) < 1e-10 * la * lb) continue;
                const Vec2 w = sub(b0, A.a);
                const double t = cross(w, dB) / den;
                const double u = cross(w, dA) / den;
                // half-open in both parameters, snapped so a crossing at a vertex is seen exactly once
                if (t < -eps || t >= 1 - eps || u < -eps || u >= 1 - eps) continue;
                const Vec2 p = add(A.a, scale(t, dA));
                // arcs meet their own iota image at the corners, which are not in P*
                if (std::hypot(std::remainder(p[0], kPi), std::remainder(p[1], kPi)) < eps) continue;
                const Vec2 r{p[0] - kTwoPi * std::floor(p[0] / kTwoPi), p[1] - kTwoPi * std::floor(p[1] / kTwoPi)};
                if (static_cast<size_t>(cell_of(r[0]) * n + cell_of(r[1])) != cid) continue;
                const bool at_a = t < eps, at_b = u < eps;
                if ((at_a || at_b) && !vertex_crossing(A, B, at_a, at_b)) continue;
                const double ang = std::asin(std::min(1.0, std::abs(den) / (la * lb)));
                hits.push_back({i, j, t, u, p, ang, den > 0 ? 1 : -1});
            }
    }
    return hits;
}

// A hit is reported once per point of P: pick one of the two iota-related preimages.
bool representative(const Seg& A, const Seg& B) {
    if (A.image == B.image) return !A.image;
    const Seg& plain = A.image ? B : A;
    const Seg& img = A.image ? A : B;
    if (plain.comp != img.comp) return plain.comp < img.comp;
    return plain.idx < img.idx;
}

IntersectionResult collect(const std::vector<Seg>& segs, const std::vector<Hit>& hits, bool self, const IntersectOptions& opt) {
    IntersectionResult out;
    int total = 0;
    for (const Hit& h : hits) {
        const Seg& A = segs[h.i];
        const Seg& B = segs[h.j];
        if (h.angle < opt.angle_tol) {
            if (opt.throw_on_tangency) throw NonGeneric("tangential crossing (angle " + std::to_string(h.angle) + ")");
            ++out.flagged;
            continue;
        }
        ++total;
        const bool rep = self ? representative(A, B) : !A.image;
        if (!rep) continue;
        Crossing c;
        c.point = A.image ? Vec2{-h.p[0], -h.p[1]} : h.p;
        c.angle = h.angle;
        c.sign = h.sign;
        c.comp_a = A.comp;
        c.comp_b = B.comp;
        c.param_a = A.idx + h.t;
        c.param_b = B.idx + h.u;
        out.points.push_back(c);
    }
    out.flagged /= 2;
    out.count = total / 2;
    return out;
}

// -------------------------------------------------------------- invariants

double turning(const Component& c, bool closing) {
    const auto& L = c.lift;
    double total = 0;
    for (size_t i = 0; i + 2 < L.size(); ++i) {
        const Vec2 d0 = sub(L[i + 1], L[i]), d1 = sub(L[i + 2], L[i + 1]);
        total += std::atan2(cross(d0, d1), dot(d0, d1));
    }
    if (closing && L.size() >= 3) {
        const Deck dk = c.closure();
        const Vec2 d0 = sub(L[L.size() - 1], L[L.size() - 2]);
        const Vec2 f = sub(L[1], L[0]);
        const Vec2 d1{dk.sign * f[0], dk.sign * f[1]};
        total += std::atan2(cross(d0, d1), dot(d0, d1));
    }
    return total;
}

double dist_point_seg(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 d = sub(b, a);
    const double l2 = dot(d, d);
    double t = l2 > 0 ? dot(sub(p, a), d) / l2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(sub(p, add(a, scale(t, d))));
}

// Flat distance in T from p to the curve and its iota image.
double torus_distance(const Component& c, const Vec2& p) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < c.lift.size(); ++i)
        for (int s : {1, -1}) {
            const Vec2 a = scale(s, c.lift[i]), b = scale(s, c.lift[i + 1]);
            const Vec2 sh = lattice_round(sub(p, scale(0.5, add(a, b))));
            best = std::min(best, dist_point_seg(p, add(a, sh), add(b, sh)));
        }
    return best;
}

std::array<int, 4> corner_windings(const Component& c) {
    // reference point in the open front face, as far from the curve as a coarse search finds
    Vec2 ref{kPi / 2, kPi / 2};
    double best = -1;
    for (int i = 1; i < 16; ++i)
        for (int j = 1; j < 16; ++j) {
            const Vec2 p{kPi * i / 16, kPi * j / 16};
            const double d = torus_distance(c, p);
            if (d > best) {
                best = d;
                ref = p;
            }
        }
    std::array<int, 4> w{};
    for (int k = 0; k < kCornerCount; ++k) {
        const Vec2 cp = corner_point(k);
        Component path;
        path.kind = CurveKind::open_arc;
        const int m = 64;
        for (int i = 0; i <= m; ++i) path.lift.push_back(add(ref, scale(static_cast<double>(i) / m, sub(cp, ref))));
        std::vector<Seg> segs;
        push_component(segs, c, 0, 0);
        push_component(segs, path, 0, 1);
        int signed_count = 0;
        for (const Hit& h : sweep(segs, false)) signed_count += h.sign;
        w[k] = signed_count / 2;
    }
    std::array<int, 4> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (int& v : w) v -= sorted[1];
    return w;
}

std::array<int, 4> recanon(std::array<int, 4> w) {
    std::array<int, 4> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (int& v : w) v -= sorted[1];
    return w;
}

Vec2 lerp(const Vec2& a, const Vec2& b, double t) { return add(a, scale(t, sub(b, a))); }

Component polyline(CurveKind kind, int segments, const std::function<Vec2(double)>& f) {
    Component c;
    c.kind = kind;
    for (int i = 0; i <= segments; ++i) c.lift.push_back(f(static_cast<double>(i) / segments));
    return c;
}

}  // namespace

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::circle: return "circle";
        case CurveKind::good_arc: return "good_arc";
        default: return "open_arc";
    }
}

CurveKind parse_curve_kind(const std::string& s) {
    if (s == "circle") return CurveKind::circle;
    if (s == "good_arc") return CurveKind::good_arc;
    if (s == "open_arc") return CurveKind::open_arc;
    throw std::invalid_argument("unknown curve kind: " + s);
}

Deck Component::closure() const {
    if (kind != CurveKind::circle || lift.size() < 2) throw std::logic_error("closure: not a circle");
    const Vec2& a = lift.front();
    const Vec2& b = lift.back();
    const double et = lattice_err(sub(b, a));
    const double er = lattice_err(add(b, a));
    const double tol = 1e-4;
    if (et <= er && et < tol) return {1, lattice_round(sub(b, a))};
    if (er < tol) return {-1, lattice_round(add(b, a))};
    throw std::domain_error("closure: circle lift does not close up in P");
}

double Component::length() const {
    double l = 0;
    for (size_t i = 0; i + 1 < lift.size(); ++i) l += norm(sub(lift[i + 1], lift[i]));
    return l;
}

ImmersedCurve single(Side side, Component c) {
    ImmersedCurve out;
    out.side = side;
    out.components.push_back(std::move(c));
    return out;
}

Vec2 corner_point(int k) { return {(k % 2) * kPi, (k / 2) * kPi}; }

IntersectionResult intersect(const ImmersedCurve& a, const ImmersedCurve& b, const IntersectOptions& opt) {
    if (a.side != b.side) throw std::invalid_argument("intersect: curves lie on different sides");
    std::vector<Seg> segs;
    for (size_t k = 0; k < a.components.size(); ++k) push_component(segs, a.components[k], static_cast<int>(k), 0);
    for (size_t k = 0; k < b.components.size(); ++k) push_component(segs, b.components[k], static_cast<int>(k), 1);
    return collect(segs, sweep(segs, false), false, opt);
}

IntersectionResult self_intersect(const ImmersedCurve& c, const IntersectOptions& opt) {
    std::vector<Seg> segs;
    for (size_t k = 0; k < c.components.size(); ++k) push_component(segs, c.components[k], static_cast<int>(k), 0);
    return collect(segs, sweep(segs, true), true, opt);
}

double max_turn(const Component& c) {
    const auto& L = c.lift;
    double m = 0;
    for (size_t i = 0; i + 2 < L.size(); ++i) {
        const Vec2 d0 = sub(L[i + 1], L[i]), d1 = sub(L[i + 2], L[i + 1]);
        m = std::max(m, std::abs(std::atan2(cross(d0, d1), dot(d0, d1))));
    }
    if (c.kind == CurveKind::circle && L.size() >= 3) {
        const Deck dk = c.closure();
        const Vec2 d0 = sub(L[L.size() - 1], L[L.size() - 2]);
        const Vec2 f = sub(L[1], L[0]);
        const Vec2 d1{dk.sign * f[0], dk.sign * f[1]};
        m = std::max(m, std::abs(std::atan2(cross(d0, d1), dot(d0, d1))));
    }
    return m;
}

CurveInvariants invariants(const ImmersedCurve& c) {
    CurveInvariants out;
    out.components = static_cast<int>(c.components.size());
    for (const Component& comp : c.components) {
        ComponentInvariants ci;
        ci.kind = comp.kind;
        if (comp.kind == CurveKind::circle) {
            const Deck dk = comp.closure();
            ci.closure_sign = dk.sign;
            if (dk.sign == 1) ci.homology = {static_cast<int>(std::lround(dk.shift[0] / kTwoPi)), static_cast<int>(std::lround(dk.shift[1] / kTwoPi))};
            ci.rotation = std::round(turning(comp, true) / kPi) / 2;
            ci.corner_winding = corner_windings(comp);
        } else if (comp.kind == CurveKind::good_arc && comp.lift.size() >= 2) {
            const Vec2 d = sub(comp.lift.back(), comp.lift.front());
            ci.homology = {static_cast<int>(std::lround(d[0] / kPi)), static_cast<int>(std::lround(d[1] / kPi))};
        }
        const IntersectionResult self = self_intersect(single(c.side, comp));
        ci.double_points = self.count;
        ci.flagged = self.flagged;
        out.per.push_back(ci);
    }
    const IntersectionResult all = self_intersect(c);
    out.double_points = all.count;
    out.flagged = all.flagged;
    return out;
}

CurveInvariants CurveInvariants::canonical() const {
    CurveInvariants out = *this;
    for (ComponentInvariants& ci : out.per) {
        // lift choice: iota negates the homology class
        if (ci.homology[0] < 0 || (ci.homology[0] == 0 && ci.homology[1] < 0)) ci.homology = {-ci.homology[0], -ci.homology[1]};
        // orientation: windings and rotation change sign
        ComponentInvariants rev = ci;
        for (int& v : rev.corner_winding) v = -v;
        rev.corner_winding = recanon(rev.corner_winding);
        rev.rotation = -ci.rotation;
        if (std::tie(rev.corner_winding, rev.rotation) < std::tie(ci.corner_winding, ci.rotation)) ci = rev;
    }
    std::sort(out.per.begin(), out.per.end(), [](const ComponentInvariants& a, const ComponentInvariants& b) {
        return std::tie(a.kind, a.corner_winding, a.homology, a.closure_sign, a.rotation, a.double_points, a.flagged) <
               std::tie(b.kind, b.corner_winding, b.homology, b.closure_sign, b.rotation, b.double_points, b.flagged);
    });
    return out;
}

ImmersedCurve double_curve(const ImmersedCurve& c) {
    ImmersedCurve out;
    out.side = c.side;
    for (const Component& comp : c.components) {
        if (comp.kind != CurveKind::circle) throw std::invalid_argument("double: arc component");
        out.components.push_back(comp);
        out.components.push_back(comp);
    }
    return out;
}

ImmersedCurve twisted_double(const ImmersedCurve& c) {
    ImmersedCurve out;
    out.side = c.side;
    for (const Component& comp : c.components) {
        if (comp.kind != CurveKind::circle) throw std::invalid_argument("twisted_double: arc component");
        const Deck dk = comp.closure();
        Component twice = comp;
        for (size_t i = 1; i < comp.lift.size(); ++i) twice.lift.push_back(dk.apply(comp.lift[i]));
        out.components.push_back(std::move(twice));
    }
    return out;
}

std::vector<Vec2> circle_lift(const Component& arc) {
    if (arc.kind != CurveKind::good_arc) throw std::invalid_argument("circle_lift: not a good arc");
    const auto& L = arc.lift;
    const Vec2 c1 = L.back();
    std::vector<Vec2> out = L;
    for (size_t i = L.size() - 1; i-- > 0;) out.push_back(sub(scale(2, c1), L[i]));
    return out;
}

ImmersedCurve figure_eight(const ImmersedCurve& arc, double s, int samples) {
    if (arc.components.size() != 1 || arc.components[0].kind != CurveKind::good_arc)
        throw std::invalid_argument("figure_eight: needs a single good arc");
    if (s == 0 || std::abs(s) > 1) throw std::domain_error("figure_eight: need 0 < |s| <= 1");
    const std::vector<Vec2> G = circle_lift(arc.components[0]);
    std::vector<double> cum{0};
    for (size_t i = 0; i + 1 < G.size(); ++i) cum.push_back(cum.back() + norm(sub(G[i + 1], G[i])));
    const double total = cum.back();
    const Vec2 period = sub(G.back(), G.front());
    auto at = [&](double l) {
        // arclength position on the periodic lift
        const double k = std::floor(l / total);
        const double r = l - k * total;
        size_t i = std::upper_bound(cum.begin(), cum.end(), r) - cum.begin();
        i = std::clamp<size_t>(i, 1, cum.size() - 1);
        const double seg = cum[i] - cum[i - 1];
        const Vec2 p = lerp(G[i - 1], G[i], seg > 0 ? (r - cum[i - 1]) / seg : 0);
        return add(p, scale(k, period));
    };
    Component out;
    out.kind = CurveKind::circle;
    const double dl = total / samples;
    for (int j = 0; j < samples; ++j) {
        const double sigma = kTwoPi * j / samples;
        const double l = total * j / samples;
        const Vec2 t = sub(at(l + 0.5 * dl), at(l - 0.5 * dl));
        const double tn = norm(t);
        const Vec2 nrm{-t[1] / tn, t[0] / tn};
        out.lift.push_back(sub(at(l), scale(2 * s * std::cos(sigma), nrm)));
    }
    out.lift.push_back(add(out.lift.front(), period));
    ImmersedCurve res = single(arc.side, out);
    const int expected = 1 + 4 * self_intersect(arc).count;
    if (max_turn(out) > 15 * kPi / 180 || self_intersect(res).count != expected)
        throw std::domain_error("figure_eight: offset exceeds the normal injectivity radius; use a smaller s");
    return res;
}

Component beta(int n) { return polyline(CurveKind::good_arc, n, [](double u) { return Vec2{kPi * u, 0}; }); }

Component beta_bl(double eps, int n) {
    const int m = std::max(1, static_cast<int>(std::ceil(n * eps / kPi)));
    return polyline(CurveKind::open_arc, m, [=](double u) { return Vec2{eps * u, 0}; });
}
Component beta_br(double eps, int n) {
    Component c = beta_bl(eps, n);
    for (Vec2& p : c.lift) p = {p[0] + kPi, p[1]};
    return c;
}
Component beta_tr(double eps, int n) {
    Component c = beta_bl(eps, n);
    for (Vec2& p : c.lift) p = {p[0] + kPi, p[1] + kPi};
    return c;
}
Component beta_tl(double eps, int n) {
    // W1 W2 applied to beta_bl, translated back by the lattice
    Component c = beta_bl(eps, n);
    for (Vec2& p : c.lift) p = {p[0], p[1] + kPi};
    return c;
}
Component slope_one_arc(int n) { return polyline(CurveKind::good_arc, n, [](double u) { return Vec2{kPi * u, kPi * u}; }); }
Component slope_two_arc(int n) {
    return polyline(CurveKind::good_arc, 2 * n, [](double u) { return Vec2{kPi * u, kTwoPi * u}; });
}
Component vertical_circle(int n) {
    return polyline(CurveKind::circle, 2 * n, [](double u) { return Vec2{kPi / 2, kTwoPi * u}; });
}

ImmersedCurve map_curve(const ImmersedCurve& c, const std::function<Vec2(const Vec2&)>& f) {
    ImmersedCurve out = c;
    for (Component& comp : out.components)
        for (Vec2& p : comp.lift) p = f(p);
    return out;
}

ImmersedCurve apply_w1(const ImmersedCurve& c) {
    return map_curve(c, [](const Vec2& p) { return Vec2{p[0] + kPi, p[1] + kPi}; });
}
ImmersedCurve apply_w2(const ImmersedCurve& c) {
    return map_curve(c, [](const Vec2& p) { return Vec2{p[0] + kPi, p[1]}; });
}
ImmersedCurve apply_theta(const ImmersedCurve& c) {
    return map_curve(c, [](const Vec2& p) { return Vec2{p[0], -p[1]}; });
}
ImmersedCurve apply_psi(const ImmersedCurve& c) {
    ImmersedCurve out = c;
    out.side = c.side == Side::P0 ? Side::P1 : Side::P0;
    return out;
}

// ------------------------------------------------------------- R3 distances

namespace {

using P3 = std::array<double, 3>;

double dist3_seg(const P3& p, const P3& a, const P3& b) {
    P3 d{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    P3 w{p[0] - a[0], p[1] - a[1], p[2] - a[2]};
    const double l2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    double t = l2 > 0 ? (w[0] * d[0] + w[1] * d[1] + w[2] * d[2]) / l2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    const P3 q{a[0] + t * d[0] - p[0], a[1] + t * d[1] - p[1], a[2] + t * d[2] - p[2]};
    return std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
}

struct Polyline3 {
    std::vector<std::pair<P3, P3>> segs;
    double cell = 0;
    int n = 1;
    std::unordered_map<long, std::vector<int>> grid;  // sparse: most cells are empty

    explicit Polyline3(const ImmersedCurve& c) {
        double longest = 0;
        for (const Component& comp : c.components)
            for (size_t i = 0; i + 1 < comp.lift.size(); ++i) {
                const P3 a = r3_of(comp.lift[i][0], comp.lift[i][1]);
                const P3 b = r3_of(comp.lift[i + 1][0], comp.lift[i + 1][1]);
                segs.push_back({a, b});
                longest = std::max(longest, std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2])));
            }
        n = std::clamp(static_cast<int>(2.0 / std::max(longest, 1e-3)), 1, 200);
        cell = 2.0 / n;
        for (size_t k = 0; k < segs.size(); ++k) {
            const auto& [a, b] = segs[k];
            int lo[3], hi[3];
            for (int d = 0; d < 3; ++d) {
                lo[d] = index(std::min(a[d], b[d]));
                hi[d] = index(std::max(a[d], b[d]));
            }
            for (int x = lo[0]; x <= hi[0]; ++x)
                for (int y = lo[1]; y <= hi[1]; ++y)
                    for (int z = lo[2]; z <= hi[2]; ++z) grid[key(x, y, z)].push_back(static_cast<int>(k));
        }
    }
    long key(int x, int y, int z) const { return (static_cast<long>(x) * n + y) * n + z; }
    int index(double v) const { return std::clamp(static_cast<int>(std::floor((v + 1) / cell)), 0, n - 1); }

    double distance(const P3& p) const {
        double best = std::numeric_limits<double>::infinity();
        const int cx = index(p[0]), cy = index(p[1]), cz = index(p[2]);
        for (int x = std::max(0, cx - 1); x <= std::min(n - 1, cx + 1); ++x)
            for (int y = std::max(0, cy - 1); y <= std::min(n - 1, cy + 1); ++y)
                for (int z = std::max(0, cz - 1); z <= std::min(n - 1, cz + 1); ++z) {
                    const auto it = grid.find(key(x, y, z));
                    if (it == grid.end()) continue;
                    for (int k : it->second) best = std::min(best, dist3_seg(p, segs[k].first, segs[k].second));
                }
        // anything within one cell has been seen; otherwise scan everything
        if (best > cell)
            for (const auto& [a, b] : segs) best = std::min(best, dist3_seg(p, a, b));
        return best;
    }
};

double directed(const ImmersedCurve& a, const Polyline3& b) {
    double m = 0;
    for (const Component& comp : a.components)
        for (const Vec2& p : comp.lift) m = std::max(m, b.distance(r3_of(p[0], p[1])));
    return m;
}

}  // namespace

double hausdorff_r3(const ImmersedCurve& a, const ImmersedCurve& b) {
    const Polyline3 pa(a), pb(b);
    return std::max(directed(a, pb), directed(b, pa));
}

double distance_r3(const ImmersedCurve& c, const R3& p) { return Polyline3(c).distance(p); }

// --------------------------------------------------------------------- json

std::string to_json(const ImmersedCurve& c) {
    nlohmann::json j;
    j["side"] = to_string(c.side);
    j["components"] = nlohmann::json::array();
    for (const Component& comp : c.components) {
        nlohmann::json lift = nlohmann::json::array();
        for (const Vec2& p : comp.lift) lift.push_back({p[0], p[1]});
        j["components"].push_back({{"kind", to_string(comp.kind)}, {"lift", lift}});
    }
    return j.dump();
}

ImmersedCurve curve_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ImmersedCurve c;
    c.side = parse_side(j.at("side").get<std::string>());
    for (const auto& comp : j.at("components")) {
        Component k;
        k.kind = parse_curve_kind(comp.at("kind").get<std::string>());
        for (const auto& p : comp.at("lift")) k.lift.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (k.lift.size() < 2) throw std::invalid_argument("curve json: component needs at least two points");
        c.components.push_back(std::move(k));
    }
    return c;
}

}  // namespace pcase
