#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace pcase::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string tag(double s) { return fmt("%g", s); }

// ------------------------------------------------------------------ svg

constexpr double kScale = 120;  // pixels per radian
constexpr double kMargin = 30;

// Representative of (x, y) in [0,pi] x [0,2pi).
Vec2 reduce(Vec2 p) {
    p[0] -= 2 * kPi * std::floor(p[0] / (2 * kPi));
    if (p[0] > kPi) p = {2 * kPi - p[0], -p[1]};
    p[1] -= 2 * kPi * std::floor(p[1] / (2 * kPi));
    return p;
}

std::string px(const Vec2& p) {
    // theta grows upwards
    return fmt("%.2f", kMargin + kScale * p[0]) + "," + fmt("%.2f", kMargin + kScale * (2 * kPi - p[1]));
}

void polyline_paths(std::ostringstream& os, const std::vector<Vec2>& pts, const std::string& style) {
    std::vector<Vec2> run;
    auto flush = [&] {
        if (run.size() >= 2) {
            os << "<polyline fill=\"none\" " << style << " points=\"";
            for (std::size_t i = 0; i < run.size(); ++i) os << (i ? " " : "") << px(run[i]);
            os << "\"/>\n";
        }
        run.clear();
    };
    for (const Vec2& q : pts) {
        const Vec2 r = reduce(q);
        if (!run.empty() && std::hypot(r[0] - run.back()[0], r[1] - run.back()[1]) > 0.5) flush();
        run.push_back(r);
    }
    flush();
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

// ------------------------------------------------------------ suites

std::vector<ChartPoint> variety_points(Variant v, double s, int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(0, 2 * kPi);
    std::vector<ChartPoint> out;
    while (static_cast<int>(out.size()) < count) {
        const double g = ang(rng), t = ang(rng);
        if (std::hypot(std::sin(g), std::sin(t)) < 6 * std::abs(s) + 0.05) continue;
        const FiberSolutions fs = solve_fiber(v, s, g, t);
        if (fs.status != FiberStatus::two_sheets) continue;
        for (const Vec2& x : fs.solutions) out.push_back({s, g, t, x[0], x[1]});
    }
    return out;
}

double residual(Variant v, const Rep& r, double fault) {
    const Pair g = defining(v, r);
    return std::max(std::abs(g[0]), std::abs(g[1])) + fault;
}

SuiteResult suite(const std::string& name, bool ok, const std::string& detail) { return {name, ok, detail}; }

// ------------------------------------------------------------ options

struct Common {
    std::string variant = "earring";
    double s = 0.05;
    int grid = 64;
    unsigned long seed = 0;
    std::string out = "out";
    bool json = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--variant", c.variant, "earring or bypass")->check(CLI::IsMember({"earring", "bypass"}));
    sub->add_option("--s", c.s, "perturbation parameter");
    sub->add_option("--grid", c.grid, "grid size for fiber classification")->check(CLI::Range(4, 4096));
    sub->add_option("--seed", c.seed, "RNG seed for randomized sweeps");
    sub->add_option("--out", c.out, "output directory (PILLOWCASE_OUT overrides)");
    sub->add_flag("--json", c.json, "machine-readable output on stdout");
}

fs::path out_dir(const Common& c) {
    const char* env = std::getenv("PILLOWCASE_OUT");
    fs::path p = (env && *env) ? fs::path(env) : fs::path(c.out);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
}

// ------------------------------------------------------------ commands

int cmd_trace(const Common& c, std::ostream& out) {
    const Variant v = parse_variant(c.variant);
    const fs::path dir = out_dir(c);
    const std::string stem = c.variant + "_s" + tag(c.s);

    std::vector<FiberSolutions> cells;
    const TopologyReport rep = verify_topology(v, c.s, c.grid, &cells);

    std::ostringstream fib;
    fib << "# fiber classification over a " << c.grid << "x" << c.grid << " grid of (gamma, theta)\n";
    fib << "# columns: gamma,theta,status,count,nu1,tau1,nu2,tau2 (empty when absent)\n";
    fib << "gamma,theta,status,count,nu1,tau1,nu2,tau2\n";
    for (const FiberSolutions& f : cells) {
        fib << fmt("%.9f", f.gamma) << ',' << fmt("%.9f", f.theta) << ',' << to_string(f.status) << ',' << f.solutions.size();
        for (std::size_t k = 0; k < 2; ++k) {
            if (k < f.solutions.size() && f.status == FiberStatus::two_sheets)
                fib << ',' << fmt("%.12f", f.solutions[k][0]) << ',' << fmt("%.12f", f.solutions[k][1]);
            else
                fib << ",,";
        }
        fib << '\n';
    }
    write_file(dir / ("fibers_" + stem + ".csv"), fib.str());

    std::vector<FoldCircle> folds;
    if (c.s != 0) folds = fold_locus(v, c.s);
    std::ostringstream fold;
    fold << "# fold circle samples; corner = (eps_gamma, eps_theta); w = (sin gamma, sin theta)\n";
    fold << "eps_gamma,eps_theta,k,gamma,theta,nu,tau,w_x,w_y\n";
    for (const FoldCircle& fc : folds)
        for (std::size_t k = 0; k < fc.samples.size(); ++k) {
            const ChartPoint& p = fc.samples[k];
            fold << fc.eps_gamma << ',' << fc.eps_theta << ',' << k << ',' << fmt("%.12f", p.gamma) << ',' << fmt("%.12f", p.theta) << ','
                 << fmt("%.12f", p.nu) << ',' << fmt("%.12f", p.tau) << ',' << fmt("%.12f", fc.image[k][0]) << ','
                 << fmt("%.12f", fc.image[k][1]) << '\n';
        }
    write_file(dir / ("fold_" + stem + ".csv"), fold.str());

    json j{{"variant", c.variant},
           {"s", c.s},
           {"grid", rep.grid},
           {"two_sheets", rep.two_sheets},
           {"fold_region", rep.fold_region},
           {"empty", rep.empty},
           {"failed", rep.failed},
           {"inconsistent", rep.inconsistent},
           {"fold_circles", rep.fold_circles},
           {"windings", rep.windings},
           {"sheets", rep.sheets},
           {"euler_characteristic", rep.euler_characteristic},
           {"genus_upstairs", rep.genus_upstairs},
           {"genus_quotient", rep.genus_quotient},
           {"degenerate", rep.degenerate},
           {"consistent", rep.consistent},
           {"note", rep.note}};
    write_file(dir / "topology.json", j.dump(2) + "\n");

    if (c.json) {
        out << j.dump(2) << '\n';
    } else {
        out << "variant " << c.variant << ", s = " << tag(c.s) << ", grid " << c.grid << '\n';
        if (rep.degenerate)
            out << "degenerate case: " << rep.note << '\n';
        else
            out << "fold circles " << rep.fold_circles << ", euler characteristic " << rep.euler_characteristic << ", genus "
                << rep.genus_upstairs << " upstairs / " << rep.genus_quotient << " quotient\n";
        out << "consistent: " << (rep.consistent ? "yes" : "no") << " (" << rep.inconsistent << " inconsistent cells)\n";
        out << "wrote " << (dir / "topology.json").string() << '\n';
    }
    return rep.consistent ? ok : verification_failed;
}

int cmd_compose(const Common& c, const std::string& spec, std::ostream& out) {
    const Variant v = parse_variant(c.variant);
    const ImmersedCurve in = load_curve(spec);
    const bool forward = in.side == Side::P0;
    const ImmersedCurve res = forward ? compose(in, v, c.s) : pullback(in, v, c.s);
    const CurveInvariants inv = invariants(res);

    const fs::path dir = out_dir(c);
    const std::string name = fs::path(spec).stem().string();
    const std::string stem = "composed_" + name + "_" + c.variant + "_s" + tag(c.s);
    write_file(dir / (stem + ".json"), to_json(res) + "\n");
    Scene sc;
    sc.side = res.side;
    sc.folds = cached_fold_locus(v, c.s);
    sc.curves.push_back({"input (other side)", apply_psi(in)});
    sc.curves.push_back({"composed", res});
    write_file(dir / (stem + ".svg"), render_svg(sc));

    json j{{"input", spec},
           {"direction", forward ? "push-forward" : "pullback"},
           {"side", to_string(res.side)},
           {"components", inv.components},
           {"double_points", inv.double_points},
           {"curve", (dir / (stem + ".json")).string()},
           {"svg", (dir / (stem + ".svg")).string()}};
    if (c.json)
        out << j.dump(2) << '\n';
    else
        out << (forward ? "composed " : "pulled back ") << spec << ": " << inv.components << " component(s), " << inv.double_points
            << " double point(s)\nwrote " << (dir / (stem + ".svg")).string() << '\n';
    return ok;
}

int cmd_torus(const Common& c, std::ostream& out) {
    const Variant v = parse_variant(c.variant);
    const TorusKnotResult r = torus_knot(v, c.s);
    const fs::path dir = out_dir(c);
    const std::string stem = c.variant + "_s" + tag(c.s);

    Scene p1;
    p1.side = Side::P1;
    p1.folds = cached_fold_locus(v, c.s);
    p1.curves = {{"(u_s)_*(A1)", r.composed}, {"A2 + D(D~(B_ver))", r.w_side}};
    write_file(dir / ("torus_forward_" + stem + ".svg"), render_svg(p1));
    Scene p0;
    p0.side = Side::P0;
    p0.folds = p1.folds;
    p0.curves = {{"A1", r.a1}, {"pullback", r.pulled}};
    write_file(dir / ("torus_backward_" + stem + ".svg"), render_svg(p0));

    const bool pass = r.forward == 9 && r.backward == 9;
    json j{{"variant", c.variant}, {"s", c.s}, {"forward", r.forward}, {"backward", r.backward}, {"expected", 9}, {"pass", pass}};
    write_file(dir / ("torus_" + stem + ".json"), j.dump(2) + "\n");
    if (c.json)
        out << j.dump(2) << '\n';
    else
        out << "torus-knot scene, " << c.variant << ", s = " << tag(c.s) << ": forward " << r.forward << ", backward " << r.backward
            << (pass ? " (ok)" : " (expected 9)") << '\n';
    return pass ? ok : verification_failed;
}

int cmd_intersect(const Common& c, const std::string& a, const std::string& b, std::ostream& out) {
    const IntersectionResult r = intersect(load_curve(a), load_curve(b));
    json pts = json::array();
    for (const Crossing& x : r.points) pts.push_back({{"gamma", x.point[0]}, {"theta", x.point[1]}, {"angle", x.angle}, {"sign", x.sign}});
    if (c.json)
        out << json{{"count", r.count}, {"points", pts}}.dump(2) << '\n';
    else
        out << r.count << " transverse intersection point(s)\n";
    return ok;
}

int cmd_verify(const Common& c, double fault, std::ostream& out) {
    VerifyOptions o;
    o.variant = parse_variant(c.variant);
    o.s = c.s;
    o.seed = c.seed;
    o.fault = fault;
    const std::vector<SuiteResult> res = verify_all(o);
    bool all = true;
    for (const SuiteResult& r : res) all = all && r.passed;
    if (c.json) {
        json arr = json::array();
        for (const SuiteResult& r : res) arr.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        out << json{{"variant", c.variant}, {"s", c.s}, {"seed", c.seed}, {"passed", all}, {"suites", arr}}.dump(2) << '\n';
    } else {
        for (const SuiteResult& r : res) {
            char line[256];
            std::snprintf(line, sizeof line, "%-22s %-4s  %s\n", r.name.c_str(), r.passed ? "ok" : "FAIL", r.detail.c_str());
            out << line;
        }
        out << (all ? "all suites passed" : "verification failed") << '\n';
    }
    return all ? ok : verification_failed;
}

}  // namespace

std::string render_svg(const Scene& scene) {
    const double w = 2 * kMargin + kScale * kPi, h = 2 * kMargin + kScale * 2 * kPi;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt("%.0f", w) << "\" height=\"" << fmt("%.0f", h)
       << "\">\n";
    os << "<rect x=\"" << fmt("%.2f", kMargin) << "\" y=\"" << fmt("%.2f", kMargin) << "\" width=\"" << fmt("%.2f", kScale * kPi)
       << "\" height=\"" << fmt("%.2f", kScale * 2 * kPi) << "\" fill=\"white\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt("%.2f", kMargin) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << to_string(scene.side)
       << "</text>\n";
    // fold images: samples reduced to the domain, plus their iota copies
    for (const FoldCircle& fc : scene.folds) {
        std::vector<Vec2> a, b;
        for (const ChartPoint& p : fc.samples) {
            a.push_back({p.gamma, p.theta});
            b.push_back({-p.gamma, -p.theta});
        }
        if (!a.empty()) {
            a.push_back(a.front());
            b.push_back(b.front());
        }
        polyline_paths(os, a, "stroke=\"#888888\" stroke-width=\"1\"");
        polyline_paths(os, b, "stroke=\"#888888\" stroke-width=\"1\"");
    }
    for (double x : {0.0, kPi})
        for (double y : {0.0, kPi, 2 * kPi}) {
            const std::string p = px({x, y});
            const auto comma = p.find(',');
            os << "<circle cx=\"" << p.substr(0, comma) << "\" cy=\"" << p.substr(comma + 1) << "\" r=\"3\" fill=\"black\"/>\n";
        }
    for (std::size_t k = 0; k < scene.curves.size(); ++k) {
        const std::string style = std::string("stroke=\"") + kColors[k % 6] + "\" stroke-width=\"1.5\"";
        os << "<g id=\"curve" << k << "\"><title>" << scene.curves[k].first << "</title>\n";
        for (const Component& c : scene.curves[k].second.components) polyline_paths(os, c.lift, style);
        os << "</g>\n";
        os << "<text x=\"" << fmt("%.2f", kMargin + 40 + 150 * static_cast<double>(k)) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
           << kColors[k % 6] << "\">" << scene.curves[k].first << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

ImmersedCurve load_curve(const std::string& spec) {
    if (spec == "beta") return single(Side::P0, beta());
    if (spec == "beta_bl") return single(Side::P0, beta_bl());
    if (spec == "beta_br") return single(Side::P0, beta_br());
    if (spec == "beta_tl") return single(Side::P0, beta_tl());
    if (spec == "beta_tr") return single(Side::P0, beta_tr());
    if (spec == "slope_one") return single(Side::P0, slope_one_arc());
    if (spec == "slope_two") return single(Side::P0, slope_two_arc());
    if (spec == "bver") return single(Side::P0, vertical_circle());
    if (spec == "bver_twisted") return twisted_double(single(Side::P0, vertical_circle()));
    std::ifstream f(spec);
    if (!f) throw CLI::ValidationError("curve", "not a built-in curve name or readable file: " + spec);
    std::stringstream ss;
    ss << f.rdbuf();
    return curve_from_json(ss.str());
}

TorusKnotResult torus_knot(Variant v, double s) {
    TorusKnotResult r;
    r.a1 = single(Side::P0, slope_one_arc());
    ImmersedCurve w = double_curve(twisted_double(single(Side::P0, vertical_circle())));
    w.components.insert(w.components.begin(), slope_two_arc());
    r.w_side = apply_psi(w);
    r.composed = compose(r.a1, v, s);
    r.forward = intersect(r.composed, r.w_side).count;
    r.pulled = pullback(r.w_side, v, s);
    r.backward = intersect(r.a1, r.pulled).count;
    return r;
}

std::vector<SuiteResult> verify_all(const VerifyOptions& opt) {
    std::vector<SuiteResult> out;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> ang(0, 2 * kPi), nu(-0.5, 0.5), sd(-0.2, 0.2);
    const Variant v = opt.variant;
    const double s = opt.s;

    {
        double m = 0;
        for (int k = 0; k < 1000; ++k) m = std::max(m, check_identities({sd(rng), ang(rng), ang(rng), nu(rng), ang(rng)}).max() + opt.fault);
        out.push_back(suite("identities", m < 1e-11, "max residual " + fmt("%.2e", m)));
    }
    if (v == Variant::earring) {
        double on = 0, off = 1e9;
        for (const ChartPoint& p : variety_points(v, s, 200, rng)) on = std::max(on, (w2_value(v, p) + ONE).norm());
        int made = 0;
        while (made < 200) {
            const ChartPoint p{s, ang(rng), ang(rng), nu(rng), ang(rng)};
            if (std::abs(G(p)[1]) <= 0.1) continue;
            off = std::min(off, (w2_value(v, p) + ONE).norm());
            ++made;
        }
        out.push_back(suite("w2", on < 1e-7 && off > 1e-3, "on-variety " + fmt("%.2e", on) + ", off-variety min " + fmt("%.2e", off)));
    }
    {
        double m = 0, fix = 0;
        for (double ss : {0.01, 0.05, 0.1})
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    const Rep r = explicit_point(ss, e1, e2, v);
                    m = std::max(m, residual(v, r, opt.fault));
                    const auto a = characters(r), b = characters(u_involution(r));
                    for (int i = 0; i < 6; ++i) fix = std::max(fix, std::abs(a[i] - b[i]));
                }
        out.push_back(suite("explicit points", m < 1e-10 && fix < 1e-8, "residual " + fmt("%.2e", m) + ", U-fixed " + fmt("%.2e", fix)));
    }
    {
        double m = 0;
        for (int k = 0; k < 360; ++k) m = std::max(m, residual(v, k_circle(v, s, 2 * kPi * k / 360), opt.fault));
        out.push_back(suite("closed-form circle", m < 1e-9, "max residual " + fmt("%.2e", m)));
    }
    {
        double m = 0, g = 0;
        for (const ChartPoint& p : variety_points(v, s, 100, rng)) {
            const Rep r = embed_L(p, v);
            m = std::max(m, verify_factorization(r));
            g = std::max(g, residual(v, r, opt.fault));
        }
        out.push_back(suite("factorization", m < 1e-7 && g < 1e-9, "max residual " + fmt("%.2e", m)));
    }
    {
        const std::vector<FoldCircle>& folds = cached_fold_locus(v, s);
        bool good = folds.size() == 4;
        double dev = 0;
        for (const FoldCircle& fc : folds) {
            good = good && std::abs(fc.winding()) == 1;
            dev = std::max(dev, fc.max_radius_deviation() / (2 * std::abs(s)));
        }
        good = good && dev < 0.25;
        out.push_back(suite("fold structure", good, std::to_string(folds.size()) + " circles, radius deviation " + fmt("%.1f", 100 * dev) + "%"));
    }
    for (const auto& [name, c] : std::vector<std::pair<std::string, Component>>{{"beta", beta()}, {"slope_one", slope_one_arc()}, {"bver", vertical_circle()}}) {
        const TheoremBReport r = verify_theorem_B(single(Side::P0, c), v, s);
        out.push_back(suite("prediction " + name, r.ok, r.ok ? "invariants match, hausdorff " + fmt("%.2e", r.hausdorff) : r.diff));
    }
    {
        const TorusKnotResult r = torus_knot(v, s);
        out.push_back(suite("torus knot", r.forward == 9 && r.backward == 9,
                            "forward " + std::to_string(r.forward) + ", backward " + std::to_string(r.backward)));
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perturbed traceless character varieties, their pillowcase images and curve composition"};
    app.require_subcommand(1);
    Common c;
    std::string curve, curve_b;
    double fault = 0;

    CLI::App* trace = app.add_subcommand("trace", "classify fibers, extract fold circles, report topology");
    add_common(trace, c);
    CLI::App* comp = app.add_subcommand("compose", "compose a curve with the correspondence (P1 input: transpose)");
    add_common(comp, c);
    comp->add_option("curve", curve, "built-in name or JSON curve file")->required();
    CLI::App* torus = app.add_subcommand("torus-knot", "both pairings of the torus-knot scene");
    add_common(torus, c);
    CLI::App* inter = app.add_subcommand("intersect", "count transverse intersections of two curves");
    add_common(inter, c);
    inter->add_option("a", curve, "first curve")->required();
    inter->add_option("b", curve_b, "second curve")->required();
    CLI::App* ver = app.add_subcommand("verify-all", "run every verification suite");
    add_common(ver, c);
    ver->add_option("--inject-fault", fault, "offset added to defining-equation residuals (mutation test)");

    std::vector<const char*> argv{"pillowcase"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return usage;
    }

    try {
        if (*trace) return cmd_trace(c, out);
        if (*comp) return cmd_compose(c, curve, out);
        if (*torus) return cmd_torus(c, out);
        if (*inter) return cmd_intersect(c, curve, curve_b, out);
        if (*ver) return cmd_verify(c, fault, out);
    } catch (const TangencyError& e) {
        err << "refused: " << e.what() << '\n';
        return numerical;
    } catch (const NonGeneric& e) {
        err << "non-generic position: " << e.what() << '\n';
        return numerical;
    } catch (const CompositionError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const std::domain_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
    return usage;
}

}  // namespace pcase::cli
