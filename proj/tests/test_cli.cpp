#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pcase;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run call(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("pcase_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("usage errors") {
    CHECK(call({}).code == cli::usage);
    CHECK(call({"frobnicate"}).code == cli::usage);
    CHECK(call({"compose"}).code == cli::usage);
    CHECK(call({"trace", "--variant", "lasso"}).code == cli::usage);
    CHECK(call({"trace", "--grid", "1"}).code == cli::usage);
    const Run r = call({"compose", "/nonexistent/curve.json"});
    CHECK(r.code == cli::usage);
    CHECK(r.err.find("usage error") != std::string::npos);
    CHECK(call({"--help"}).code == cli::ok);
}

TEST_CASE("compose writes curve and figure") {
    const fs::path dir = scratch("compose");
    const Run r = call({"compose", "beta", "--out", dir.string(), "--json"});
    REQUIRE(r.code == cli::ok);
    const json j = json::parse(r.out);
    CHECK(j["direction"] == "push-forward");
    CHECK(j["side"] == "P1");
    CHECK(j["components"] == 1);
    CHECK(j["double_points"] == 1);
    const fs::path curve = dir / "composed_beta_earring_s0.05.json";
    const fs::path svg = dir / "composed_beta_earring_s0.05.svg";
    REQUIRE(fs::exists(curve));
    REQUIRE(fs::exists(svg));
    const ImmersedCurve back = curve_from_json(slurp(curve));
    CHECK(back.side == Side::P1);
    CHECK(back.components.size() == 1);
    CHECK(slurp(svg).rfind("<?xml", 0) == 0);

    // figures are byte-stable across runs
    const std::string first = slurp(svg);
    REQUIRE(call({"compose", "beta", "--out", dir.string()}).code == cli::ok);
    CHECK(slurp(svg) == first);
    CHECK(slurp(curve) == to_json(back) + "\n");
}

TEST_CASE("compose of the vertical circle and round trip through a file") {
    const fs::path dir = scratch("bver");
    const Run r = call({"compose", "bver", "--variant", "bypass", "--out", dir.string(), "--json"});
    REQUIRE(r.code == cli::ok);
    CHECK(json::parse(r.out)["components"] == 2);

    // the written P1 curve fed back in is pulled back to P0
    const fs::path f = dir / "composed_bver_bypass_s0.05.json";
    const Run b = call({"compose", f.string(), "--variant", "bypass", "--out", dir.string(), "--json"});
    REQUIRE(b.code == cli::ok);
    const json jb = json::parse(b.out);
    CHECK(jb["direction"] == "pullback");
    CHECK(jb["side"] == "P0");
}

TEST_CASE("tangent input is refused") {
    const double s = 0.05;
    const Variant v = Variant::earring;
    double gmax = 0;
    for (const FoldCircle& fc : cached_fold_locus(v, s))
        if (fc.eps_gamma > 0 && fc.eps_theta > 0)
            for (const Vec2& w : fc.image) gmax = std::max(gmax, std::asin(w[0]));
    REQUIRE(gmax > s);
    Component touch = vertical_circle();
    for (Vec2& p : touch.lift) p[0] = gmax;
    const fs::path dir = scratch("tangent");
    const fs::path f = dir / "touch.json";
    std::ofstream(f) << to_json(single(Side::P0, touch));

    const Run r = call({"compose", f.string(), "--out", dir.string()});
    CHECK(r.code == cli::numerical);
    CHECK(r.err.find("refused") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "composed_touch_earring_s0.05.svg"));
}

TEST_CASE("trace reports topology") {
    const fs::path dir = scratch("trace");
    const Run r = call({"trace", "--grid", "32", "--out", dir.string(), "--json"});
    REQUIRE(r.code == cli::ok);
    const json j = json::parse(r.out);
    CHECK(j["genus_upstairs"] == 5);
    CHECK(j["genus_quotient"] == 3);
    CHECK(j["degenerate"] == false);
    CHECK(fs::exists(dir / "fibers_earring_s0.05.csv"));
    CHECK(fs::exists(dir / "fold_earring_s0.05.csv"));
    CHECK(json::parse(slurp(dir / "topology.json")) == j);

    const Run z = call({"trace", "--s", "0", "--grid", "16", "--out", dir.string(), "--json"});
    REQUIRE(z.code == cli::ok);
    CHECK(json::parse(z.out)["degenerate"] == true);
}

TEST_CASE("output directory from the environment") {
    const fs::path dir = scratch("env");
    const fs::path ignored = scratch("env_ignored");
    ::setenv("PILLOWCASE_OUT", dir.string().c_str(), 1);
    const Run r = call({"compose", "slope_one", "--out", ignored.string()});
    ::unsetenv("PILLOWCASE_OUT");
    REQUIRE(r.code == cli::ok);
    CHECK(fs::exists(dir / "composed_slope_one_earring_s0.05.svg"));
    CHECK(fs::is_empty(ignored));
}

TEST_CASE("torus knot scene") {
    for (const char* v : {"earring", "bypass"}) {
        const fs::path dir = scratch(std::string("torus_") + v);
        const Run r = call({"torus-knot", "--variant", v, "--out", dir.string(), "--json"});
        REQUIRE(r.code == cli::ok);
        const json j = json::parse(r.out);
        CHECK(j["forward"] == 9);
        CHECK(j["backward"] == 9);
        CHECK(fs::exists(dir / (std::string("torus_forward_") + v + "_s0.05.svg")));
        CHECK(fs::exists(dir / (std::string("torus_backward_") + v + "_s0.05.svg")));
    }
}

TEST_CASE("intersect") {
    const Run r = call({"intersect", "slope_one", "slope_two", "--json"});
    REQUIRE(r.code == cli::ok);
    const json j = json::parse(r.out);
    CHECK(j["count"] == j["points"].size());
}

TEST_CASE("verify-all passes and detects injected faults") {
    const Run r = call({"verify-all", "--seed", "7", "--json"});
    CHECK(r.code == cli::ok);
    const json j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["suites"].size() >= 8);

    // same seed, same report
    CHECK(call({"verify-all", "--seed", "7", "--json"}).out == r.out);

    const Run f = call({"verify-all", "--seed", "7", "--inject-fault", "1e-6", "--json"});
    CHECK(f.code == cli::verification_failed);
    CHECK(json::parse(f.out)["passed"] == false);
}
