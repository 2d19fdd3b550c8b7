// greenlem: command-line driver for Green functions, balanced-measure
// sampling, energies, identity checks and rendering.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greenlem/greenlem.hpp"

namespace {

using namespace greenlem;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

struct MapSource {
    std::string file;
    std::string poly;

    void attach(CLI::App* app) {
        app->add_option("--map", file, "map JSON file");
        app->add_option("--poly", poly, "polynomial shorthand c0,c1,...,cd (ascending)");
    }

    RationalMap load() const {
        if (!file.empty() && !poly.empty()) throw UsageError("give either --map or --poly, not both");
        if (!poly.empty()) return parse_poly_shorthand(poly);
        if (file.empty()) throw UsageError("a map is required (--map <file> or --poly c0,c1,...)");
        std::ifstream in(file);
        if (!in) throw UsageError("cannot open map file '" + file + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError("map file '" + file + "': " + e.what());
        }
        try {
            return map_from_json(j);
        } catch (const json::exception& e) {
            throw ParseError("map file '" + file + "': " + e.what());
        }
    }
};

struct SampleArgs {
    std::string method = "walk";
    int depth = 12;
    std::size_t count = 4096;
    std::size_t burn_in = kDefaultBurnIn;
    std::string base;

    void attach(CLI::App* app) {
        app->add_option("--method", method, "tree or walk")->check(CLI::IsMember({"tree", "walk"}));
        app->add_option("--depth", depth, "preimage tree depth");
        app->add_option("--count", count, "walk length after burn-in");
        app->add_option("--burn-in", burn_in, "discarded initial walk steps");
        app->add_option("--base", base, "base point re,im (default: first non-exceptional of a fixed list)");
    }

    SamplingPlan plan(std::uint64_t seed) const {
        SamplingPlan p;
        p.method = method == "tree" ? SampleMethod::Tree : SampleMethod::Walk;
        p.depth = depth;
        p.count = count;
        p.burn_in = burn_in;
        p.seed = seed;
        if (!base.empty()) p.base = parse_point(base);
        return p;
    }
};

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + buf;
}

/// Adds seed, parameters and their digest to a record.
json stamp(json record, std::uint64_t seed, const json& params) {
    record["seed"] = seed;
    record["params"] = params;
    record["params_digest"] = fnv1a(params.dump());
    return record;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

Viewport parse_viewport(const std::string& box, const std::string& size) {
    Viewport vp;
    char tail = 0;
    if (std::sscanf(box.c_str(), "%lf,%lf,%lf,%lf%c", &vp.x_min, &vp.x_max, &vp.y_min, &vp.y_max, &tail) != 4)
        throw UsageError("--viewport: expected x0,x1,y0,y1");
    if (std::sscanf(size.c_str(), "%dx%d%c", &vp.width, &vp.height, &tail) != 2)
        throw UsageError("--size: expected WxH");
    vp.validate();
    return vp;
}

DiscreteMeasure load_measure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open measure file '" + path + "'");
    try {
        json j;
        in >> j;
        return measure_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError("measure file '" + path + "': " + e.what());
    }
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << bytes;
}

int run(int argc, char** argv) {
    CLI::App app{"Green functions, balanced measures and potential-theory checks for rational maps"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "random seed")->capture_default_str();

    // resultant
    MapSource res_map;
    auto* res = app.add_subcommand("resultant", "homogeneous resultant of the canonical lift");
    res_map.attach(res);

    // green
    MapSource green_map;
    std::string green_at = "inf";
    double green_tol = kDefaultGreenTol;
    auto* gr = app.add_subcommand("green", "dynamical Green function G(p)");
    green_map.attach(gr);
    gr->add_option("--at", green_at, "re,im or inf")->required();
    gr->add_option("--tol", green_tol, "truncation tolerance");

    // sample
    MapSource sample_map;
    SampleArgs sample_args;
    std::string sample_out, sample_csv;
    auto* sm = app.add_subcommand("sample", "approximate the balanced measure by backward iteration");
    sample_map.attach(sm);
    sample_args.attach(sm);
    sm->add_option("--out", sample_out, "measure JSON output (default: stdout)");
    sm->add_option("--csv", sample_csv, "also write re,im,weight CSV");

    // energy
    std::string energy_in;
    auto* en = app.add_subcommand("energy", "logarithmic energy of a measure file");
    en->add_option("--in", energy_in, "measure JSON")->required();

    // verify
    MapSource verify_map;
    std::string verify_which = "all";
    VerifyOptions vopt;
    auto* ve = app.add_subcommand("verify", "check identities; exit 0 iff all pass");
    verify_map.attach(ve);
    std::vector<std::string> which_names = check_names();
    which_names.push_back("all");
    ve->add_option("check", verify_which, "all or one check name")->check(CLI::IsMember(which_names));
    ve->add_option("--count", vopt.walk.count, "walk length for sampled checks");
    ve->add_option("--burn-in", vopt.walk.burn_in, "walk burn-in");
    ve->add_option("--depth", vopt.tree_depth, "tree depth for the decomposition check");

    // render
    MapSource render_map;
    SampleArgs render_sample;
    std::string render_kind, render_box = "-2,2,-2,2", render_size = "512x512", render_out, render_in;
    double band_eps = 0.02, interior_tol = 1e-6;
    auto* rd = app.add_subcommand("render", "write a PPM image plus a JSON sidecar");
    rd->add_option("kind", render_kind, "potential, lemniscate or measure")
        ->required()
        ->check(CLI::IsMember({"potential", "lemniscate", "measure"}));
    render_map.attach(rd);
    render_sample.attach(rd);
    rd->add_option("--viewport", render_box, "x0,x1,y0,y1");
    rd->add_option("--size", render_size, "WxH");
    rd->add_option("--out", render_out, "output .ppm")->required();
    rd->add_option("--in", render_in, "measure JSON (render measure)");
    rd->add_option("--band-eps", band_eps, "lemniscate band half-width in log units");
    rd->add_option("--interior-tol", interior_tol, "G <= tol is drawn black");

    // discriminate
    MapSource dis_map;
    DiscriminatorThresholds thresholds;
    SampleArgs dis_sample;
    auto* di = app.add_subcommand("discriminate", "lemniscate test for polynomial-like balanced measure");
    dis_map.attach(di);
    dis_sample.attach(di);
    di->add_option("--low", thresholds.low, "deviation below which the map is polynomial-consistent");
    di->add_option("--high", thresholds.high, "deviation above which the map is non-polynomial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*res) {
        const auto map = res_map.load();
        const cplx r = resultant(canonical_lift(map));
        emit(stamp({{"abs_res", std::abs(r)}, {"res", complex_to_json(r)}, {"map", map_digest(map)}}, seed,
                   {{"command", "resultant"}, {"map", map_to_json(map)}}));
        return 0;
    }
    if (*gr) {
        const auto map = green_map.load();
        const auto g = green(canonical_lift(map), parse_point(green_at), green_tol);
        emit(stamp({{"value", g.value}, {"err_bound", g.err_bound}, {"steps", g.steps}, {"converged", g.converged}},
                   seed, {{"command", "green"}, {"map", map_to_json(map)}, {"at", green_at}, {"tol", green_tol}}));
        return 0;
    }
    if (*sm) {
        const auto map = sample_map.load();
        const auto mu = sample(map, sample_args.plan(seed));
        const json mj = measure_to_json(mu);
        if (!sample_csv.empty()) {
            std::ostringstream os;
            write_measure_csv(os, mu);
            write_file(sample_csv, os.str());
        }
        if (sample_out.empty()) {
            emit(mj);
        } else {
            write_file(sample_out, mj.dump() + "\n");
            emit(stamp({{"atoms", mu.size()}, {"out", sample_out}}, seed,
                       {{"command", "sample"}, {"map", map_to_json(map)}, {"provenance", mj["provenance"]}}));
        }
        return 0;
    }
    if (*en) {
        const auto mu = load_measure(energy_in);
        const auto e = energy(mu);
        emit(stamp({{"value", e.value}, {"pairs_used", e.pairs_used}, {"pairs_skipped", e.pairs_skipped}}, mu.seed,
                   {{"command", "energy"}, {"in", energy_in}, {"atoms", mu.size()}}));
        return 0;
    }
    if (*ve) {
        const auto map = verify_map.load();
        vopt.seed = seed;
        const json params = {{"command", "verify"},
                             {"check", verify_which},
                             {"map", map_to_json(map)},
                             {"count", vopt.walk.count},
                             {"burn_in", vopt.walk.burn_in},
                             {"depth", vopt.tree_depth}};
        const auto reports = run_checks(map, verify_which, vopt);
        json out = json::array();
        bool ok = true;
        for (const auto& r : reports) {
            out.push_back(stamp(report_to_json(r), seed, params));
            ok = ok && r.pass;
        }
        emit(out);
        return ok ? 0 : kExitVerifyFailed;
    }
    if (*rd) {
        const Viewport vp = parse_viewport(render_box, render_size);
        json meta = {{"viewport", {vp.x_min, vp.x_max, vp.y_min, vp.y_max}},
                     {"size", {vp.width, vp.height}},
                     {"kind", render_kind},
                     {"seed", seed}};
        Image img;
        if (render_kind == "potential") {
            const auto map = render_map.load();
            auto r = render_potential(map, vp, interior_tol);
            meta["map"] = map_to_json(map);
            meta["interior_tol"] = interior_tol;
            meta["black_fraction"] = r.black_fraction;
            img = std::move(r.image);
        } else if (render_kind == "lemniscate") {
            const auto map = render_map.load();
            auto r = render_lemniscate(map, vp, band_eps);
            meta["map"] = map_to_json(map);
            meta["band_eps"] = band_eps;
            meta["level"] = r.level;
            meta["degenerate"] = r.degenerate;
            meta["marked_fraction"] = r.marked_fraction;
            img = std::move(r.image);
        } else {
            DiscreteMeasure mu;
            if (!render_in.empty()) {
                mu = load_measure(render_in);
                meta["in"] = render_in;
            } else {
                const auto map = render_map.load();
                mu = sample(map, render_sample.plan(seed));
                meta["map"] = map_to_json(map);
            }
            auto r = render_measure(mu, vp);
            meta["provenance"] = measure_to_json(mu)["provenance"];
            meta["in_view_mass"] = r.in_view_mass;
            meta["out_of_view_mass"] = r.out_of_view_mass;
            meta["atoms_out_of_view"] = r.atoms_out_of_view;
            img = std::move(r.image);
        }
        write_file(render_out, to_ppm(img));
        meta["params_digest"] = fnv1a(meta.dump());
        write_file(render_out + ".json", meta.dump(2) + "\n");
        emit(meta);
        return 0;
    }
    if (*di) {
        const auto map = dis_map.load();
        const auto d = discriminate_polynomial(map, thresholds, dis_sample.plan(seed));
        emit(stamp({{"classification", to_string(d.classification)},
                    {"deviation", d.stat.deviation},
                    {"level", d.stat.level},
                    {"n_samples", d.stat.n_samples},
                    {"syntactic_polynomial", d.syntactic_polynomial}},
                   seed,
                   {{"command", "discriminate"},
                    {"map", map_to_json(map)},
                    {"low", thresholds.low},
                    {"high", thresholds.high}}));
        return 0;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const greenlem::Error& e) {
        std::cerr << "greenlem: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "greenlem: " << e.what() << '\n';
        return kExitUsage;
    }
}
