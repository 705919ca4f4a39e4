#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcadyn/report.hpp"

using namespace pcadyn;

namespace {

MapSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map_spec(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Audit post-critically algebraic endomorphisms of the projective plane"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    RunOptions opts;
    std::string json_path;
    app.add_option("--tol-residual", opts.tol_residual, "Residual tolerance")->capture_default_str();
    app.add_option("--tol-class", opts.tol_class, "Eigenvalue classification tolerance")->capture_default_str();
    app.add_option("--order", opts.order, "Truncation order of series")->capture_default_str()->check(CLI::Range(2, 256));
    app.add_option("--max-iter", opts.max_iter, "Orbit iteration budget")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--threads", opts.threads, "Worker threads")->envname("PCADYN_THREADS")->check(CLI::Range(1, 256));
    app.add_option("--json", json_path, "Write the JSON report to this path ('-' for stdout)");

    std::string file, poly, curve;
    std::vector<std::string> point;
    int iters = 40;

    auto* analyze = app.add_subcommand("analyze", "Full audit of a map description");
    analyze->add_option("file", file, "Map description")->required();
    auto* check = app.add_subcommand("check-pca", "Certify the post-critical curve");
    check->add_option("file", file, "Map description")->required();
    auto* fixed = app.add_subcommand("fixed-points", "Fixed points with eigenvalues");
    fixed->add_option("file", file, "Map description")->required();
    auto* puiseux = app.add_subcommand("puiseux", "Branches of a plane curve at the origin");
    puiseux->add_option("poly", poly, "Polynomial in x, y")->required();
    auto* lift = app.add_subcommand("lift", "Lift over the normalization of an invariant curve");
    lift->add_option("file", file, "Map description")->required();
    lift->add_option("--curve", curve, "Curve label")->required();
    auto* pot = app.add_subcommand("potential", "Escape-rate potential at a point");
    pot->add_option("file", file, "Map description")->required();
    pot->add_option("--point", point, "Coordinates a,b,c")->delimiter(',')->required();
    pot->add_option("--iters", iters, "Iterations")->capture_default_str()->check(CLI::Range(1, 2000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitError;
    }

    CLI::App* sub = app.get_subcommands().front();
    CommandOutput out = run_guarded(sub->get_name(), opts, [&]() -> CommandOutput {
        if (sub == analyze) return cmd_analyze(load_spec(file), opts);
        if (sub == check) return cmd_check_pca(load_spec(file), opts);
        if (sub == fixed) return cmd_fixed_points(load_spec(file), opts);
        if (sub == puiseux) return cmd_puiseux(poly, opts);
        if (sub == lift) return cmd_lift(load_spec(file), curve, opts);
        std::vector<BigRational> w;
        for (const auto& c : point) w.push_back(BigRational::parse(c));
        return cmd_potential(load_spec(file), w, iters, opts);
    });

    std::string dumped = out.json.dump(2) + "\n";
    if (json_path == "-") {
        std::cout << dumped;
    } else {
        if (out.exit_code == kExitError) {
            bool located = out.json["error"]["kind"] == "ParseError";
            std::cerr << (file.empty() ? "error: " : file + (located ? ":" : ": ")) << out.text;
        } else {
            std::cout << out.text;
        }
        if (!json_path.empty()) {
            std::ofstream js(json_path);
            if (!js) {
                std::cerr << "error: cannot write '" << json_path << "'\n";
                return kExitError;
            }
            js << dumped;
        }
    }
    return out.exit_code;
}
