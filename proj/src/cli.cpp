#include "hypermult/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hypermult/bounds.hpp"
#include "hypermult/collar_geometry.hpp"
#include "hypermult/errors.hpp"
#include "hypermult/io.hpp"
#include "hypermult/mode_analysis.hpp"
#include "hypermult/nets.hpp"
#include "hypermult/surface_model.hpp"
#include "hypermult/verify.hpp"

namespace hypermult::cli {

namespace {

using io::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("input", "cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to the named file, or to `fallback` when the path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
        } else {
            file_.open(path, std::ios::binary);
            if (!file_) throw SchemaError("output", "cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

void emit_json(const json& j, const std::string& path, std::ostream& out) {
    Sink sink(path, out);
    *sink << j.dump(2) << '\n';
}

struct DecomposeArgs {
    std::string input, output;
    double epsilon = 0.1;
    double trim = 1.0;
};

struct VerifyArgs {
    std::string suite = "all";
    std::string output, details_prefix;
    verify::Options opts;
};

struct BoundsArgs {
    std::string input, output;
    bounds::BoundInputs in;
    double lambda = 0.0;
    double K = 1.0, C_eps = 1.0, c2 = 1.0;
    bool want_thm2 = false;
};

struct SweepArgs {
    std::string kind = "bounds";
    std::string family = "two-piece";
    std::string output;
    std::vector<int> genera{1000, 10000, 100000, 1000000};
    std::vector<double> eps_grid{0.001, 0.004};
    std::vector<double> lambda_grid{0.001, 0.01, 0.05, 0.1};
    double delta = 0.25;
    double K = 1.0, C_eps = 1.0, c2 = 1.0;
    double tol = 1e-10;
    double perturb_ratio = 1.0;
};

struct NetArgs {
    std::string input, output, cloud_output;
    double epsilon = 1.0;
    double radius = 10.0;
    long n = 1000;
    std::uint64_t seed = 0;
    double r = 4.0;
    long seed_index = 0;
};

bounds::ConstantsProfile profile_from(double K, double C_eps, double c2, const CLI::App& cmd) {
    auto p = bounds::ConstantsProfile::reference_example();
    if (cmd.count("--K")) p.set("K", K);
    if (cmd.count("--C-eps")) p.set("C_eps", C_eps);
    if (cmd.count("--c2")) p.set("c2", c2);
    return p;
}

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
    const SurfaceDescriptor d = io::parse_descriptor_text(read_file(a.input));
    const DecompositionReport r = area_budget(d, a.epsilon, a.trim);
    json j = io::to_json(r);
    j["genus"] = d.genus;
    emit_json(j, a.output, out);
    return ok;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<std::string> suites;
    if (a.suite == "all") {
        suites = verify::suite_names();
    } else {
        suites = {a.suite};
    }
    json summary = {{"seed", a.opts.seed}, {"tol", a.opts.tol}, {"perturb_ratio", a.opts.perturb_ratio}};
    json rows = json::array();
    bool passed = true;
    std::string first_failure;
    for (const auto& name : suites) {
        std::optional<std::ofstream> details;
        if (!a.details_prefix.empty()) {
            const std::string path = a.details_prefix + "_" + name + ".csv";
            details.emplace(path, std::ios::binary);
            if (!*details) throw SchemaError("output", "cannot open details file '" + path + "'");
        }
        const auto r = verify::run_suite(name, a.opts, details ? &*details : nullptr);
        json metrics = json::object();
        for (const auto& [k, v] : r.metrics) metrics[k] = v;
        rows.push_back({{"suite", r.suite},
                        {"checks", r.checks},
                        {"failures", r.failures},
                        {"passed", r.passed()},
                        {"first_failure", r.first_failure},
                        {"metrics", metrics}});
        if (!r.passed() && passed) {
            passed = false;
            first_failure = r.suite + ": " + r.first_failure;
        }
    }
    summary["suites"] = rows;
    summary["passed"] = passed;
    emit_json(summary, a.output, out);
    if (!passed) {
        err << "verification failed: " << first_failure << '\n';
        return verification_failed;
    }
    return ok;
}

int cmd_bounds(BoundsArgs a, const CLI::App& cmd, std::ostream& out) {
    const auto p = profile_from(a.K, a.C_eps, a.c2, cmd);
    if (cmd.count("--lambda")) a.in.lambda = a.lambda;
    if (a.want_thm2 && !a.in.lambda) throw DomainError("lambda required");
    if (!a.input.empty()) {
        const SurfaceDescriptor d = io::parse_descriptor_text(read_file(a.input));
        a.in.genus = d.genus;
        a.in.n_short = count_short_geodesics(d, a.in.eps);
        a.in.i_thick = thick_component_count(d, a.in.eps);
    }
    const auto r = bounds::evaluate_bounds(a.in, p);
    if (a.want_thm2 && !r.thm2) throw DomainError(r.thm2_error);
    // A point where neither bound is defined is a parameter error.
    if (!r.thm1 && !r.thm2) throw DomainError(r.thm1_error + "; " + r.thm2_error);
    json j = io::to_json(r);
    j["constants"] = io::to_json(p);
    emit_json(j, a.output, out);
    return ok;
}

int cmd_sweep(const SweepArgs& a, const CLI::App& cmd, std::ostream& out) {
    Sink sink(a.output, out);
    if (a.kind == "modes") {
        auto config = modes::default_mass_sweep();
        config.tol = a.tol;
        config.perturb_ratio = a.perturb_ratio;
        io::write_mass_sweep_csv(*sink, modes::mass_concentration_sweep(config));
        return ok;
    }
    const auto p = profile_from(a.K, a.C_eps, a.c2, cmd);
    const bounds::Family family =
        a.family == "necklace" ? bounds::necklace_sweep_family() : bounds::two_piece_sweep_family();
    io::write_bound_sweep_csv(*sink, bounds::bound_comparison_sweep(family, a.genera, a.eps_grid, a.lambda_grid, p,
                                                                    a.delta));
    return ok;
}

int cmd_net(const NetArgs& a, std::ostream& out) {
    nets::PointCloud cloud;
    if (!a.input.empty()) {
        std::istringstream in(read_file(a.input));
        cloud = io::read_cloud_csv(in, a.epsilon);
    } else {
        cloud = nets::sample_hyperbolic_ball(a.epsilon, a.radius, a.n, a.seed);
    }
    const auto result = nets::greedy_separated_net(cloud, a.r, a.seed_index);
    json j = io::to_json(result);
    j["eps"] = a.epsilon;
    j["points"] = cloud.size();
    if (a.input.empty()) {
        const auto bound = nets::net_cardinality_bound(collar::ball_area(a.epsilon, a.radius), a.r);
        j["radius"] = a.radius;
        j["seed"] = a.seed;
        j["cardinality_bound"] = bound.value;
        j["within_hypothesis"] = bound.within_hypothesis;
    }
    if (!a.cloud_output.empty()) {
        Sink sink(a.cloud_output, out);
        io::write_cloud_csv(*sink, cloud);
    }
    emit_json(j, a.output, out);
    return result.is_separated && result.is_net ? ok : verification_failed;
}

void add_verify_options(CLI::App* cmd, VerifyArgs& v, bool with_suite) {
    if (with_suite) {
        std::vector<std::string> choices = verify::suite_names();
        choices.push_back("all");
        cmd->add_option("--suite", v.suite, "Suite to run")->check(CLI::IsMember(choices));
    }
    cmd->add_option("--seed", v.opts.seed, "Random seed");
    cmd->add_option("--tol", v.opts.tol, "Slack on inequality checks")->check(CLI::PositiveNumber);
    cmd->add_option("--ode-tol", v.opts.ode_tol, "Integration tolerance for mode solves")
        ->check(CLI::Range(1e-12, 1e-4));
    cmd->add_option("--perturb-ratio", v.opts.perturb_ratio, "Fault injection: scale measured mass ratios");
    cmd->add_option("--output", v.output, "Summary JSON path (default stdout)");
    cmd->add_option("--details-prefix", v.details_prefix, "Write per-suite CSV grids to PREFIX_<suite>.csv");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thick-thin decompositions, collar-mode and heat-kernel certification, nets and multiplicity bounds",
                 "hypermult"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* decompose = app.add_subcommand("decompose", "Thick-thin decomposition report for a descriptor");
    decompose->add_option("--input", dec.input, "Descriptor JSON")->required();
    decompose->add_option("--epsilon", dec.epsilon, "Short-curve threshold: length < 2 epsilon")->required();
    decompose->add_option("--trim", dec.trim, "Distance trimmed from each collar end");
    decompose->add_option("--output", dec.output, "Report JSON path (default stdout)");

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
    add_verify_options(verify_cmd, ver, true);
    VerifyArgs ver_modes, ver_kernel;
    ver_modes.suite = "modes";
    ver_kernel.suite = "kernel";
    auto* verify_modes = app.add_subcommand("verify-modes", "Same as verify --suite modes");
    add_verify_options(verify_modes, ver_modes, false);
    auto* verify_kernel = app.add_subcommand("verify-kernel", "Same as verify --suite kernel");
    add_verify_options(verify_kernel, ver_kernel, false);

    BoundsArgs bnd;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate both multiplicity bounds at one point");
    bounds_cmd->add_option("--input", bnd.input, "Descriptor JSON; supplies genus, N_eps and I_eps");
    bounds_cmd->add_option("--genus", bnd.in.genus, "Genus");
    bounds_cmd->add_option("--epsilon", bnd.in.eps, "Thick-thin threshold epsilon");
    bounds_cmd->add_option("--lambda", bnd.lambda, "Eigenvalue for the second bound");
    bounds_cmd->add_option("--delta", bnd.in.delta, "Spectral gap parameter delta");
    bounds_cmd->add_option("--n-short", bnd.in.n_short, "N_eps");
    bounds_cmd->add_option("--i-thick", bnd.in.i_thick, "I_eps");
    bounds_cmd->add_option("--j-max", bnd.in.j_max, "Last dyadic level reported");
    bounds_cmd->add_option("--K", bnd.K, "Constant K of the first bound");
    bounds_cmd->add_option("--C-eps", bnd.C_eps, "Constant C(eps) of the second bound");
    bounds_cmd->add_option("--c2", bnd.c2, "Sobolev constant c2 (c1 = 1/(9 c2))");
    bounds_cmd->add_flag("--thm2", bnd.want_thm2, "Require the second bound to be defined");
    bounds_cmd->add_option("--output", bnd.output, "Report JSON path (default stdout)");

    SweepArgs swp;
    auto* sweep_cmd = app.add_subcommand("sweep", "Bound comparison table over a surface family, or the mode sweep");
    sweep_cmd->add_option("--kind", swp.kind, "bounds or modes")->check(CLI::IsMember({"bounds", "modes"}));
    sweep_cmd->add_option("--family", swp.family, "necklace or two-piece")
        ->check(CLI::IsMember({"necklace", "two-piece"}));
    sweep_cmd->add_option("--genera", swp.genera, "Genera to sweep");
    sweep_cmd->add_option("--eps-grid", swp.eps_grid, "Epsilon values");
    sweep_cmd->add_option("--lambda-grid", swp.lambda_grid, "Lambda values");
    sweep_cmd->add_option("--delta", swp.delta, "Spectral gap parameter delta");
    sweep_cmd->add_option("--K", swp.K, "Constant K");
    sweep_cmd->add_option("--C-eps", swp.C_eps, "Constant C(eps)");
    sweep_cmd->add_option("--c2", swp.c2, "Sobolev constant c2");
    sweep_cmd->add_option("--tol", swp.tol, "Integration tolerance (modes)")->check(CLI::Range(1e-12, 1e-4));
    sweep_cmd->add_option("--perturb-ratio", swp.perturb_ratio, "Fault injection (modes)");
    sweep_cmd->add_option("--output", swp.output, "CSV path (default stdout)");

    NetArgs net;
    auto* net_cmd = app.add_subcommand("net", "Greedy r-separated net of a point cloud");
    net_cmd->add_option("--input", net.input, "Point cloud CSV (id,x,y in the Poincare disk)");
    net_cmd->add_option("--epsilon", net.epsilon, "Curvature scale: curvature -epsilon^2");
    net_cmd->add_option("--radius", net.radius, "Ball radius for sampled clouds");
    net_cmd->add_option("--n", net.n, "Number of sampled points");
    net_cmd->add_option("--seed", net.seed, "Sampling seed");
    net_cmd->add_option("--r", net.r, "Separation radius")->required();
    net_cmd->add_option("--seed-index", net.seed_index, "Row the greedy scan starts from");
    net_cmd->add_option("--output", net.output, "NetResult JSON path (default stdout)");
    net_cmd->add_option("--cloud-output", net.cloud_output, "Write the point cloud as CSV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return schema_error;
    }

    try {
        if (*decompose) return cmd_decompose(dec, out);
        if (*verify_cmd) return cmd_verify(ver, out, err);
        if (*verify_modes) return cmd_verify(ver_modes, out, err);
        if (*verify_kernel) return cmd_verify(ver_kernel, out, err);
        if (*bounds_cmd) return cmd_bounds(bnd, *bounds_cmd, out);
        if (*sweep_cmd) return cmd_sweep(swp, *sweep_cmd, out);
        if (*net_cmd) return cmd_net(net, out);
    } catch (const SchemaError& e) {
        err << "schema error [" << e.invariant() << "]: " << e.what() << '\n';
        return schema_error;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return domain_error;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << '\n';
        return verification_failed;
    }
    return schema_error;
}

}  // namespace hypermult::cli
