#include "hypermult/verify.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hypermult/bounds.hpp"
#include "hypermult/collar_geometry.hpp"
#include "hypermult/heat_kernel.hpp"
#include "hypermult/io.hpp"
#include "hypermult/mode_analysis.hpp"
#include "hypermult/nets.hpp"
#include "hypermult/parallel.hpp"
#include "hypermult/quadrature.hpp"

namespace hypermult::verify {

namespace {

const double kFourOverESquared = 4.0 / std::exp(2.0);

std::string point(std::initializer_list<std::pair<const char*, double>> coords) {
    std::string s;
    for (const auto& [name, value] : coords) {
        if (!s.empty()) s += ", ";
        s += std::string(name) + "=" + io::format_double(value);
    }
    return s;
}

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double cosh_sq_quadrature(double a, double b, double delta) {
    auto f = [delta](double x) {
        const double c = std::cosh(delta * x);
        return c * c;
    };
    return quad::adaptive_gauss_kronrod(f, a, b, 1e-14).value;
}

}  // namespace

void SuiteResult::check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (first_failure.empty()) first_failure = what;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"modes", "ratios", "kernel", "nets", "constants"};
    return names;
}

SuiteResult run_suite(const std::string& name, const Options& opts, std::ostream* details) {
    if (name == "modes") return modes_suite(opts, details);
    if (name == "ratios") return ratios_suite(opts, details);
    if (name == "kernel") return kernel_suite(opts, details);
    if (name == "nets") return nets_suite(opts, details);
    if (name == "constants") return constants_suite(opts, details);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

SuiteResult modes_suite(const Options& opts, std::ostream* details) {
    SuiteResult out;
    out.suite = "modes";
    modes::MassSweepConfig config = modes::default_mass_sweep();
    config.tol = opts.ode_tol;
    config.perturb_ratio = opts.perturb_ratio;
    const auto rows = modes::mass_concentration_sweep(config);

    double max_ratio = 0.0, max_drift = 0.0, max_gap = 0.0;
    for (const auto& r : rows) {
        const std::string at = point({{"length", r.length}, {"lambda", r.lambda}, {"j", r.j}});
        out.check(std::max(r.ratio_phi, r.ratio_psi) <= r.bound + opts.tol, "mass_concentration @ " + at);
        out.check(r.dominated, "cosh_domination @ " + at);
        out.check(r.wronskian_ok, "wronskian @ " + at);
        out.check(r.composite_ok, "composite_cross_check @ " + at);
        out.check(r.phi_above_sinh, "phi_above_sinh @ " + at);
        max_ratio = std::max({max_ratio, r.ratio_phi, r.ratio_psi});
        max_drift = std::max(max_drift, r.wronskian_drift);
        max_gap = std::max(max_gap, r.composite_gap);
    }
    out.metric("grid_lengths", static_cast<double>(config.lengths.size()));
    out.metric("grid_lambdas", static_cast<double>(config.lambdas.size()));
    out.metric("modes_per_lambda", config.modes_per_lambda);
    out.metric("solves", static_cast<double>(rows.size()));
    out.metric("max_ratio", max_ratio);
    out.metric("bound", kFourOverESquared);
    out.metric("max_wronskian_drift", max_drift);
    out.metric("max_composite_gap", max_gap);
    if (details) io::write_mass_sweep_csv(*details, rows);
    return out;
}

SuiteResult ratios_suite(const Options& opts, std::ostream* details) {
    SuiteResult out;
    out.suite = "ratios";
    std::optional<io::CsvWriter> csv;
    if (details) csv.emplace(*details, std::vector<std::string>{"delta", "w", "trim", "ratio", "bound", "pass"});

    constexpr int kSamples = 10000;
    double worst = 0.0;
    for (int k = 0; k < kSamples; ++k) {
        // w in (1, 30]; at w = 1 the trimmed interval is empty.
        const double w = 1.0 + 29.0 * (k + 1) / kSamples;
        const double r = modes::cosh_ratio(w, 1.0, 1.0);
        worst = std::max(worst, r);
        out.check(r <= kFourOverESquared + opts.tol, "closed_form_ratio @ " + point({{"w", w}}));
        if (csv && k % 100 == 0) {
            *csv << 1.0 << w << 1.0 << r << kFourOverESquared << (r <= kFourOverESquared + opts.tol);
            csv->end_row();
        }
    }
    out.metric("closed_form_samples", kSamples);
    out.metric("closed_form_max", worst);

    double worst_gap = 0.0;
    for (double delta : {0.05, 0.25, 0.5, 1.0}) {
        for (double w : {1.5, 2.0, 5.0, 10.0, 25.0}) {
            const double trim = std::min(1.0 / delta, 0.5 * w);
            const double exact = modes::cosh_ratio(w, trim, delta);
            const double numeric = cosh_sq_quadrature(0.0, w - trim, delta) / cosh_sq_quadrature(0.0, w, delta);
            const double gap = std::abs(exact - numeric) / numeric;
            worst_gap = std::max(worst_gap, gap);
            out.check(gap <= 1e-10, "closed_form_vs_quadrature @ " + point({{"delta", delta}, {"w", w}}));
        }
    }
    out.metric("max_quadrature_gap", worst_gap);

    double worst_delta = 0.0;
    int delta_samples = 0;
    for (int d = 1; d <= 9; ++d) {
        const double delta = 0.05 * d;
        const double w_min = 1.0 / delta + 2.0;
        for (int k = 0; k < 200; ++k) {
            const double w = w_min + 0.25 * k;
            const double r = modes::cosh_ratio(w, 1.0 / delta, delta);
            worst_delta = std::max(worst_delta, r);
            ++delta_samples;
            out.check(r <= kFourOverESquared + opts.tol, "delta_ratio @ " + point({{"delta", delta}, {"w", w}}));
            if (csv && k % 20 == 0) {
                *csv << delta << w << 1.0 / delta << r << kFourOverESquared << (r <= kFourOverESquared + opts.tol);
                csv->end_row();
            }
        }
    }
    out.metric("delta_samples", delta_samples);
    out.metric("delta_ratio_max", worst_delta);
    return out;
}

SuiteResult kernel_suite(const Options& opts, std::ostream* details) {
    SuiteResult out;
    out.suite = "kernel";

    for (double t : {0.5, 1.0, 5.0}) {
        const double m = heat::kernel_total_mass(t);
        out.check(std::abs(m - 1.0) <= 1e-6, "stochastic_completeness @ " + point({{"t", t}}));
    }
    {
        const double m = heat::kernel_total_mass(4.0, 0.5);
        out.check(std::abs(m - 1.0) <= 1e-6, "rescaled_mass @ " + point({{"t", 4.0}, {"eps", 0.5}}));
    }

    std::mt19937_64 rng(splitmix(opts.seed ^ 0x6b65726e656cULL));
    double worst_agreement = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double t = std::pow(10.0, -3.0 + 6.0 * uniform53(rng));
        const double rho = 100.0 * uniform53(rng);
        const double a = heat::log_kernel_curv_minus1(t, rho);
        const double b = heat::log_kernel_curv_minus1_tanh_sinh(t, rho);
        const double rel = std::abs(std::expm1(a - b));
        worst_agreement = std::max(worst_agreement, rel);
        out.check(rel <= 1e-8, "two_route_agreement @ " + point({{"t", t}, {"rho", rho}}));
    }
    out.metric("agreement_samples", 100);
    out.metric("max_agreement_gap", worst_agreement);

    Eigen::VectorXd ts = Eigen::VectorXd::LinSpaced(50, 1.0, 50.0);
    Eigen::VectorXd rhos = Eigen::VectorXd::LinSpaced(81, 0.0, 40.0);
    const auto report = heat::gaussian_majorant_check(ts, rhos, 1.0);
    out.check(report.finite, "gaussian_majorant_finite");
    const double k10 = heat::kernel_curv_minus1(1.0, 0.0);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        const std::string at = point({{"t", row.t}, {"rho", row.rho}});
        out.check(row.kernel > 0.0, "kernel_positive @ " + at);
        if (i % rhos.size() != 0) out.check(row.kernel < report.rows[i - 1].kernel, "kernel_decreasing @ " + at);
        if (row.rho == 0.0) out.check(row.kernel <= k10, "origin_column @ " + at);
    }
    out.metric("gaussian_grid_points", static_cast<double>(report.rows.size()));
    out.metric("gaussian_c_star", report.c_star);

    const int n_t = 981;
    Eigen::VectorXd sum_ts = Eigen::VectorXd::LinSpaced(n_t, 1.0, 50.0);
    double growth = 0.0;
    for (Eigen::Index i = 0; i < sum_ts.size(); ++i) {
        const double t = sum_ts[i];
        const auto s = heat::kernel_sum_majorant(t);
        out.check(s.sum >= 1.0, "majorant_sum_at_least_one @ " + point({{"t", t}}));
        out.check(s.sum <= s.split_bound, "majorant_split @ " + point({{"t", t}}));
        growth = std::max(growth, s.sum * std::exp(-4.0 * t));
    }
    out.check(std::isfinite(growth), "majorant_growth_finite");
    out.metric("majorant_samples", n_t);
    out.metric("majorant_growth_constant", growth);

    if (details) {
        io::CsvWriter csv(*details, {"t", "rho", "k", "gaussian_ratio"});
        for (const auto& row : report.rows) {
            csv << row.t << row.rho << row.kernel << row.gaussian_ratio;
            csv.end_row();
        }
    }
    return out;
}

std::vector<NetInstance> net_instances(std::uint64_t seed) {
    static constexpr double kEps[] = {0.25, 0.5, 1.0};
    std::vector<NetInstance> out;
    std::mt19937_64 rng(splitmix(seed ^ 0x6e657473ULL));
    for (int i = 0; i < 100; ++i) {
        NetInstance inst;
        inst.eps = kEps[i % 3];
        inst.radius = 4.0 + 6.0 * uniform53(rng);
        inst.r = 4.0 + 4.0 * uniform53(rng);
        inst.n = 500 + static_cast<long>(rng() % 2500);
        inst.seed = splitmix(seed + static_cast<std::uint64_t>(i));
        out.push_back(inst);
    }
    // The largest case: 10^4 points in a radius-10 ball at curvature -1 with r = 4.
    out[0] = {1.0, 10.0, 4.0, 10000, splitmix(seed)};
    return out;
}

SuiteResult nets_suite(const Options& opts, std::ostream* details) {
    SuiteResult out;
    out.suite = "nets";
    const auto instances = net_instances(opts.seed);
    struct Outcome {
        std::size_t size = 0;
        double bound = 0.0;
        bool separated = false, net = false, maximal_sample = false;
    };
    std::vector<Outcome> outcomes(instances.size());
    parallel_for(instances.size(), [&](std::size_t k) {
        const auto& inst = instances[k];
        const auto cloud = nets::sample_hyperbolic_ball(inst.eps, inst.radius, inst.n, inst.seed);
        const auto result = nets::greedy_separated_net(cloud, inst.r, 0);
        const auto check = nets::verify_net(cloud, result.selected, inst.r);
        Outcome& o = outcomes[k];
        o.size = result.selected.size();
        o.bound = nets::net_cardinality_bound(collar::ball_area(inst.eps, inst.radius), inst.r).value;
        o.separated = check.is_separated && result.is_separated;
        o.net = check.is_net && result.is_net;
    });

    std::optional<io::CsvWriter> csv;
    if (details)
        csv.emplace(*details, std::vector<std::string>{"eps", "radius", "n", "r", "seed", "net_size", "bound",
                                                       "separated", "net"});
    double tightest = 0.0;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const auto& inst = instances[k];
        const auto& o = outcomes[k];
        const std::string at = point({{"instance", static_cast<double>(k)}, {"eps", inst.eps},
                                      {"radius", inst.radius}, {"r", inst.r}});
        out.check(o.separated, "separated @ " + at);
        out.check(o.net, "covering @ " + at);
        out.check(static_cast<double>(o.size) <= o.bound, "cardinality_bound @ " + at);
        tightest = std::max(tightest, o.size / o.bound);
        if (csv) {
            *csv << inst.eps << inst.radius << inst.n << inst.r << std::to_string(inst.seed)
                 << static_cast<long>(o.size) << o.bound << o.separated << o.net;
            csv->end_row();
        }
    }
    out.metric("instances", static_cast<double>(instances.size()));
    out.metric("max_size_over_bound", tightest);
    return out;
}

SuiteResult constants_suite(const Options&, std::ostream* details) {
    SuiteResult out;
    out.suite = "constants";
    const auto p = bounds::ConstantsProfile::reference_example();
    const auto f = bounds::constants_feasibility(p);
    out.check(f.feasible, "reference_tuple_feasible");
    out.check(p.h() == 50.0 * (1.0 + p.C), "h_identity");
    out.check(p.c1() * 9.0 * p.c2 == 1.0, "c1_identity");

    const double threshold = bounds::feasibility_threshold_c(p, 1e-6);
    const double analytic = 1.0 / (4.0 * 50.0 * (1.0 + p.C));
    const double rel = std::abs(threshold - analytic) / analytic;
    out.check(rel <= 1e-3, "feasibility_threshold @ " + point({{"found", threshold}, {"analytic", analytic}}));

    auto q = p;
    q.c = 1e-3;
    out.check(!bounds::constants_feasibility(q).feasible, "c_too_large_rejected");
    q = p;
    q.C = 10.0;
    out.check(!bounds::constants_feasibility(q).feasible, "small_C_rejected");

    out.metric("h", p.h());
    out.metric("threshold_c", threshold);
    out.metric("analytic_threshold_c", analytic);
    out.metric("threshold_relative_gap", rel);
    if (details) {
        io::CsvWriter csv(*details, {"c", "feasible"});
        for (double scale : {1.0, 2.0, 4.0, 4.99, 5.01, 10.0}) {
            auto r = p;
            r.c = p.c * scale;
            csv << r.c << bounds::constants_feasibility(r).feasible;
            csv.end_row();
        }
    }
    return out;
}

}  // namespace hypermult::verify
