#include "hypermult/bounds.hpp"

#include <cmath>
#include <numbers>

#include "hypermult/collar_geometry.hpp"
#include "hypermult/errors.hpp"
#include "hypermult/parallel.hpp"

namespace hypermult::bounds {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::reference: return "reference";
        case Provenance::user: return "user";
        case Provenance::fallback: return "default";
    }
    return "default";
}

const char* to_string(Stronger s) {
    switch (s) {
        case Stronger::thm1: return "thm1";
        case Stronger::thm2: return "thm2";
        case Stronger::tie: return "tie";
        case Stronger::none: return "n/a";
    }
    return "n/a";
}

ConstantsProfile ConstantsProfile::reference_example() {
    ConstantsProfile p;
    for (const char* name : {"K", "C_eps", "c2", "c3", "C1", "C2", "C3", "C4", "C5"})
        p.provenance[name] = Provenance::fallback;
    for (const char* name : {"c", "C", "C_prime"}) p.provenance[name] = Provenance::reference;
    return p;
}

void ConstantsProfile::set(const std::string& name, double value) {
    if (!std::isfinite(value) || !(value > 0.0)) throw DomainError("constant " + name + " must be positive and finite");
    if (name == "K") K = value;
    else if (name == "C_eps") C_eps = value;
    else if (name == "c") c = value;
    else if (name == "C") C = value;
    else if (name == "C_prime") C_prime = value;
    else if (name == "c2") c2 = value;
    else if (name == "c3") c3 = value;
    else if (name.size() == 2 && name[0] == 'C' && name[1] >= '1' && name[1] <= '5') C_n[name[1] - '1'] = value;
    else throw DomainError("unknown constant " + name);
    provenance[name] = Provenance::user;
}

Feasibility constants_feasibility(const ConstantsProfile& p) {
    const double Cp = p.C_prime, C = p.C, c = p.c, h = p.h();
    Feasibility f;
    auto require = [&f](bool ok, const char* name) {
        if (!ok) f.violated.emplace_back(name);
    };
    require(Cp > 48.0, "C' > 48");
    require(C > 16.0, "C > 16");
    require(c > 0.0, "c > 0");
    require(c < 1.0 / (8.0 + 6.0 * Cp), "c < 1/(8+6C')");
    require(c < 1.0 / (4.0 * h), "c < 1/(4h)");
    require(Cp * Cp > 80.0 + 48.0 * Cp, "C'^2 > 80+48C'");
    require(Cp * Cp > 16.0 / c, "C'^2 > 16/c");
    require(C * C / 64.0 > h + 4.0, "C^2/64 > h+4");
    f.feasible = f.violated.empty();
    return f;
}

double feasibility_threshold_c(const ConstantsProfile& p, double rel_tol) {
    if (!constants_feasibility(p).feasible) throw DomainError("feasibility_threshold_c: starting profile is infeasible");
    ConstantsProfile q = p;
    double lo = p.c, hi = p.c;
    for (int k = 0; k < 64; ++k) {
        hi *= 10.0;
        q.c = hi;
        if (!constants_feasibility(q).feasible) break;
        lo = hi;
    }
    q.c = hi;
    if (constants_feasibility(q).feasible) throw DomainError("feasibility_threshold_c: no upper threshold in c");
    while (hi - lo > rel_tol * lo) {
        const double mid = 0.5 * (lo + hi);
        q.c = mid;
        (constants_feasibility(q).feasible ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double thm1_multiplicity_bound(int genus, double eps, int n_short, double K) {
    if (genus < 2) throw DomainError("thm1: genus must be at least 2");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("thm1: eps must lie in (0, 1)");
    if (n_short < 0 || n_short > 3 * genus - 3) throw DomainError("thm1: n_short must lie in [0, 3g-3]");
    if (!(K >= 1.0)) throw DomainError("thm1: K must be at least 1");
    const double arg = 10.0 * genus / (n_short + 1.0);
    if (!(arg > std::numbers::e)) throw DomainError("thm1: 10g/(N+1) <= e, the double log is not positive");
    return K / (eps * eps) * genus / std::log(std::log(arg));
}

double thm2_multiplicity_bound(double lambda, int genus, double eps, int i_thick, double delta, double C_eps) {
    if (genus < 2) throw DomainError("thm2: genus must be at least 2");
    if (i_thick < 1) throw DomainError("thm2: i_thick must be at least 1");
    if (!(C_eps > 0.0)) throw DomainError("thm2: C_eps must be positive");
    if (!(delta > 0.0 && delta < 0.5)) throw DomainError("thm2: delta must lie in (0, 1/2)");
    if (!(lambda > 0.0 && lambda <= 0.25 - delta * delta))
        throw DomainError("thm2: lambda must lie in (0, 1/4 - delta^2]");
    if (!(eps > 0.0 && eps < collar::eps_delta(delta))) throw DomainError("thm2: eps must lie in (0, eps_delta(delta))");
    return C_eps * std::sqrt(lambda) * genus + 24.0 * i_thick;
}

std::optional<double> crossover_lambda(double thm1, int genus, int i_thick, double C_eps) {
    const double excess = thm1 - 24.0 * i_thick;
    if (!(excess > 0.0)) return std::nullopt;
    const double root = excess / (C_eps * genus);
    return root * root;
}

RadiiSchedule radii_schedule(double c, double K, int genus, int n_short) {
    if (!(c > 0.0)) throw DomainError("radii: c must be positive");
    if (!(K > 0.0)) throw DomainError("radii: K must be positive");
    if (genus < 2) throw DomainError("radii: genus must be at least 2");
    if (n_short < 0) throw DomainError("radii: n_short must be non-negative");
    const double arg = K * genus / (n_short + 1.0);
    if (!(arg > std::numbers::e)) throw DomainError("radii: Kg/(N+1) <= e, ln ln is not positive");
    RadiiSchedule s;
    const double l = std::log(arg);
    s.r1 = c * std::log(l);
    s.r2 = c * l;
    s.n = static_cast<long>(std::floor(s.r2 / s.r1));
    if (!(arg > std::exp(std::numbers::e))) s.warnings.emplace_back("Kg/(N+1) <= e^e");
    if (s.r1 < 4.0) s.warnings.emplace_back("r1 < 4: outside the asymptotic regime");
    return s;
}

LevelSchedules level_schedules(double lambda, double c1, int j_max) {
    if (!(lambda > 0.0)) throw DomainError("level_schedules: lambda must be positive");
    if (!(c1 > 0.0)) throw DomainError("level_schedules: c1 must be positive");
    if (j_max < 0) throw DomainError("level_schedules: j_max must be non-negative");
    LevelSchedules s;
    s.mu.resize(j_max + 1);
    s.R.resize(j_max + 1);
    const double root = std::sqrt(lambda);
    for (int j = 0; j <= j_max; ++j) {
        const double two_j = std::ldexp(1.0, j);
        s.mu[j] = two_j * root;
        s.R[j] = c1 * two_j / root;
    }
    return s;
}

DyadicBound dyadic_mass_bound(const Eigen::VectorXd& level_areas, double lambda, double area_thick_plus_shell,
                              double diam_c, const ConstantsProfile& p) {
    if (level_areas.size() == 0) throw DomainError("dyadic: no level areas");
    for (Eigen::Index j = 0; j < level_areas.size(); ++j)
        if (!(level_areas[j] >= 0.0) || !std::isfinite(level_areas[j]))
            throw DomainError("dyadic: level areas must be finite and non-negative");
    if (!(lambda > 0.0 && lambda < 0.25)) throw DomainError("dyadic: lambda must lie in (0, 1/4)");
    if (!(area_thick_plus_shell > 0.0)) throw DomainError("dyadic: area of thick part plus shell must be positive");
    if (!(diam_c > 0.0)) throw DomainError("dyadic: diam_c must be positive");

    DyadicBound out;
    for (Eigen::Index j = 0; j < level_areas.size(); ++j)
        if (level_areas[j] > 0.0) out.j0 = static_cast<int>(j);
    const double root = std::sqrt(lambda);
    const double c1 = p.c1();
    const LevelSchedules s = level_schedules(lambda, c1, out.j0);
    const double total = level_areas.head(out.j0 + 1).sum();
    if (total > area_thick_plus_shell * (1.0 + 1e-12))
        out.sanity_violations.emplace_back("sum of level areas exceeds area of thick part plus shell");

    if (out.j0 == 0) {
        out.case_used = 0;
        out.value = root * level_areas[0];
        return out;
    }
    if (s.R[out.j0] >= diam_c) {
        out.case_used = 1;
        out.value = 8.0;
        if (total > 4.0 / s.mu[out.j0 - 1]) out.sanity_violations.emplace_back("area exceeds 4/mu_{j0-1}");
        return out;
    }
    out.case_used = 2;
    out.value = root * level_areas[0];
    for (int j = 1; j <= out.j0; ++j) {
        out.value += 8.0 * root * area_thick_plus_shell / (c1 * p.c3 * std::ldexp(1.0, j));
        const double cap = area_thick_plus_shell * 4.0 / (p.c3 * s.R[j] * s.mu[j - 1]);
        if (level_areas[j] > cap) out.sanity_violations.emplace_back("area(G_" + std::to_string(j) + ") exceeds its cap");
    }
    return out;
}

BoundReport evaluate_bounds(const BoundInputs& in, const ConstantsProfile& p) {
    BoundReport r;
    r.inputs = in;
    try {
        r.thm1 = thm1_multiplicity_bound(in.genus, in.eps, in.n_short, p.K);
    } catch (const DomainError& e) {
        r.thm1_error = e.what();
    }
    if (in.lambda) {
        try {
            r.thm2 = thm2_multiplicity_bound(*in.lambda, in.genus, in.eps, in.i_thick, in.delta, p.C_eps);
        } catch (const DomainError& e) {
            r.thm2_error = e.what();
        }
        if (*in.lambda > 0.0) r.levels = level_schedules(*in.lambda, p.c1(), in.j_max);
    } else {
        r.thm2_error = "lambda required";
    }
    try {
        r.radii = radii_schedule(p.c, p.K, in.genus, in.n_short);
    } catch (const DomainError& e) {
        r.radii_error = e.what();
    }
    if (r.thm1) r.crossover = crossover_lambda(*r.thm1, in.genus, in.i_thick, p.C_eps);

    if (r.thm1 && r.thm2) {
        r.stronger = *r.thm1 < *r.thm2 ? Stronger::thm1 : *r.thm2 < *r.thm1 ? Stronger::thm2 : Stronger::tie;
    } else if (r.thm1) {
        r.stronger = Stronger::thm1;
    } else if (r.thm2) {
        r.stronger = Stronger::thm2;
    }
    return r;
}

Family necklace_sweep_family(double short_length, double long_length) {
    return {"necklace", [=](int g) {
                const int n = static_cast<int>(std::floor(std::sqrt(static_cast<double>(g))));
                return necklace_family(g, std::min(n, g - 1), short_length, long_length);
            }};
}

Family two_piece_sweep_family(double short_length, double long_length) {
    return {"two-piece", [=](int g) { return two_piece_family(g, short_length, long_length); }};
}

std::vector<SweepRow> bound_comparison_sweep(const Family& family, const std::vector<int>& genera,
                                             const std::vector<double>& eps_grid,
                                             const std::vector<double>& lambda_grid, const ConstantsProfile& p,
                                             double delta) {
    struct Member {
        int genus, n_short, i_thick;
        double eps;
    };
    std::vector<Member> members;
    for (int g : genera) {
        const SurfaceDescriptor d = family.make(g);
        require_valid(d);
        for (double eps : eps_grid)
            members.push_back({g, count_short_geodesics(d, eps), thick_component_count(d, eps), eps});
    }
    const std::size_t nl = lambda_grid.size();
    std::vector<SweepRow> rows(members.size() * nl);
    parallel_for(rows.size(), [&](std::size_t k) {
        const Member& m = members[k / nl];
        BoundInputs in;
        in.genus = m.genus;
        in.eps = m.eps;
        in.lambda = lambda_grid[k % nl];
        in.delta = delta;
        in.n_short = m.n_short;
        in.i_thick = m.i_thick;
        const BoundReport r = evaluate_bounds(in, p);
        rows[k] = {family.name, m.genus, m.eps, *in.lambda, m.n_short, m.i_thick, r.thm1, r.thm2, r.stronger};
    });
    return rows;
}

}  // namespace hypermult::bounds
