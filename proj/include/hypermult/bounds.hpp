#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hypermult/surface_model.hpp"

// Multiplicity bound evaluators and the arithmetic behind them. All logs are
// natural. The constants K and C(eps) are not known explicitly; the
// evaluators compute the shape of each bound for user-chosen constants.

namespace hypermult::bounds {

enum class Provenance { reference, user, fallback };

const char* to_string(Provenance p);

struct ConstantsProfile {
    double K = 1.0;
    double C_eps = 1.0;
    double c = 1e-7;
    double C = 1e4;
    double C_prime = 1e5;
    double c2 = 1.0;  ///< Sobolev constant c(eps); free parameter
    double c3 = 1.0;  ///< ball-area floor: area(B(x, R/2)) >= c3 R
    std::array<double, 5> C_n{1.0, 1.0, 1.0, 1.0, 1.0};  ///< C1..C5

    /// Tag per named field ("K", "C_eps", "c", "C", "C_prime", "c2", "c3", "C1".."C5").
    std::map<std::string, Provenance> provenance;

    double h() const { return 50.0 * (1.0 + C); }
    double c1() const { return 1.0 / (9.0 * c2); }

    /// (C', C, c) = (1e5, 1e4, 1e-7) tagged as the reference example, the rest as fallback defaults.
    static ConstantsProfile reference_example();
    /// Overrides a named field and tags it as user-supplied. Throws DomainError on unknown names.
    void set(const std::string& name, double value);
};

struct Feasibility {
    bool feasible = false;
    std::vector<std::string> violated;
};

/// C' > 48; C > 16; c < 1/(8 + 6C'); c < 1/(4h); C'^2 > 80 + 48 C'; C'^2 > 16/c; C^2/64 > h + 4.
Feasibility constants_feasibility(const ConstantsProfile& p);

/// Largest c keeping the profile feasible, found by bisection on c to the given
/// relative accuracy, starting from p.c (which must be feasible).
double feasibility_threshold_c(const ConstantsProfile& p, double rel_tol = 1e-6);

/// (K / eps^2) g / ln ln(10 g / (N + 1)).
/// Throws DomainError unless g >= 2, 0 < eps < 1, 0 <= N <= 3g - 3, K >= 1 and
/// 10g/(N+1) > e (the double log must be positive).
double thm1_multiplicity_bound(int genus, double eps, int n_short, double K = 1.0);

/// C(eps) sqrt(lambda) g + 24 I.
/// Throws DomainError unless 0 < delta < 1/2, 0 < lambda <= 1/4 - delta^2 and
/// 0 < eps < eps_delta(delta).
double thm2_multiplicity_bound(double lambda, int genus, double eps, int i_thick, double delta, double C_eps = 1.0);

/// Lambda at which the two bounds meet: ((thm1 - 24 I) / (C(eps) g))^2; empty if thm1 <= 24 I.
std::optional<double> crossover_lambda(double thm1, int genus, int i_thick, double C_eps = 1.0);

struct RadiiSchedule {
    double r1 = 0.0;  ///< c ln ln(K g / (N + 1))
    double r2 = 0.0;  ///< c ln(K g / (N + 1))
    long n = 0;       ///< floor(r2 / r1)
    std::vector<std::string> warnings;
};

RadiiSchedule radii_schedule(double c, double K, int genus, int n_short);

struct LevelSchedules {
    Eigen::VectorXd mu;  ///< 2^j sqrt(lambda)
    Eigen::VectorXd R;   ///< c1 2^j / sqrt(lambda)
};

LevelSchedules level_schedules(double lambda, double c1, int j_max);

struct DyadicBound {
    double value = 0.0;
    int j0 = 0;
    int case_used = 0;  ///< 0: single level, 1: R_{j0} >= diam_c, 2: otherwise
    std::vector<std::string> sanity_violations;
};

/// Mass accounting over the dyadic level sets G_j, given area(G_j) for j = 0, 1, ...
DyadicBound dyadic_mass_bound(const Eigen::VectorXd& level_areas, double lambda, double area_thick_plus_shell,
                              double diam_c, const ConstantsProfile& p);

enum class Stronger { thm1, thm2, tie, none };

const char* to_string(Stronger s);

struct BoundInputs {
    int genus = 2;
    double eps = 0.1;
    std::optional<double> lambda;
    double delta = 0.25;
    int n_short = 0;
    int i_thick = 1;
    int j_max = 4;
};

struct BoundReport {
    BoundInputs inputs;
    std::optional<double> thm1;
    std::optional<double> thm2;
    std::string thm1_error;
    std::string thm2_error;
    std::optional<RadiiSchedule> radii;
    std::string radii_error;
    std::optional<LevelSchedules> levels;
    std::optional<double> crossover;
    Stronger stronger = Stronger::none;
};

/// Evaluates everything defined at the given point; undefined pieces carry their error message.
BoundReport evaluate_bounds(const BoundInputs& in, const ConstantsProfile& p);

struct SweepRow {
    std::string family;
    int genus = 0;
    double eps = 0.0;
    double lambda = 0.0;
    int n_short = 0;
    int i_thick = 0;
    std::optional<double> thm1;
    std::optional<double> thm2;
    Stronger stronger = Stronger::none;
};

struct Family {
    std::string name;
    std::function<SurfaceDescriptor(int genus)> make;
};

/// Necklace with floor(sqrt(g)) short curves (N = o(g), I = 1).
Family necklace_sweep_family(double short_length = 1e-3, double long_length = 1.0);
/// Two halves joined by g + 1 short curves (I = 2).
Family two_piece_sweep_family(double short_length = 1e-3, double long_length = 1.0);

/// Rows ordered genus-major, then eps, then lambda. Every member must validate.
std::vector<SweepRow> bound_comparison_sweep(const Family& family, const std::vector<int>& genera,
                                             const std::vector<double>& eps_grid,
                                             const std::vector<double>& lambda_grid, const ConstantsProfile& p,
                                             double delta = 0.25);

}  // namespace hypermult::bounds
