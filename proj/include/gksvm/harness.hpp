#pragma once

#include "gksvm/datagen.hpp"
#include "gksvm/selection.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gksvm {

inline constexpr std::string_view kVersion = "0.1.0";

// --- theoretical exponents --------------------------------------------------------------------

inline constexpr double kInfiniteQ = std::numeric_limits<double>::infinity();

/// 2α / (2α + ρ)
double theoretical_exponent_regression(double alpha, double rho);
/// β(q+1) / (β(q+2) + ρ(q+1)); q = ∞ gives β / (β + ρ).
double theoretical_exponent_classification(double beta, double q, double rho);

// --- distributions ----------------------------------------------------------------------------

/// Generator kind and parameters, as named on the command line and in plan files.
struct DistributionSpec {
    std::string kind = "cube";  ///< cube|circle|swissroll|cantor|lorenz|sawtooth|cusp
    std::size_t d = 2;
    std::size_t d_prime = 1;    ///< cube
    int levels = 8;             ///< cantor
    double sigma = 0.5;         ///< sawtooth
    double zeta = 1.0;          ///< cusp
    double alpha = 1.0;         ///< regression target smoothness
    std::uint64_t target_seed = 1;
    std::size_t target_terms = 4;
    double noise = 0.1;
    LorenzParams lorenz;

    [[nodiscard]] TaskMode mode() const;
    /// Ambient dimension actually produced (3 for lorenz, 2 for the classification kinds).
    [[nodiscard]] std::size_t ambient_dim() const;
    void validate() const;
};

using Distribution = std::variant<RegressionDistribution, ClassificationDistribution>;

Distribution make_distribution(const DistributionSpec& spec);

/// Declared intrinsic dimension of the support.
double declared_rho(const Distribution& dist);

/// Metadata recorded next to generated datasets.
nlohmann::json distribution_metadata(const DistributionSpec& spec, std::uint64_t seed, std::size_t n);

Dataset generate(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

// --- experiment plans -------------------------------------------------------------------------

enum class GridMode { tvsvm, fixed, singleton_lambda };

std::string_view grid_mode_name(GridMode mode);
GridMode parse_grid_mode(std::string_view name);

struct ExperimentPlan {
    DistributionSpec distribution;
    std::vector<std::size_t> n_grid;
    std::size_t replications = 1;
    std::uint64_t seed = 0;
    std::size_t n_test = 2000;
    GridMode grid_mode = GridMode::tvsvm;
    /// Fixed schedule γ_n = n^-a, λ_n = n^-b; defaults come from the declared rate parameters.
    std::optional<double> gamma_exponent;
    std::optional<double> lambda_exponent;
    double hinge_tol = kDefaultHingeTol;
    std::size_t hinge_max_iter = kDefaultMaxSweeps;

    [[nodiscard]] TaskMode mode() const { return distribution.mode(); }
    void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment. Unknown keys are input errors.
ExperimentPlan parse_plan(std::string_view text);
ExperimentPlan load_plan(const std::string& path);
/// Canonical plan text; parse_plan(plan_to_text(p)) reproduces p.
std::string plan_to_text(const ExperimentPlan& plan);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

/// Theoretical rate exponent of the plan's distribution.
double plan_theoretical_exponent(const ExperimentPlan& plan);

/// (a, b) of the fixed schedule γ_n = n^-a, λ_n = n^-b for the plan.
std::pair<double, double> fixed_schedule_exponents(const ExperimentPlan& plan);

// --- learning curves --------------------------------------------------------------------------

struct ReplicationResult {
    std::size_t n = 0;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    double excess = 0.0;        ///< excess risk of the target loss (L2 or classification)
    std::optional<double> hinge_excess;
    double lambda = 0.0;
    double gamma = 0.0;
    bool converged = true;      ///< selected model's solver converged
    std::size_t non_converged_candidates = 0;
    bool clamped = false;       ///< a negative Monte-Carlo estimate was clamped at 0
};

struct CurveRow {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    std::vector<double> values;  ///< one per replication, replication order
};

struct LearningCurve {
    std::vector<CurveRow> rows;
    std::vector<ReplicationResult> runs;  ///< ordered by (n, replication)
};

/// Seed of replication `rep` at sample size `n`.
std::uint64_t replication_seed(std::uint64_t master, std::size_t n, std::size_t rep);

/// One replication: fresh training data, TV selection or the fixed schedule, fresh test data.
ReplicationResult run_replication(const ExperimentPlan& plan, const Distribution& dist, std::size_t n,
                                  std::size_t rep);

LearningCurve run_learning_curve(const ExperimentPlan& plan);

/// Summary row of the given values.
CurveRow summarize(std::size_t n, std::vector<double> values);

// --- rate fitting -----------------------------------------------------------------------------

struct RateFit {
    double empirical_exponent = 0.0;  ///< -slope of log(mean excess) against log n
    double intercept = 0.0;
    double r_squared = 1.0;
    std::size_t rows_used = 0;
    /// log e ≈ c + s log n + t log log n, fitted when at least 4 rows are usable.
    std::optional<double> log_corrected_exponent;
    std::optional<double> log_log_coefficient;
};

/// Needs >= 3 rows with positive mean excess; throws EstimationError otherwise.
RateFit fit_rate_exponent(const std::vector<std::size_t>& n, const std::vector<double>& mean_excess);
RateFit fit_rate_exponent(const LearningCurve& curve);

nlohmann::json curve_to_json(const LearningCurve& curve);
/// CSV `n,mean,median,std,rep_1,...`; rate-fit reads the n and mean columns.
std::string curve_to_csv(const LearningCurve& curve);
/// Reads n and mean columns of a curve CSV (other columns ignored).
std::pair<std::vector<std::size_t>, std::vector<double>> read_curve_csv(const std::string& path);

/// Full report: version, plan echo, curve, fit, theoretical exponent.
nlohmann::json rate_report(const ExperimentPlan& plan, const LearningCurve& curve);

// --- CLI --------------------------------------------------------------------------------------

/// Exit status: 0 success, 1 input error, 2 numerical failure.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace gksvm
