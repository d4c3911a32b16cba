#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rds/allocation.hpp"
#include "rds/estimators.hpp"
#include "rds/generators.hpp"
#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

enum class ModelKind { directed_er, power_law, external_graph };

std::string_view to_string(ModelKind kind);

/// Declarative description of one replicated experiment cell.
struct ExperimentSpec {
    ModelKind model = ModelKind::directed_er;
    ErParams er;
    PowerLawParams power_law;
    std::size_t max_retries = default_max_retries;
    /// ModelKind::external_graph: a strongly connected graph and, for
    /// proportion experiments, its property flags.
    std::shared_ptr<const DirectedGraph> external;
    std::vector<std::uint8_t> external_flags;

    std::vector<AllocationScheme> alloc_schemes;
    std::size_t walk_length = 500;
    std::size_t replications = 200;
    std::vector<Estimator> estimators{std::begin(all_estimators), std::end(all_estimators)};
    Seed master_seed = 1;

    std::size_t threads = 0;  // 0: hardware concurrency
    bool sequential = false;
    std::size_t burn_in = 0;
    EInvMethod e_inv_method = EInvMethod::mean_of_inverse;
    double power_tolerance = 1e-10;
    /// Overrides the model's (alpha, lambda) for ren_al, e.g. on external graphs.
    std::optional<NetworkParams> known_params;

    void validate() const;

    /// (alpha, lambda) handed to ren_al: the generating parameters for the
    /// synthetic models, `known_params` when set.
    std::optional<NetworkParams> true_params() const;
    /// Degree exponent 1 + 1/tau_un for the power-law model.
    std::optional<double> gamma() const;
    /// Alpha and lambda columns reported for the cell.
    double reported_alpha() const;
    double reported_lambda() const;
};

struct ReplicationRecord {
    std::size_t vertices = 0;   // size of the analysed (strongly connected) graph
    double directedness = 0.0;  // realized directedness of that graph
    std::size_t revisits = 0;
    double alpha_hat = 0.0;     // NaN when the moment estimator is degenerate
    double lambda_hat = 0.0;
    std::size_t generation_attempts = 1;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<Estimator> estimators;
    std::vector<ReplicationRecord> records;

    /// D_TV experiments: dtv[e][k] for estimators[e], replication k.
    std::vector<std::vector<double>> dtv;

    /// Proportion experiments: deviations[a][e][k] = p_hat - p_realized for
    /// spec.alloc_schemes[a]; realized_p[a][k].
    std::vector<std::vector<std::vector<double>>> deviations;
    std::vector<std::vector<double>> realized_p;

    double runtime_seconds = 0.0;

    std::span<const double> dtv_samples(Estimator e) const;
    std::span<const double> deviation_samples(std::size_t allocation_index, Estimator e) const;
    std::vector<double> alpha_hats() const;
};

/// Half the L1 distance. Inputs must have equal length and sum to 1 within 1e-9.
double tv_distance(std::span<const double> a, std::span<const double> b);

/// Per replication: build the strongly connected graph, compute the exact
/// stationary distribution, run one walk, and record D_TV of every requested
/// estimator over all vertices.
ExperimentResult run_dtv_experiment(const ExperimentSpec& spec);

/// Per replication and allocation scheme: allocate the property, run a walk,
/// and record p_hat - p_realized for every requested estimator.
ExperimentResult run_proportion_experiment(const ExperimentSpec& spec);

/// The strongly connected graph of replication `index`: the largest SCC of a
/// directed ER draw, a strongly connected power-law draw, or the external graph.
DirectedGraph replication_graph(const ExperimentSpec& spec, std::size_t index,
                                std::size_t* attempts = nullptr);

/// Seed streams used within a replication.
namespace streams {
inline constexpr std::uint64_t graph = 1;
inline constexpr std::uint64_t walk = 2;
inline constexpr std::uint64_t allocation = 16;  // + allocation index
inline constexpr std::uint64_t allocation_walk = 1024;  // + allocation index
}  // namespace streams

}  // namespace rds
