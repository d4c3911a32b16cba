#include "rds/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "rds/error.hpp"
#include "rds/stationary.hpp"
#include "rds/walk.hpp"

namespace rds {

namespace {

constexpr double not_available = std::numeric_limits<double>::quiet_NaN();

std::size_t worker_count(const ExperimentSpec& spec) {
    if (spec.sequential) {
        return 1;
    }
    std::size_t threads = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
    threads = std::max<std::size_t>(threads, 1);
    return std::min(threads, spec.replications);
}

[[noreturn]] void rethrow_with_index(std::exception_ptr error, std::size_t index) {
    const std::string prefix = "replication " + std::to_string(index) + ": ";
    try {
        std::rethrow_exception(error);
    } catch (const GenerationError& e) {
        throw GenerationError(prefix + e.what(), e.attempts());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(prefix + e.what(), e.iterations(), e.residual());
    } catch (const Error& e) {
        throw Error(prefix + e.what());
    }
}

// Runs fn(k) for k in [0, count) on a pool of workers. Every replication
// writes only its own slot, so results do not depend on scheduling.
template <typename Fn>
void for_each_replication(std::size_t count, std::size_t workers, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
    auto run_one = [&](std::size_t k) {
        try {
            fn(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            run_one(k);
            if (errors[k]) {
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < count && !failed; k = next++) {
                    run_one(k);
                    if (errors[k]) {
                        failed = true;
                    }
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }
    for (std::size_t k = 0; k < count; ++k) {
        if (errors[k]) {
            rethrow_with_index(errors[k], k);
        }
    }
}

void record_walk_parameters(ReplicationRecord& record, const WalkSample& walk) {
    record.revisits = walk.revisits;
    try {
        const auto params = estimate_network_params(walk);
        record.alpha_hat = params.alpha;
        record.lambda_hat = params.lambda;
    } catch (const DegenerateEstimateError&) {
        record.alpha_hat = not_available;
        record.lambda_hat = not_available;
    }
}

EstimationOptions estimation_options(const ExperimentSpec& spec) {
    EstimationOptions options;
    options.e_inv_method = spec.e_inv_method;
    options.known_params = spec.true_params();
    return options;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::directed_er: return "directed_er";
        case ModelKind::power_law: return "power_law";
        case ModelKind::external_graph: return "external";
    }
    return "?";
}

void ExperimentSpec::validate() const {
    if (replications < 1) {
        throw ParameterError("replications must be at least 1");
    }
    if (walk_length < 3) {
        // The alpha moment estimator needs three visits.
        throw ParameterError("walk length must be at least 3");
    }
    switch (model) {
        case ModelKind::directed_er: er.validate(); break;
        case ModelKind::power_law: power_law.validate(); break;
        case ModelKind::external_graph:
            if (!external || external->empty()) {
                throw ParameterError("external model needs a nonempty graph");
            }
            if (!is_strongly_connected(*external)) {
                throw StructuralError("external graph is not strongly connected");
            }
            if (!external_flags.empty() && external_flags.size() != external->size()) {
                throw InputError("external property flags do not match the graph");
            }
            break;
    }
    for (const auto& scheme : alloc_schemes) {
        scheme.validate();
    }
    if (!(power_tolerance > 0.0)) {
        throw ParameterError("power-method tolerance must be positive");
    }
    if (known_params) {
        known_params->validate();
    }
}

std::optional<NetworkParams> ExperimentSpec::true_params() const {
    if (known_params) {
        return NetworkParams{known_params->alpha, known_params->lambda, ParamProvenance::true_model};
    }
    switch (model) {
        case ModelKind::directed_er: return NetworkParams{er.alpha, er.lambda, ParamProvenance::true_model};
        case ModelKind::power_law:
            return NetworkParams{power_law.target_alpha(), power_law.target_lambda(), ParamProvenance::true_model};
        case ModelKind::external_graph: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> ExperimentSpec::gamma() const {
    if (model == ModelKind::power_law) {
        return gamma_from_tau(power_law.tau_un);
    }
    return std::nullopt;
}

double ExperimentSpec::reported_alpha() const {
    if (model == ModelKind::external_graph) {
        return directedness(*external);
    }
    return true_params()->alpha;
}

double ExperimentSpec::reported_lambda() const {
    if (model == ModelKind::external_graph) {
        return 2.0 * static_cast<double>(external->edge_count()) / static_cast<double>(external->size());
    }
    return true_params()->lambda;
}

std::span<const double> ExperimentResult::dtv_samples(Estimator e) const {
    for (std::size_t i = 0; i < estimators.size(); ++i) {
        if (estimators[i] == e && i < dtv.size()) {
            return dtv[i];
        }
    }
    throw InputError("estimator " + std::string(to_string(e)) + " was not part of the experiment");
}

std::span<const double> ExperimentResult::deviation_samples(std::size_t allocation_index, Estimator e) const {
    if (allocation_index >= deviations.size()) {
        throw InputError("allocation index out of range");
    }
    for (std::size_t i = 0; i < estimators.size(); ++i) {
        if (estimators[i] == e) {
            return deviations[allocation_index][i];
        }
    }
    throw InputError("estimator " + std::string(to_string(e)) + " was not part of the experiment");
}

std::vector<double> ExperimentResult::alpha_hats() const {
    std::vector<double> result;
    result.reserve(records.size());
    for (const auto& r : records) {
        result.push_back(r.alpha_hat);
    }
    return result;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InputError("tv_distance: length mismatch (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    double l1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum_a += a[i];
        sum_b += b[i];
        l1 += std::abs(a[i] - b[i]);
    }
    if (std::abs(sum_a - 1.0) > 1e-9 || std::abs(sum_b - 1.0) > 1e-9) {
        throw InputError("tv_distance: inputs must be probability vectors");
    }
    return std::min(0.5 * l1, 1.0);
}

DirectedGraph replication_graph(const ExperimentSpec& spec, std::size_t index, std::size_t* attempts) {
    const Seed seed = derive_seed(spec.master_seed, index, streams::graph);
    if (attempts != nullptr) {
        *attempts = 1;
    }
    switch (spec.model) {
        case ModelKind::directed_er: return largest_scc(gen_directed_er(spec.er, seed));
        case ModelKind::power_law: return gen_power_law(spec.power_law, seed, spec.max_retries, attempts);
        case ModelKind::external_graph: return *spec.external;
    }
    throw InputError("unknown model");
}

ExperimentResult run_dtv_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto started = std::chrono::steady_clock::now();
    const std::size_t replications = spec.replications;

    ExperimentResult result;
    result.spec = spec;
    result.estimators = spec.estimators;
    result.records.resize(replications);
    result.dtv.assign(spec.estimators.size(), std::vector<double>(replications, not_available));
    const auto options = estimation_options(spec);

    // An external graph is fixed, so its stationary distribution is shared.
    std::optional<StationaryDistribution> shared_truth;
    if (spec.model == ModelKind::external_graph && !spec.estimators.empty()) {
        shared_truth = power_method(*spec.external, spec.power_tolerance);
    }

    for_each_replication(replications, worker_count(spec), [&](std::size_t k) {
        std::size_t attempts = 1;
        const DirectedGraph owned =
            spec.model == ModelKind::external_graph ? DirectedGraph{} : replication_graph(spec, k, &attempts);
        const DirectedGraph& g = spec.model == ModelKind::external_graph ? *spec.external : owned;

        auto& record = result.records[k];
        record.vertices = g.size();
        record.directedness = g.edge_count() > 0 ? directedness(g) : 0.0;
        record.generation_attempts = attempts;

        WalkOptions walk_options;
        walk_options.burn_in = spec.burn_in;
        const auto walk = run_walk(g, spec.walk_length, derive_seed(spec.master_seed, k, streams::walk), {}, walk_options);
        record_walk_parameters(record, walk);
        if (spec.estimators.empty()) {
            return;
        }

        const StationaryDistribution truth = shared_truth ? *shared_truth : power_method(g, spec.power_tolerance);
        for (std::size_t e = 0; e < spec.estimators.size(); ++e) {
            const auto estimate = estimate_on_graph(g, walk, spec.estimators[e], options);
            result.dtv[e][k] = tv_distance(estimate.probs, truth.probs);
        }
    });

    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

ExperimentResult run_proportion_experiment(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.alloc_schemes.empty() && !(spec.model == ModelKind::external_graph && !spec.external_flags.empty())) {
        throw ParameterError("proportion experiment needs at least one allocation scheme");
    }
    const auto started = std::chrono::steady_clock::now();
    const std::size_t replications = spec.replications;
    // An external graph with its own attribute flags acts as one allocation.
    const bool external_flags = spec.model == ModelKind::external_graph && !spec.external_flags.empty();
    const std::size_t allocations = external_flags ? 1 : spec.alloc_schemes.size();

    ExperimentResult result;
    result.spec = spec;
    if (external_flags) {
        double share = 0.0;
        for (auto f : spec.external_flags) {
            share += f;
        }
        share /= static_cast<double>(spec.external_flags.size());
        result.spec.alloc_schemes = {AllocationScheme{AllocationKind::uniform, share}};
    }
    result.estimators = spec.estimators;
    result.records.resize(replications);
    result.deviations.assign(allocations, std::vector<std::vector<double>>(
                                              spec.estimators.size(), std::vector<double>(replications, not_available)));
    result.realized_p.assign(allocations, std::vector<double>(replications, not_available));
    const auto options = estimation_options(spec);

    for_each_replication(replications, worker_count(spec), [&](std::size_t k) {
        std::size_t attempts = 1;
        const DirectedGraph owned =
            spec.model == ModelKind::external_graph ? DirectedGraph{} : replication_graph(spec, k, &attempts);
        const DirectedGraph& g = spec.model == ModelKind::external_graph ? *spec.external : owned;

        auto& record = result.records[k];
        record.vertices = g.size();
        record.directedness = g.edge_count() > 0 ? directedness(g) : 0.0;
        record.generation_attempts = attempts;

        WalkOptions walk_options;
        walk_options.burn_in = spec.burn_in;
        for (std::size_t a = 0; a < allocations; ++a) {
            PropertyTable table;
            if (external_flags) {
                table.flags = spec.external_flags;
                table.realized_p = result.spec.alloc_schemes[0].target_p;
            } else {
                table = allocate(g, spec.alloc_schemes[a], derive_seed(spec.master_seed, k, streams::allocation + a));
            }
            result.realized_p[a][k] = table.realized_p;

            const auto walk = run_walk(g, spec.walk_length,
                                       derive_seed(spec.master_seed, k, streams::allocation_walk + a), table.flags,
                                       walk_options);
            if (a == 0) {
                record_walk_parameters(record, walk);
            }
            for (std::size_t e = 0; e < spec.estimators.size(); ++e) {
                const auto estimate = estimate_on_sample(walk, spec.estimators[e], options);
                result.deviations[a][e][k] = estimate_proportion(walk, estimate) - table.realized_p;
            }
        }
    });

    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace rds
