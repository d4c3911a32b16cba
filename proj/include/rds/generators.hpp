#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

/// Directed Erdos-Renyi model: every unordered pair carries an edge with
/// probability lambda / (n - 1); an edge is reciprocal with probability
/// 1 - alpha and otherwise a single arc with a fair-coin direction.
struct ErParams {
    std::size_t n = 0;
    double alpha = 0.0;
    double lambda = 0.0;

    void validate() const;
};

/// Static-model power-law generator with undirected and directed layers.
/// Vertex weights are rank^(-tau); the degree exponent is gamma = 1 + 1/tau.
struct PowerLawParams {
    std::size_t n = 0;
    double e_d_un = 0.0;   // expected undirected degree
    double e_d_dir = 0.0;  // expected in-directed plus out-directed degree
    double tau_un = 0.5;
    double tau_in = 0.5;
    double tau_out = 0.5;

    void validate() const;

    std::size_t undirected_edge_target() const;
    std::size_t directed_arc_target() const;

    /// Fraction of non-reciprocal edges the parameters aim for.
    double target_alpha() const;
    /// Expected total degree (un + in + out).
    double target_lambda() const { return e_d_un + e_d_dir; }
};

constexpr std::size_t default_max_retries = 100;

constexpr double gamma_from_tau(double tau) { return 1.0 + 1.0 / tau; }
constexpr double tau_from_gamma(double gamma) { return 1.0 / (gamma - 1.0); }

DirectedGraph gen_directed_er(const ErParams& p, Seed seed);

/// Regenerates until the superposed graph is strongly connected; throws
/// GenerationError once `max_retries` attempts have failed. `attempts_out`
/// receives the number of attempts used.
DirectedGraph gen_power_law(const PowerLawParams& p, Seed seed,
                            std::size_t max_retries = default_max_retries,
                            std::size_t* attempts_out = nullptr);

/// One unconditioned draw of the power-law model (no connectivity check).
DirectedGraph gen_power_law_once(const PowerLawParams& p, Seed seed);

/// Draws indices with probability proportional to fixed non-negative weights
/// by binary search on the prefix sums.
class WeightedIndexSampler {
public:
    explicit WeightedIndexSampler(std::span<const double> weights);

    std::size_t operator()(Rng& rng) const;
    std::size_t size() const noexcept { return cumulative_.size(); }

private:
    std::vector<double> cumulative_;
};

}  // namespace rds
