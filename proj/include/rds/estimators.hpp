#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rds/graph.hpp"
#include "rds/walk.hpp"

namespace rds {

/// Selection-probability estimators.
enum class Estimator {
    uni,               // 1/N
    outdeg,            // proportional to d_un + d_out (Volz-Heckathorn weights)
    indeg,             // proportional to d_un + d_in
    ren_fd,            // renewal estimator from full degrees
    ren_known_params,  // renewal estimator from out-degrees, true (alpha, lambda)
    ren,               // renewal estimator from out-degrees, estimated (alpha, lambda)
};

inline constexpr Estimator all_estimators[] = {Estimator::ren_fd, Estimator::indeg,
                                               Estimator::ren,    Estimator::ren_known_params,
                                               Estimator::outdeg, Estimator::uni};

std::string_view to_string(Estimator e);
std::optional<Estimator> parse_estimator(std::string_view name);

enum class NormalizationDomain { all_vertices, sample };

struct SelectionProbEstimate {
    Estimator variant = Estimator::uni;
    NormalizationDomain domain = NormalizationDomain::all_vertices;
    /// Sample domain only: distinct sampled vertex ids in ascending order,
    /// parallel to `probs`. Empty for the all-vertices domain, where
    /// probs[v] belongs to vertex v.
    std::vector<VertexId> vertices;
    std::vector<double> probs;

    std::optional<double> find(VertexId v) const;
    /// Throws CoverageError when `v` has no probability.
    double at(VertexId v) const;
};

enum class ParamProvenance { true_model, estimated };

/// Directed Erdos-Renyi parameters, either the generating values or
/// estimates from a walk.
struct NetworkParams {
    double alpha = 0.0;
    double lambda = 0.0;
    ParamProvenance provenance = ParamProvenance::true_model;

    void validate() const;
};

struct DegreeMoments {
    double e_d_un = 0.0;
    double e_d_in = 0.0;
    double e_d_out = 0.0;
    double e_inv_sizebiased_out = 1.0;

    /// Poisson moments of the directed ER model: (1-a)l, al/2, al/2.
    static DegreeMoments from_er(double alpha, double lambda);
};

struct FractionalDegree {
    double un = 0.0;
    double in = 0.0;
    double out = 0.0;
};

/// How E[1 / (size-biased d_un + d_out)] is estimated from the walk.
enum class EInvMethod {
    mean_of_inverse,  // mean of 1/out-degree over visits (default)
    inverse_of_mean,  // 1 / mean out-degree over visits
};

SelectionProbEstimate pi_uniform(std::size_t n);
SelectionProbEstimate pi_outdeg(std::span<const std::uint32_t> out_degrees);
SelectionProbEstimate pi_indeg(std::span<const std::uint32_t> in_degrees);

/// Probability of returning to a vertex two steps after leaving it.
double return_probability(const DegreeTriple& d, double e_inv);

/// In-degree-proportional probability of hitting a vertex at a given step.
double visit_probability(const DegreeTriple& d, std::size_t n, double e_d_un, double e_d_in);

/// Renewal weight (d_un + d_in) / (1 - d_un / (d_un + d_out) * e_inv), i.e.
/// the truncated renewal-reward ratio up to a constant.
double renewal_weight(const DegreeTriple& d, double e_inv);

SelectionProbEstimate pi_renewal_full(std::span<const DegreeTriple> degrees, double e_inv);

double estimate_e_inv(const WalkSample& w, EInvMethod method = EInvMethod::mean_of_inverse);

/// Splits an observed out-degree into expected (un, in, out) parts.
FractionalDegree decompose_degrees(std::uint32_t out_degree, const DegreeMoments& m);

/// (m - sigma) / (m/2 - sigma) without clamping.
double alpha_moment_raw(double revisits, double inverse_sum);

/// Moment estimator of the directedness from revisits, clamped into [0, 1].
double estimate_alpha(const WalkSample& w);

/// (mean_out + alpha_hat - 1) / (1 - alpha_hat / 2), floored at zero.
double estimate_lambda(double mean_out, double alpha_hat);

double mean_out_degree(const WalkSample& w);

NetworkParams estimate_network_params(const WalkSample& w);

/// ((1 - a) / (1 - a/2)) * out_degree + a * l / 2
double renewal_outdeg_weight(std::uint32_t out_degree, const NetworkParams& params);

/// Out-degree renewal estimator over all vertices.
SelectionProbEstimate pi_renewal_outdeg(std::span<const std::uint32_t> out_degrees,
                                        const NetworkParams& params);

/// Out-degree renewal estimator over the distinct sampled vertices.
SelectionProbEstimate pi_renewal_outdeg(const WalkSample& w, const NetworkParams& params);

/// Ratio estimator of the property share: sum over flagged visits of 1/pi
/// divided by the sum over all visits of 1/pi. Repeat visits count again.
double estimate_proportion(const WalkSample& w, const SelectionProbEstimate& pi);

struct EstimationOptions {
    EInvMethod e_inv_method = EInvMethod::mean_of_inverse;
    /// Required for Estimator::ren_known_params.
    std::optional<NetworkParams> known_params;
};

/// Builds `variant` over every vertex of `g` using the graph's true degrees;
/// walk-derived quantities (e_inv, alpha_hat, lambda_hat) come from `w`.
SelectionProbEstimate estimate_on_graph(const DirectedGraph& g, const WalkSample& w, Estimator variant,
                                        const EstimationOptions& options = {});

/// Builds `variant` over the distinct sampled vertices using only what the
/// walk observed. Defined up to scale, which the ratio estimator ignores.
SelectionProbEstimate estimate_on_sample(const WalkSample& w, Estimator variant,
                                         const EstimationOptions& options = {});

std::vector<std::uint32_t> out_degrees(const DirectedGraph& g);
std::vector<std::uint32_t> in_degrees(const DirectedGraph& g);

}  // namespace rds
