#include "rds/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "rds/diagnostics.hpp"
#include "rds/error.hpp"

namespace rds {

namespace {

SelectionProbEstimate normalized(Estimator variant, NormalizationDomain domain,
                                 std::vector<VertexId> vertices, std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw NumericDomainError(std::string(to_string(variant)) +
                                     ": every selection weight must be positive and finite");
        }
        total += w;
    }
    for (double& w : weights) {
        w /= total;
    }
    return {variant, domain, std::move(vertices), std::move(weights)};
}

std::vector<double> proportional(std::span<const std::uint32_t> degrees, const char* what) {
    if (degrees.empty()) {
        throw InputError(std::string(what) + ": no vertices");
    }
    std::vector<double> w(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] == 0) {
            throw StructuralError(std::string(what) + ": vertex " + std::to_string(i) + " has degree zero");
        }
        w[i] = static_cast<double>(degrees[i]);
    }
    return w;
}

void check_e_inv(double e_inv) {
    if (!(e_inv > 0.0 && e_inv <= 1.0)) {
        throw ParameterError("E[1/out-degree] must lie in (0, 1], got " + std::to_string(e_inv));
    }
}

// First visit of each distinct vertex, in ascending vertex order.
std::vector<const Visit*> distinct_visits(const WalkSample& w) {
    std::unordered_map<VertexId, const Visit*> seen;
    for (const auto& visit : w.visits) {
        seen.emplace(visit.vertex, &visit);
    }
    std::vector<const Visit*> result;
    result.reserve(seen.size());
    for (const auto& [id, visit] : seen) {
        result.push_back(visit);
    }
    std::sort(result.begin(), result.end(), [](const Visit* a, const Visit* b) { return a->vertex < b->vertex; });
    return result;
}

void require_full(const WalkSample& w, Estimator variant) {
    if (w.regime != DegreeRegime::full) {
        throw InputError(std::string(to_string(variant)) + " needs full degrees, but the sample is out-degree only");
    }
}

void require_nonempty(const WalkSample& w) {
    if (w.visits.empty()) {
        throw InputError("walk sample is empty");
    }
}

}  // namespace

std::string_view to_string(Estimator e) {
    switch (e) {
        case Estimator::uni: return "uni";
        case Estimator::outdeg: return "outdeg";
        case Estimator::indeg: return "indeg";
        case Estimator::ren_fd: return "ren_fd";
        case Estimator::ren_known_params: return "ren_al";
        case Estimator::ren: return "ren";
    }
    return "?";
}

std::optional<Estimator> parse_estimator(std::string_view name) {
    for (Estimator e : all_estimators) {
        if (to_string(e) == name) {
            return e;
        }
    }
    if (name == "ren_known_params") {
        return Estimator::ren_known_params;
    }
    return std::nullopt;
}

std::optional<double> SelectionProbEstimate::find(VertexId v) const {
    if (domain == NormalizationDomain::all_vertices) {
        if (v < probs.size()) {
            return probs[v];
        }
        return std::nullopt;
    }
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) {
        return std::nullopt;
    }
    return probs[static_cast<std::size_t>(it - vertices.begin())];
}

double SelectionProbEstimate::at(VertexId v) const {
    if (auto p = find(v)) {
        return *p;
    }
    throw CoverageError("no selection probability for vertex " + std::to_string(v));
}

void NetworkParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ParameterError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ParameterError("lambda must be non-negative, got " + std::to_string(lambda));
    }
}

DegreeMoments DegreeMoments::from_er(double alpha, double lambda) {
    DegreeMoments m;
    m.e_d_un = (1.0 - alpha) * lambda;
    m.e_d_in = alpha * lambda / 2.0;
    m.e_d_out = alpha * lambda / 2.0;
    return m;
}

SelectionProbEstimate pi_uniform(std::size_t n) {
    if (n == 0) {
        throw InputError("pi_uniform: n must be at least 1");
    }
    return {Estimator::uni, NormalizationDomain::all_vertices, {},
            std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

SelectionProbEstimate pi_outdeg(std::span<const std::uint32_t> out_degrees) {
    return normalized(Estimator::outdeg, NormalizationDomain::all_vertices, {},
                      proportional(out_degrees, "pi_outdeg"));
}

SelectionProbEstimate pi_indeg(std::span<const std::uint32_t> in_degrees) {
    return normalized(Estimator::indeg, NormalizationDomain::all_vertices, {},
                      proportional(in_degrees, "pi_indeg"));
}

double return_probability(const DegreeTriple& d, double e_inv) {
    const auto out = d.out_degree();
    if (out == 0) {
        throw StructuralError("return probability needs a positive out-degree");
    }
    return static_cast<double>(d.un) / static_cast<double>(out) * e_inv;
}

double visit_probability(const DegreeTriple& d, std::size_t n, double e_d_un, double e_d_in) {
    const double scale = static_cast<double>(n) * (e_d_un + e_d_in);
    if (!(scale > 0.0)) {
        throw ParameterError("visit probability needs n * (E[d_un] + E[d_in]) > 0");
    }
    return static_cast<double>(d.in_degree()) / scale;
}

double renewal_weight(const DegreeTriple& d, double e_inv) {
    const double denominator = 1.0 - return_probability(d, e_inv);
    if (!(denominator > 0.0)) {
        throw NumericDomainError("renewal denominator is not positive (d_un=" + std::to_string(d.un) +
                                 ", d_out=" + std::to_string(d.out) + ", e_inv=" + std::to_string(e_inv) + ")");
    }
    return static_cast<double>(d.in_degree()) / denominator;
}

SelectionProbEstimate pi_renewal_full(std::span<const DegreeTriple> degrees, double e_inv) {
    check_e_inv(e_inv);
    if (degrees.empty()) {
        throw InputError("pi_renewal_full: no vertices");
    }
    std::vector<double> w(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        w[i] = renewal_weight(degrees[i], e_inv);
    }
    return normalized(Estimator::ren_fd, NormalizationDomain::all_vertices, {}, std::move(w));
}

double estimate_e_inv(const WalkSample& w, EInvMethod method) {
    require_nonempty(w);
    double sum = 0.0;
    for (const auto& visit : w.visits) {
        if (visit.out_degree == 0) {
            throw StructuralError("sampled vertex has out-degree zero");
        }
        sum += method == EInvMethod::mean_of_inverse ? 1.0 / static_cast<double>(visit.out_degree)
                                                     : static_cast<double>(visit.out_degree);
    }
    const double mean = sum / static_cast<double>(w.visits.size());
    return method == EInvMethod::mean_of_inverse ? mean : 1.0 / mean;
}

FractionalDegree decompose_degrees(std::uint32_t out_degree, const DegreeMoments& m) {
    if (out_degree == 0) {
        throw ParameterError("decompose_degrees: out-degree must be at least 1");
    }
    const double split = m.e_d_un + m.e_d_out;
    if (!(split > 0.0) || m.e_d_un < 0.0 || m.e_d_out < 0.0 || m.e_d_in < 0.0) {
        throw ParameterError("decompose_degrees: degenerate degree moments");
    }
    const double d = static_cast<double>(out_degree);
    return {d * m.e_d_un / split, m.e_d_in, d * m.e_d_out / split};
}

double alpha_moment_raw(double revisits, double inverse_sum) {
    const double denominator = revisits / 2.0 - inverse_sum;
    if (denominator == 0.0) {
        throw DegenerateEstimateError("alpha estimator denominator is zero (m=" + std::to_string(revisits) +
                                          ", sum=" + std::to_string(inverse_sum) + ")",
                                      revisits, inverse_sum);
    }
    return (revisits - inverse_sum) / denominator;
}

double estimate_alpha(const WalkSample& w) {
    if (w.visits.size() < 3) {
        throw ParameterError("estimate_alpha needs a walk of length at least 3");
    }
    const auto m = static_cast<double>(w.revisits);
    const double sigma = inverse_outdegree_sum(w);
    const double raw = alpha_moment_raw(m, sigma);
    if (m > 2.0 * sigma) {
        // Beyond the pole the raw value exceeds 1, but more revisits than the
        // undirected expectation point towards alpha = 0.
        warn("revisit count " + std::to_string(w.revisits) + " exceeds twice the inverse out-degree sum " +
             std::to_string(sigma) + "; alpha_hat set to 0");
        return 0.0;
    }
    return std::clamp(raw, 0.0, 1.0);
}

double estimate_lambda(double mean_out, double alpha_hat) {
    if (!(mean_out >= 0.0)) {
        throw ParameterError("mean out-degree must be non-negative");
    }
    if (!(alpha_hat >= 0.0 && alpha_hat <= 1.0)) {
        throw ParameterError("alpha_hat must lie in [0, 1]");
    }
    const double raw = (mean_out + alpha_hat - 1.0) / (1.0 - alpha_hat / 2.0);
    if (raw < 0.0) {
        warn("lambda_hat " + std::to_string(raw) + " is negative; floored at 0");
        return 0.0;
    }
    return raw;
}

double mean_out_degree(const WalkSample& w) {
    require_nonempty(w);
    double sum = 0.0;
    for (const auto& visit : w.visits) {
        sum += static_cast<double>(visit.out_degree);
    }
    return sum / static_cast<double>(w.visits.size());
}

NetworkParams estimate_network_params(const WalkSample& w) {
    const double alpha = estimate_alpha(w);
    return {alpha, estimate_lambda(mean_out_degree(w), alpha), ParamProvenance::estimated};
}

double renewal_outdeg_weight(std::uint32_t out_degree, const NetworkParams& params) {
    const double a = params.alpha;
    return (1.0 - a) / (1.0 - a / 2.0) * static_cast<double>(out_degree) + a * params.lambda / 2.0;
}

SelectionProbEstimate pi_renewal_outdeg(std::span<const std::uint32_t> out_degrees, const NetworkParams& params) {
    params.validate();
    if (out_degrees.empty()) {
        throw InputError("pi_renewal_outdeg: no vertices");
    }
    std::vector<double> w(out_degrees.size());
    for (std::size_t i = 0; i < out_degrees.size(); ++i) {
        w[i] = renewal_outdeg_weight(out_degrees[i], params);
    }
    const auto variant =
        params.provenance == ParamProvenance::true_model ? Estimator::ren_known_params : Estimator::ren;
    return normalized(variant, NormalizationDomain::all_vertices, {}, std::move(w));
}

SelectionProbEstimate pi_renewal_outdeg(const WalkSample& w, const NetworkParams& params) {
    params.validate();
    require_nonempty(w);
    const auto visits = distinct_visits(w);
    std::vector<VertexId> ids;
    std::vector<double> weights;
    for (const Visit* v : visits) {
        ids.push_back(v->vertex);
        weights.push_back(renewal_outdeg_weight(v->out_degree, params));
    }
    const auto variant =
        params.provenance == ParamProvenance::true_model ? Estimator::ren_known_params : Estimator::ren;
    return normalized(variant, NormalizationDomain::sample, std::move(ids), std::move(weights));
}

double estimate_proportion(const WalkSample& w, const SelectionProbEstimate& pi) {
    require_nonempty(w);
    double flagged = 0.0;
    double total = 0.0;
    for (const auto& visit : w.visits) {
        const double p = pi.at(visit.vertex);
        if (!(p > 0.0)) {
            throw NumericDomainError("selection probability of a sampled vertex is not positive");
        }
        const double weight = 1.0 / p;
        total += weight;
        if (visit.flag != 0) {
            flagged += weight;
        }
    }
    return flagged / total;
}

namespace {

const NetworkParams& known(const EstimationOptions& options) {
    if (!options.known_params) {
        throw ParameterError("ren_al needs the true model parameters (alpha, lambda)");
    }
    return *options.known_params;
}

NetworkParams as_true(NetworkParams p) {
    p.provenance = ParamProvenance::true_model;
    return p;
}

}  // namespace

SelectionProbEstimate estimate_on_graph(const DirectedGraph& g, const WalkSample& w, Estimator variant,
                                        const EstimationOptions& options) {
    switch (variant) {
        case Estimator::uni: return pi_uniform(g.size());
        case Estimator::outdeg: return pi_outdeg(out_degrees(g));
        case Estimator::indeg: return pi_indeg(in_degrees(g));
        case Estimator::ren_fd: return pi_renewal_full(g.degrees(), estimate_e_inv(w, options.e_inv_method));
        case Estimator::ren_known_params: return pi_renewal_outdeg(out_degrees(g), as_true(known(options)));
        case Estimator::ren: return pi_renewal_outdeg(out_degrees(g), estimate_network_params(w));
    }
    throw InputError("unknown estimator");
}

SelectionProbEstimate estimate_on_sample(const WalkSample& w, Estimator variant, const EstimationOptions& options) {
    require_nonempty(w);
    if (variant == Estimator::ren_known_params) {
        return pi_renewal_outdeg(w, as_true(known(options)));
    }
    if (variant == Estimator::ren) {
        return pi_renewal_outdeg(w, estimate_network_params(w));
    }

    const auto visits = distinct_visits(w);
    std::vector<VertexId> ids;
    std::vector<double> weights;
    ids.reserve(visits.size());
    weights.reserve(visits.size());
    double e_inv = 0.0;
    if (variant == Estimator::ren_fd) {
        require_full(w, variant);
        e_inv = estimate_e_inv(w, options.e_inv_method);
        check_e_inv(e_inv);
    } else if (variant == Estimator::indeg) {
        require_full(w, variant);
    }
    for (const Visit* v : visits) {
        ids.push_back(v->vertex);
        switch (variant) {
            case Estimator::uni: weights.push_back(1.0); break;
            case Estimator::outdeg: weights.push_back(static_cast<double>(v->out_degree)); break;
            case Estimator::indeg: weights.push_back(static_cast<double>(v->degree.in_degree())); break;
            case Estimator::ren_fd: weights.push_back(renewal_weight(v->degree, e_inv)); break;
            default: break;
        }
    }
    return normalized(variant, NormalizationDomain::sample, std::move(ids), std::move(weights));
}

std::vector<std::uint32_t> out_degrees(const DirectedGraph& g) {
    std::vector<std::uint32_t> d(g.size());
    for (VertexId v = 0; v < g.size(); ++v) {
        d[v] = g.degree(v).out_degree();
    }
    return d;
}

std::vector<std::uint32_t> in_degrees(const DirectedGraph& g) {
    std::vector<std::uint32_t> d(g.size());
    for (VertexId v = 0; v < g.size(); ++v) {
        d[v] = g.degree(v).in_degree();
    }
    return d;
}

}  // namespace rds
