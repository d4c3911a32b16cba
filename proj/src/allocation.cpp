#include "rds/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rds/error.hpp"

namespace rds {

std::string_view to_string(AllocationKind kind) {
    switch (kind) {
        case AllocationKind::in_deg: return "in_deg";
        case AllocationKind::out_deg: return "out_deg";
        case AllocationKind::undirected: return "undirected";
        case AllocationKind::in_directed: return "in_directed";
        case AllocationKind::out_directed: return "out_directed";
        case AllocationKind::directed: return "directed";
        case AllocationKind::uniform: return "uniform";
    }
    return "?";
}

std::optional<AllocationKind> parse_allocation(std::string_view name) {
    for (AllocationKind kind : degree_allocations) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    if (name == "uniform") {
        return AllocationKind::uniform;
    }
    return std::nullopt;
}

void AllocationScheme::validate() const {
    if (!(target_p > 0.0 && target_p < 1.0)) {
        throw ParameterError("allocation target p must lie in (0, 1), got " + std::to_string(target_p));
    }
}

double allocation_score(AllocationKind kind, const DegreeTriple& d) {
    switch (kind) {
        case AllocationKind::in_deg: return d.un + d.in;
        case AllocationKind::out_deg: return d.un + d.out;
        case AllocationKind::undirected: return d.un;
        case AllocationKind::in_directed: return d.in;
        case AllocationKind::out_directed: return d.out;
        case AllocationKind::directed: return d.in + d.out;
        case AllocationKind::uniform: return 1.0;
    }
    return 0.0;
}

std::vector<double> inclusion_probabilities(const DirectedGraph& g, const AllocationScheme& scheme) {
    scheme.validate();
    const std::size_t n = g.size();
    if (n == 0) {
        throw InputError("cannot allocate a property on an empty graph");
    }
    const double target = scheme.target_p * static_cast<double>(n);
    if (scheme.kind == AllocationKind::uniform) {
        return std::vector<double>(n, scheme.target_p);
    }

    std::vector<double> score(n);
    std::size_t positive = 0;
    double min_positive = 0.0;
    double total = 0.0;
    for (VertexId v = 0; v < n; ++v) {
        score[v] = allocation_score(scheme.kind, g.degree(v));
        if (score[v] > 0.0) {
            min_positive = positive == 0 ? score[v] : std::min(min_positive, score[v]);
            ++positive;
            total += score[v];
        }
    }
    if (target > static_cast<double>(positive)) {
        throw AllocationError("allocation " + std::string(to_string(scheme.kind)) + " cannot reach p=" +
                              std::to_string(scheme.target_p) + ": only " + std::to_string(positive) + " of " +
                              std::to_string(n) + " vertices have a positive score");
    }

    auto expected = [&](double c) {
        double sum = 0.0;
        for (double s : score) {
            sum += std::min(1.0, c * s);
        }
        return sum;
    };

    // expected(c) is non-decreasing; at c = 1/min_positive every scored
    // vertex is capped at 1, so the root lies in [0, hi].
    double lo = 0.0;
    double hi = 1.0 / min_positive;
    double c = target / total;
    if (expected(c) < target) {
        lo = c;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (expected(mid) < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        c = hi;
    }

    std::vector<double> prob(n);
    for (VertexId v = 0; v < n; ++v) {
        prob[v] = std::min(1.0, c * score[v]);
    }
    return prob;
}

PropertyTable allocate(const DirectedGraph& g, const AllocationScheme& scheme, Seed seed) {
    const auto prob = inclusion_probabilities(g, scheme);
    Rng rng = make_rng(seed);
    PropertyTable table;
    table.flags.resize(prob.size());
    std::size_t count = 0;
    for (std::size_t v = 0; v < prob.size(); ++v) {
        table.flags[v] = uniform01(rng) < prob[v] ? 1 : 0;
        count += table.flags[v];
    }
    table.realized_p = static_cast<double>(count) / static_cast<double>(prob.size());
    return table;
}

}  // namespace rds
