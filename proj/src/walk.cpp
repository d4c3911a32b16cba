#include "rds/walk.hpp"

#include <string>

#include "rds/error.hpp"

namespace rds {

WalkSample run_walk(const DirectedGraph& g, std::size_t length, Seed seed,
                    std::span<const std::uint8_t> flags, const WalkOptions& options) {
    if (length < 2) {
        throw ParameterError("walk length must be at least 2");
    }
    if (g.empty()) {
        throw InputError("run_walk: graph is empty");
    }
    if (!flags.empty() && flags.size() != g.size()) {
        throw InputError("property table size does not match the graph");
    }

    Rng rng = make_rng(seed);
    VertexId current;
    if (options.start) {
        if (*options.start >= g.size()) {
            throw InputError("start vertex " + std::to_string(*options.start) + " out of range");
        }
        current = *options.start;
    } else {
        current = static_cast<VertexId>(uniform_below(rng, g.size()));
    }

    auto step = [&](VertexId v) {
        const auto succ = g.successors(v);
        if (succ.empty()) {
            throw StructuralError("walk reached vertex " + std::to_string(g.original_id(v)) +
                                  " with no outgoing arcs");
        }
        return succ[uniform_below(rng, succ.size())];
    };

    for (std::size_t i = 0; i < options.burn_in; ++i) {
        current = step(current);
    }

    WalkSample sample;
    sample.regime = options.regime;
    sample.seed = seed;
    sample.start = current;
    sample.visits.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
        if (t > 0) {
            current = step(current);
        }
        Visit visit;
        visit.vertex = current;
        visit.out_degree = g.degree(current).out_degree();
        if (options.regime == DegreeRegime::full) {
            visit.degree = g.degree(current);
        }
        visit.flag = flags.empty() ? 0 : flags[current];
        sample.visits.push_back(visit);
    }
    sample.revisits = count_revisits(sample.visits);
    return sample;
}

std::size_t count_revisits(std::span<const Visit> visits) {
    std::size_t count = 0;
    for (std::size_t t = 2; t < visits.size(); ++t) {
        if (visits[t].vertex == visits[t - 2].vertex) {
            ++count;
        }
    }
    return count;
}

double inverse_outdegree_sum(const WalkSample& w) {
    double sum = 0.0;
    for (std::size_t t = 0; t + 1 < w.visits.size(); ++t) {
        sum += 1.0 / static_cast<double>(w.visits[t].out_degree);
    }
    return sum;
}

WalkSample with_regime(WalkSample w, DegreeRegime regime) {
    if (regime == DegreeRegime::out_only) {
        for (auto& visit : w.visits) {
            visit.degree = DegreeTriple{};
        }
    } else if (w.regime == DegreeRegime::out_only) {
        throw InputError("cannot recover full degrees from an out-degree-only sample");
    }
    w.regime = regime;
    return w;
}

}  // namespace rds
