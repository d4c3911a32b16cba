#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

/// What a respondent reports about their degree.
enum class DegreeRegime {
    full,      // (d_un, d_in, d_out)
    out_only,  // d_un + d_out only
};

struct Visit {
    VertexId vertex = 0;
    std::uint32_t out_degree = 0;
    DegreeTriple degree;  // meaningful only in the full regime
    std::uint8_t flag = 0;
};

/// Ordered record of one random walk.
struct WalkSample {
    DegreeRegime regime = DegreeRegime::full;
    std::vector<Visit> visits;
    std::size_t revisits = 0;  // immediate two-step returns, see count_revisits
    VertexId start = 0;
    Seed seed = 0;

    std::size_t size() const noexcept { return visits.size(); }
};

struct WalkOptions {
    std::optional<VertexId> start;
    std::size_t burn_in = 0;  // steps discarded before recording
    DegreeRegime regime = DegreeRegime::full;
};

/// Simple random walk with `length` recorded visits: each step picks one of
/// the current vertex's out-neighbours uniformly. `flags` (per vertex, may be
/// empty) supplies the property recorded at every visit.
WalkSample run_walk(const DirectedGraph& g, std::size_t length, Seed seed,
                    std::span<const std::uint8_t> flags = {}, const WalkOptions& options = {});

/// Number of t in [2, s) with visits[t] == visits[t-2].
std::size_t count_revisits(std::span<const Visit> visits);

/// Sum of 1 / out_degree over all visits but the last.
double inverse_outdegree_sum(const WalkSample& w);

/// Drops degree information not observable under `regime`.
WalkSample with_regime(WalkSample w, DegreeRegime regime);

}  // namespace rds
