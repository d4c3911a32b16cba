#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds {

/// Which degree functional the inclusion probability is proportional to.
enum class AllocationKind {
    in_deg,        // d_un + d_in
    out_deg,       // d_un + d_out
    undirected,    // d_un
    in_directed,   // d_in
    out_directed,  // d_out
    directed,      // d_in + d_out
    uniform,
};

inline constexpr AllocationKind degree_allocations[] = {
    AllocationKind::in_deg,      AllocationKind::out_deg,      AllocationKind::undirected,
    AllocationKind::in_directed, AllocationKind::out_directed, AllocationKind::directed};

std::string_view to_string(AllocationKind kind);
std::optional<AllocationKind> parse_allocation(std::string_view name);

struct AllocationScheme {
    AllocationKind kind = AllocationKind::uniform;
    double target_p = 0.5;

    void validate() const;
};

struct PropertyTable {
    std::vector<std::uint8_t> flags;
    double realized_p = 0.0;
};

/// g(d) for the given scheme.
double allocation_score(AllocationKind kind, const DegreeTriple& d);

/// Per-vertex inclusion probabilities min(1, c * g_i) with c solved so they
/// sum to target_p * n. Throws AllocationError when the target exceeds the
/// number of vertices with g_i > 0.
std::vector<double> inclusion_probabilities(const DirectedGraph& g, const AllocationScheme& scheme);

/// Independent Bernoulli draw per vertex from inclusion_probabilities.
PropertyTable allocate(const DirectedGraph& g, const AllocationScheme& scheme, Seed seed);

}  // namespace rds
