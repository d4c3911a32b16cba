#pragma once

#include <cstdint>
#include <vector>

#include "rds/graph.hpp"
#include "rds/rng.hpp"

namespace rds::test {

inline DirectedGraph make_graph(std::vector<Arc> arcs, std::size_t n) {
    return DirectedGraph::from_arcs(arcs, n);
}

inline DirectedGraph directed_cycle(std::size_t n) {
    std::vector<Arc> arcs;
    for (VertexId v = 0; v < n; ++v) {
        arcs.emplace_back(v, static_cast<VertexId>((v + 1) % n));
    }
    return make_graph(arcs, n);
}

/// Both directions of every listed edge.
inline DirectedGraph undirected(const std::vector<Arc>& edges, std::size_t n) {
    std::vector<Arc> arcs;
    for (auto [a, b] : edges) {
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    return make_graph(arcs, n);
}

/// Random digraph: each ordered pair is an arc with probability p.
inline DirectedGraph random_digraph(std::size_t n, double p, Rng& rng) {
    std::vector<Arc> arcs;
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = 0; b < n; ++b) {
            if (a != b && uniform01(rng) < p) {
                arcs.emplace_back(a, b);
            }
        }
    }
    return make_graph(arcs, n);
}

/// Random strongly connected aperiodic digraph: a Hamiltonian cycle over a
/// random permutation, a chord closing a cycle of length n-1, and random
/// extra arcs, some of them reciprocated.
inline DirectedGraph random_strong_digraph(std::size_t n, double extra, Rng& rng) {
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) {
        order[v] = v;
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(rng, i)]);
    }
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < n; ++i) {
        arcs.emplace_back(order[i], order[(i + 1) % n]);
    }
    if (n >= 3) {
        arcs.emplace_back(order[n - 1], order[1]);
    }
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = 0; b < n; ++b) {
            if (a != b && uniform01(rng) < extra) {
                arcs.emplace_back(a, b);
                if (uniform01(rng) < 0.5) {
                    arcs.emplace_back(b, a);
                }
            }
        }
    }
    return make_graph(arcs, n);
}

/// Transitive closure by Floyd-Warshall; reach[a][b] includes a == b.
inline std::vector<std::vector<bool>> reachability(const DirectedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (VertexId v = 0; v < n; ++v) {
        reach[v][v] = true;
        for (VertexId w : g.successors(v)) {
            reach[v][w] = true;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[k][j]) {
                    reach[i][j] = true;
                }
            }
        }
    }
    return reach;
}

}  // namespace rds::test
