#include "rds/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rds/error.hpp"

namespace rds {

namespace {

void fill_csr(std::size_t n, const std::vector<Arc>& sorted_arcs, bool by_source,
              std::vector<std::size_t>& offsets, std::vector<VertexId>& targets) {
    offsets.assign(n + 1, 0);
    for (const auto& [from, to] : sorted_arcs) {
        ++offsets[(by_source ? from : to) + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    targets.resize(sorted_arcs.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [from, to] : sorted_arcs) {
        if (by_source) {
            targets[cursor[from]++] = to;
        } else {
            targets[cursor[to]++] = from;
        }
    }
}

}  // namespace

DirectedGraph DirectedGraph::from_arcs(std::span<const Arc> arcs, std::size_t n, BuildLog* log) {
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{0});
    return from_arcs(arcs, std::move(ids), log);
}

DirectedGraph DirectedGraph::from_arcs(std::span<const Arc> arcs, std::vector<VertexId> original_ids,
                                       BuildLog* log) {
    const std::size_t n = original_ids.size();
    BuildLog local;
    local.input_arcs = arcs.size();

    std::vector<Arc> kept;
    kept.reserve(arcs.size());
    for (const auto& arc : arcs) {
        if (arc.first >= n || arc.second >= n) {
            throw InputError("arc (" + std::to_string(arc.first) + ", " + std::to_string(arc.second) +
                             ") has an endpoint outside [0, " + std::to_string(n) + ")");
        }
        if (arc.first == arc.second) {
            ++local.self_loops_dropped;
            continue;
        }
        kept.push_back(arc);
    }
    std::sort(kept.begin(), kept.end());
    const auto last = std::unique(kept.begin(), kept.end());
    local.duplicates_collapsed = static_cast<std::size_t>(kept.end() - last);
    kept.erase(last, kept.end());

    DirectedGraph g;
    g.original_ids_ = std::move(original_ids);
    fill_csr(n, kept, true, g.out_offsets_, g.out_targets_);
    fill_csr(n, kept, false, g.in_offsets_, g.in_sources_);
    // Reverse adjacency is filled in source order, so it is sorted as well.

    g.degrees_.assign(n, DegreeTriple{});
    std::size_t reciprocated_arcs = 0;
    for (VertexId v = 0; v < n; ++v) {
        // Both lists are sorted: count the intersection by merging.
        const auto succ = g.successors(v);
        const auto pred = g.predecessors(v);
        std::uint32_t common = 0;
        auto s = succ.begin();
        auto p = pred.begin();
        while (s != succ.end() && p != pred.end()) {
            if (*s < *p) {
                ++s;
            } else if (*p < *s) {
                ++p;
            } else {
                ++common;
                ++s;
                ++p;
            }
        }
        auto& d = g.degrees_[v];
        d.un = common;
        d.out = static_cast<std::uint32_t>(succ.size()) - common;
        d.in = static_cast<std::uint32_t>(pred.size()) - common;
        reciprocated_arcs += common;
    }
    g.reciprocal_pairs_ = reciprocated_arcs / 2;
    g.unreciprocated_arcs_ = kept.size() - reciprocated_arcs;

    if (log != nullptr) {
        *log = local;
    }
    return g;
}

bool DirectedGraph::has_arc(VertexId from, VertexId to) const noexcept {
    const auto succ = successors(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<Arc> DirectedGraph::arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count());
    for (VertexId v = 0; v < size(); ++v) {
        for (VertexId w : successors(v)) {
            result.emplace_back(v, w);
        }
    }
    return result;
}

std::vector<std::vector<VertexId>> strongly_connected_components(const DirectedGraph& g) {
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    const std::size_t n = g.size();
    std::vector<std::size_t> index(n, unvisited);
    std::vector<std::size_t> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<VertexId> stack;
    std::vector<std::vector<VertexId>> components;

    struct Frame {
        VertexId vertex;
        std::size_t next_child;
    };
    std::vector<Frame> call_stack;
    std::size_t counter = 0;

    for (VertexId root = 0; root < n; ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        call_stack.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call_stack.empty()) {
            Frame& frame = call_stack.back();
            const VertexId v = frame.vertex;
            const auto succ = g.successors(v);
            if (frame.next_child < succ.size()) {
                const VertexId w = succ[frame.next_child++];
                if (index[w] == unvisited) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call_stack.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
                continue;
            }
            if (lowlink[v] == index[v]) {
                std::vector<VertexId> component;
                VertexId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            call_stack.pop_back();
            if (!call_stack.empty()) {
                const VertexId parent = call_stack.back().vertex;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

bool is_strongly_connected(const DirectedGraph& g) {
    return !g.empty() && strongly_connected_components(g).size() == 1;
}

DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const VertexId> vertices) {
    std::vector<VertexId> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());

    constexpr VertexId absent = static_cast<VertexId>(-1);
    std::vector<VertexId> new_id(g.size(), absent);
    std::vector<VertexId> originals;
    originals.reserve(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= g.size()) {
            throw InputError("induced_subgraph: vertex " + std::to_string(keep[i]) + " out of range");
        }
        new_id[keep[i]] = static_cast<VertexId>(i);
        originals.push_back(g.original_id(keep[i]));
    }

    std::vector<Arc> arcs;
    for (VertexId v : keep) {
        for (VertexId w : g.successors(v)) {
            if (new_id[w] != absent) {
                arcs.emplace_back(new_id[v], new_id[w]);
            }
        }
    }
    return DirectedGraph::from_arcs(arcs, std::move(originals));
}

DirectedGraph largest_scc(const DirectedGraph& g) {
    if (g.empty()) {
        throw InputError("largest_scc: graph is empty");
    }
    const auto components = strongly_connected_components(g);
    const std::vector<VertexId>* best = nullptr;
    VertexId best_min_original = 0;
    for (const auto& component : components) {
        VertexId min_original = g.original_id(component.front());
        for (VertexId v : component) {
            min_original = std::min(min_original, g.original_id(v));
        }
        if (best == nullptr || component.size() > best->size() ||
            (component.size() == best->size() && min_original < best_min_original)) {
            best = &component;
            best_min_original = min_original;
        }
    }
    return induced_subgraph(g, *best);
}

double directedness(const DirectedGraph& g) {
    const std::size_t edges = g.edge_count();
    if (edges == 0) {
        throw UndefinedMeasureError("directedness is undefined on a graph without edges");
    }
    return static_cast<double>(g.unreciprocated_arcs()) / static_cast<double>(edges);
}

}  // namespace rds
