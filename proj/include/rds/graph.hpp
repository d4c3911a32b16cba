#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rds {

using VertexId = std::uint32_t;
using Arc = std::pair<VertexId, VertexId>;

/// Per-vertex degree split by reciprocity.
///
/// `un` counts reciprocated neighbours (arc in both directions), `in` counts
/// neighbours with only an incoming arc, `out` counts neighbours with only an
/// outgoing arc. The walker leaves a vertex along its `un + out` outgoing arcs.
struct DegreeTriple {
    std::uint32_t un = 0;
    std::uint32_t in = 0;
    std::uint32_t out = 0;

    constexpr std::uint32_t out_degree() const noexcept { return un + out; }
    constexpr std::uint32_t in_degree() const noexcept { return un + in; }

    friend constexpr bool operator==(const DegreeTriple&, const DegreeTriple&) = default;
};

/// Counts reported by the graph builder.
struct BuildLog {
    std::size_t input_arcs = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_collapsed = 0;
};

/// Immutable simple directed graph in compressed sparse row form, with both
/// forward and reverse adjacency. Vertex ids are dense in [0, size()).
/// `original_id(v)` maps back to the id the vertex had in the input it was
/// built from (edge-list ids, or ids of the graph an SCC was extracted from).
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds a graph on `n` vertices. Self-loops are dropped and duplicate
    /// arcs collapsed; an endpoint >= n raises InputError.
    static DirectedGraph from_arcs(std::span<const Arc> arcs, std::size_t n,
                                   BuildLog* log = nullptr);

    /// As above, but vertex v carries `original_ids[v]` as its original id.
    static DirectedGraph from_arcs(std::span<const Arc> arcs, std::vector<VertexId> original_ids,
                                   BuildLog* log = nullptr);

    std::size_t size() const noexcept { return degrees_.size(); }
    bool empty() const noexcept { return degrees_.empty(); }

    std::span<const VertexId> successors(VertexId v) const noexcept {
        return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
    }
    std::span<const VertexId> predecessors(VertexId v) const noexcept {
        return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
    }
    bool has_arc(VertexId from, VertexId to) const noexcept;

    const DegreeTriple& degree(VertexId v) const noexcept { return degrees_[v]; }
    std::span<const DegreeTriple> degrees() const noexcept { return degrees_; }

    VertexId original_id(VertexId v) const noexcept { return original_ids_[v]; }
    std::span<const VertexId> original_ids() const noexcept { return original_ids_; }

    std::size_t arc_count() const noexcept { return out_targets_.size(); }
    std::size_t reciprocal_pairs() const noexcept { return reciprocal_pairs_; }
    std::size_t unreciprocated_arcs() const noexcept { return unreciprocated_arcs_; }
    /// Edges with a reciprocal pair counted once.
    std::size_t edge_count() const noexcept { return reciprocal_pairs_ + unreciprocated_arcs_; }

    /// All arcs in (source, target) lexicographic order.
    std::vector<Arc> arcs() const;

private:
    std::vector<std::size_t> out_offsets_{0};
    std::vector<VertexId> out_targets_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<VertexId> in_sources_;
    std::vector<DegreeTriple> degrees_;
    std::vector<VertexId> original_ids_;
    std::size_t reciprocal_pairs_ = 0;
    std::size_t unreciprocated_arcs_ = 0;
};

/// Strongly connected components (Tarjan, iterative). Each component lists
/// its vertices in ascending order; components are ordered by their smallest
/// vertex id.
std::vector<std::vector<VertexId>> strongly_connected_components(const DirectedGraph& g);

bool is_strongly_connected(const DirectedGraph& g);

/// Subgraph induced by `vertices` (any order, no duplicates), re-indexed in
/// ascending order of the given ids. Original ids are carried through.
DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const VertexId> vertices);

/// Induced subgraph on the largest SCC. Ties go to the component containing
/// the smallest original id. Requires a nonempty graph.
DirectedGraph largest_scc(const DirectedGraph& g);

/// Unreciprocated arcs / (unreciprocated arcs + reciprocal pairs).
/// Throws UndefinedMeasureError on a graph without edges.
double directedness(const DirectedGraph& g);

}  // namespace rds
