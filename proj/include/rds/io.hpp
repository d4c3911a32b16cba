#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rds/allocation.hpp"
#include "rds/estimators.hpp"
#include "rds/graph.hpp"
#include "rds/walk.hpp"

namespace rds {

// Edge list: one arc per line, "src dst" (whitespace separated, non-negative
// integers). Lines starting with '#' and blank lines are ignored. Ids need
// not be dense; the graph is re-indexed in ascending id order and keeps the
// file ids as original ids.

struct LoadedGraph {
    DirectedGraph graph;
    BuildLog log;
};

LoadedGraph read_edge_list(std::istream& in);
LoadedGraph read_edge_list_file(const std::string& path);

/// Writes arcs using original ids.
void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list_file(const std::string& path, const DirectedGraph& g);

// Attribute file: one line per vertex, "vertex_id value" with value 0 or 1.
// Ids refer to original ids; ids absent from the graph are ignored, and
// every graph vertex must appear.

std::vector<std::uint8_t> read_attributes(std::istream& in, const DirectedGraph& g);
std::vector<std::uint8_t> read_attributes_file(const std::string& path, const DirectedGraph& g);
void write_attributes(std::ostream& out, const DirectedGraph& g, const PropertyTable& table);

// Sample file: header "s seed start m", then one line per visit:
//   full regime:     "vertex_id d_un d_in d_out flag"
//   out-degree only: "vertex_id outdeg flag"
// The regime is inferred from the column count. Vertex ids are written as
// original ids when a graph is supplied.

void write_walk_sample(std::ostream& out, const WalkSample& w, const DirectedGraph* g = nullptr);
/// Vertex ids in the file are kept verbatim as VertexIds; the revisit count
/// is recomputed from the visits and must match the header.
WalkSample read_walk_sample(std::istream& in);
WalkSample read_walk_sample_file(const std::string& path);

/// Maps original ids in a sample (as written with a graph) back to dense ids.
WalkSample reindex_sample(const WalkSample& w, const DirectedGraph& g);

/// "vertex_id weight" lines, with original ids of `g` when given.
void write_weights(std::ostream& out, const SelectionProbEstimate& est, const DirectedGraph* g = nullptr);

}  // namespace rds
