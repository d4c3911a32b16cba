#include "rds/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "rds/error.hpp"

namespace rds {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t begin = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > begin) {
            fields.push_back(line.substr(begin, i - begin));
        }
    }
    return fields;
}

bool skip_line(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw InputError("line " + std::to_string(line_no) + ": cannot parse " + what + " '" + std::string(field) + "'");
    }
    return value;
}

VertexId parse_vertex(std::string_view field, std::size_t line_no) {
    const auto value = parse_number<std::uint64_t>(field, line_no, "vertex id");
    if (value > std::numeric_limits<VertexId>::max()) {
        throw InputError("line " + std::to_string(line_no) + ": vertex id " + std::string(field) + " is too large");
    }
    return static_cast<VertexId>(value);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "' for reading");
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot open '" + path + "' for writing");
    }
    return out;
}

}  // namespace

LoadedGraph read_edge_list(std::istream& in) {
    std::vector<std::pair<VertexId, VertexId>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw InputError("line " + std::to_string(line_no) + ": expected 'src dst'");
        }
        raw.emplace_back(parse_vertex(fields[0], line_no), parse_vertex(fields[1], line_no));
    }

    std::vector<VertexId> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto dense = [&](VertexId id) {
        return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<Arc> arcs;
    arcs.reserve(raw.size());
    for (const auto& [a, b] : raw) {
        arcs.emplace_back(dense(a), dense(b));
    }
    LoadedGraph loaded;
    loaded.graph = DirectedGraph::from_arcs(arcs, std::move(ids), &loaded.log);
    return loaded;
}

LoadedGraph read_edge_list_file(const std::string& path) {
    auto in = open_in(path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
    for (VertexId v = 0; v < g.size(); ++v) {
        for (VertexId w : g.successors(v)) {
            out << g.original_id(v) << ' ' << g.original_id(w) << '\n';
        }
    }
}

void write_edge_list_file(const std::string& path, const DirectedGraph& g) {
    auto out = open_out(path);
    write_edge_list(out, g);
}

std::vector<std::uint8_t> read_attributes(std::istream& in, const DirectedGraph& g) {
    std::unordered_map<VertexId, VertexId> dense;
    dense.reserve(g.size());
    for (VertexId v = 0; v < g.size(); ++v) {
        dense.emplace(g.original_id(v), v);
    }
    std::vector<std::uint8_t> flags(g.size(), 0);
    std::vector<bool> seen(g.size(), false);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw InputError("line " + std::to_string(line_no) + ": expected 'vertex_id value'");
        }
        const VertexId id = parse_vertex(fields[0], line_no);
        const auto value = parse_number<unsigned>(fields[1], line_no, "property value");
        if (value > 1) {
            throw InputError("line " + std::to_string(line_no) + ": property value must be 0 or 1");
        }
        const auto it = dense.find(id);
        if (it == dense.end()) {
            continue;
        }
        flags[it->second] = static_cast<std::uint8_t>(value);
        seen[it->second] = true;
    }
    for (VertexId v = 0; v < g.size(); ++v) {
        if (!seen[v]) {
            throw InputError("attribute file has no value for vertex " + std::to_string(g.original_id(v)));
        }
    }
    return flags;
}

std::vector<std::uint8_t> read_attributes_file(const std::string& path, const DirectedGraph& g) {
    auto in = open_in(path);
    return read_attributes(in, g);
}

void write_attributes(std::ostream& out, const DirectedGraph& g, const PropertyTable& table) {
    if (table.flags.size() != g.size()) {
        throw InputError("property table size does not match the graph");
    }
    for (VertexId v = 0; v < g.size(); ++v) {
        out << g.original_id(v) << ' ' << static_cast<unsigned>(table.flags[v]) << '\n';
    }
}

void write_walk_sample(std::ostream& out, const WalkSample& w, const DirectedGraph* g) {
    auto id = [&](VertexId v) { return g != nullptr ? g->original_id(v) : v; };
    out << w.visits.size() << ' ' << w.seed << ' ' << id(w.start) << ' ' << w.revisits << '\n';
    for (const auto& visit : w.visits) {
        out << id(visit.vertex) << ' ';
        if (w.regime == DegreeRegime::full) {
            out << visit.degree.un << ' ' << visit.degree.in << ' ' << visit.degree.out;
        } else {
            out << visit.out_degree;
        }
        out << ' ' << static_cast<unsigned>(visit.flag) << '\n';
    }
}

WalkSample read_walk_sample(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    WalkSample w;
    std::size_t declared = 0;
    std::size_t declared_m = 0;
    bool have_header = false;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) {
            continue;
        }
        const auto fields = split_fields(line);
        if (!have_header) {
            if (fields.size() != 4) {
                throw InputError("line " + std::to_string(line_no) + ": expected header 's seed start m'");
            }
            declared = parse_number<std::size_t>(fields[0], line_no, "sample size");
            w.seed = parse_number<std::uint64_t>(fields[1], line_no, "seed");
            w.start = parse_vertex(fields[2], line_no);
            declared_m = parse_number<std::size_t>(fields[3], line_no, "revisit count");
            have_header = true;
            continue;
        }
        if (columns == 0) {
            columns = fields.size();
            if (columns != 5 && columns != 3) {
                throw InputError("line " + std::to_string(line_no) + ": expected 5 (full) or 3 (out-degree) columns");
            }
            w.regime = columns == 5 ? DegreeRegime::full : DegreeRegime::out_only;
        } else if (fields.size() != columns) {
            throw InputError("line " + std::to_string(line_no) + ": inconsistent column count");
        }
        Visit visit;
        visit.vertex = parse_vertex(fields[0], line_no);
        if (columns == 5) {
            visit.degree.un = parse_number<std::uint32_t>(fields[1], line_no, "d_un");
            visit.degree.in = parse_number<std::uint32_t>(fields[2], line_no, "d_in");
            visit.degree.out = parse_number<std::uint32_t>(fields[3], line_no, "d_out");
            visit.out_degree = visit.degree.out_degree();
        } else {
            visit.out_degree = parse_number<std::uint32_t>(fields[1], line_no, "out-degree");
        }
        const auto flag = parse_number<unsigned>(fields[columns - 1], line_no, "flag");
        if (flag > 1) {
            throw InputError("line " + std::to_string(line_no) + ": flag must be 0 or 1");
        }
        if (visit.out_degree == 0) {
            throw InputError("line " + std::to_string(line_no) + ": out-degree must be positive");
        }
        visit.flag = static_cast<std::uint8_t>(flag);
        w.visits.push_back(visit);
    }
    if (!have_header) {
        throw InputError("sample file is empty");
    }
    if (w.visits.size() != declared) {
        throw InputError("sample header declares " + std::to_string(declared) + " visits but " +
                         std::to_string(w.visits.size()) + " follow");
    }
    w.revisits = count_revisits(w.visits);
    if (w.revisits != declared_m) {
        throw InputError("sample header declares m=" + std::to_string(declared_m) + " but the visits contain " +
                         std::to_string(w.revisits) + " immediate revisits");
    }
    return w;
}

WalkSample read_walk_sample_file(const std::string& path) {
    auto in = open_in(path);
    return read_walk_sample(in);
}

WalkSample reindex_sample(const WalkSample& w, const DirectedGraph& g) {
    std::unordered_map<VertexId, VertexId> dense;
    dense.reserve(g.size());
    for (VertexId v = 0; v < g.size(); ++v) {
        dense.emplace(g.original_id(v), v);
    }
    auto lookup = [&](VertexId id) {
        const auto it = dense.find(id);
        if (it == dense.end()) {
            throw InputError("sampled vertex " + std::to_string(id) + " is not in the graph");
        }
        return it->second;
    };
    WalkSample result = w;
    result.start = lookup(w.start);
    for (auto& visit : result.visits) {
        visit.vertex = lookup(visit.vertex);
    }
    return result;
}

void write_weights(std::ostream& out, const SelectionProbEstimate& est, const DirectedGraph* g) {
    const auto old_precision = out.precision(17);
    auto id = [&](VertexId v) { return g != nullptr ? g->original_id(v) : v; };
    if (est.domain == NormalizationDomain::sample) {
        for (std::size_t i = 0; i < est.vertices.size(); ++i) {
            out << id(est.vertices[i]) << ' ' << est.probs[i] << '\n';
        }
    } else {
        for (std::size_t v = 0; v < est.probs.size(); ++v) {
            out << id(static_cast<VertexId>(v)) << ' ' << est.probs[v] << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace rds
