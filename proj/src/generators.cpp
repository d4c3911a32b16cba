#include "rds/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "rds/error.hpp"

namespace rds {

namespace {

bool finite_in(double x, double lo, double hi) {
    return std::isfinite(x) && x >= lo && x <= hi;
}

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return a * n + b;
}

void check_tau(double tau, const char* name) {
    if (!finite_in(tau, 0.0, 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(tau));
    }
}

std::vector<double> rank_weights(std::span<const std::size_t> rank, double tau) {
    std::vector<double> w(rank.size());
    for (std::size_t i = 0; i < rank.size(); ++i) {
        w[i] = std::pow(static_cast<double>(rank[i]), -tau);
    }
    return w;
}

std::vector<std::size_t> random_ranks(std::size_t n, Rng& rng) {
    std::vector<std::size_t> ranks(n);
    std::iota(ranks.begin(), ranks.end(), std::size_t{1});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(ranks[i - 1], ranks[uniform_below(rng, i)]);
    }
    return ranks;
}

// Rejection loops are bounded so infeasible-in-practice targets fail loudly.
std::size_t draw_budget(std::size_t target) {
    return 200 * target + 1'000'000;
}

}  // namespace

void ErParams::validate() const {
    if (n == 0) {
        throw ParameterError("n must be at least 1");
    }
    if (!finite_in(alpha, 0.0, 1.0)) {
        throw ParameterError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    const double max_lambda = static_cast<double>(n - 1);
    if (!finite_in(lambda, 0.0, max_lambda)) {
        throw ParameterError("lambda must lie in [0, n-1], got " + std::to_string(lambda));
    }
}

void PowerLawParams::validate() const {
    if (n < 2) {
        throw ParameterError("n must be at least 2");
    }
    if (!std::isfinite(e_d_un) || e_d_un < 0.0) {
        throw ParameterError("expected undirected degree must be non-negative");
    }
    if (!std::isfinite(e_d_dir) || e_d_dir < 0.0) {
        throw ParameterError("expected directed degree must be non-negative");
    }
    check_tau(tau_un, "tau_un");
    check_tau(tau_in, "tau_in");
    check_tau(tau_out, "tau_out");
    const std::size_t pairs = n * (n - 1) / 2;
    if (undirected_edge_target() + directed_arc_target() > pairs) {
        throw ParameterError("requested edge count exceeds the simple-graph limit of " +
                             std::to_string(pairs) + " vertex pairs");
    }
}

std::size_t PowerLawParams::undirected_edge_target() const {
    return static_cast<std::size_t>(std::llround(e_d_un * static_cast<double>(n) / 2.0));
}

std::size_t PowerLawParams::directed_arc_target() const {
    return static_cast<std::size_t>(std::llround(e_d_dir * static_cast<double>(n) / 2.0));
}

double PowerLawParams::target_alpha() const {
    const double total = e_d_un + e_d_dir;
    return total > 0.0 ? e_d_dir / total : 0.0;
}

WeightedIndexSampler::WeightedIndexSampler(std::span<const double> weights)
    : cumulative_(weights.size()) {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
            throw ParameterError("sampling weights must be finite and non-negative");
        }
        total += weights[i];
        cumulative_[i] = total;
    }
    if (!(total > 0.0)) {
        throw ParameterError("sampling weights sum to zero");
    }
}

std::size_t WeightedIndexSampler::operator()(Rng& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

DirectedGraph gen_directed_er(const ErParams& p, Seed seed) {
    p.validate();
    const std::size_t n = p.n;
    Rng rng = make_rng(seed);
    std::vector<Arc> arcs;
    if (n < 2 || p.lambda <= 0.0) {
        return DirectedGraph::from_arcs(arcs, n);
    }
    const double edge_prob = p.lambda / static_cast<double>(n - 1);
    arcs.reserve(static_cast<std::size_t>(p.lambda * static_cast<double>(n) * 1.2) + 16);

    auto place = [&](VertexId a, VertexId b) {
        if (uniform01(rng) < 1.0 - p.alpha) {
            arcs.emplace_back(a, b);
            arcs.emplace_back(b, a);
        } else if (uniform01(rng) < 0.5) {
            arcs.emplace_back(a, b);
        } else {
            arcs.emplace_back(b, a);
        }
    };

    if (edge_prob >= 1.0) {
        for (VertexId v = 1; v < n; ++v) {
            for (VertexId w = 0; w < v; ++w) {
                place(v, w);
            }
        }
    } else {
        // Geometric skipping over the pairs (v, w), w < v, in row order.
        const double log_q = std::log1p(-edge_prob);
        std::size_t v = 1;
        std::int64_t w = -1;
        while (v < n) {
            const double u = uniform01(rng);
            w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
            while (v < n && w >= static_cast<std::int64_t>(v)) {
                w -= static_cast<std::int64_t>(v);
                ++v;
            }
            if (v < n) {
                place(static_cast<VertexId>(v), static_cast<VertexId>(w));
            }
        }
    }
    return DirectedGraph::from_arcs(arcs, n);
}

DirectedGraph gen_power_law_once(const PowerLawParams& p, Seed seed) {
    p.validate();
    const std::size_t n = p.n;
    Rng rng = make_rng(seed);

    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), std::size_t{1});
    const WeightedIndexSampler undirected_sampler(rank_weights(identity, p.tau_un));

    std::vector<Arc> arcs;
    std::unordered_set<std::uint64_t> undirected;  // key min*n+max
    const std::size_t un_target = p.undirected_edge_target();
    undirected.reserve(un_target * 2);
    std::size_t draws = 0;
    while (undirected.size() < un_target) {
        if (++draws > draw_budget(un_target)) {
            throw GenerationError("undirected phase exhausted its draw budget", 1);
        }
        const auto i = undirected_sampler(rng);
        const auto j = undirected_sampler(rng);
        if (i == j) {
            continue;
        }
        const auto key = pair_key(std::min(i, j), std::max(i, j), n);
        if (undirected.insert(key).second) {
            arcs.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
            arcs.emplace_back(static_cast<VertexId>(j), static_cast<VertexId>(i));
        }
    }

    const std::size_t arc_target = p.directed_arc_target();
    if (arc_target > 0) {
        const auto in_ranks = random_ranks(n, rng);
        const auto out_ranks = random_ranks(n, rng);
        const WeightedIndexSampler receiver_sampler(rank_weights(in_ranks, p.tau_in));
        const WeightedIndexSampler sender_sampler(rank_weights(out_ranks, p.tau_out));

        std::unordered_set<std::uint64_t> directed;  // key sender*n+receiver
        directed.reserve(arc_target * 2);
        draws = 0;
        while (directed.size() < arc_target) {
            if (++draws > draw_budget(arc_target)) {
                throw GenerationError("directed phase exhausted its draw budget", 1);
            }
            const auto receiver = receiver_sampler(rng);
            const auto sender = sender_sampler(rng);
            if (receiver == sender) {
                continue;
            }
            // Reject arcs that would coincide with an undirected edge or close
            // an existing arc into a reciprocal pair.
            if (undirected.contains(pair_key(std::min(receiver, sender), std::max(receiver, sender), n)) ||
                directed.contains(pair_key(receiver, sender, n))) {
                continue;
            }
            if (directed.insert(pair_key(sender, receiver, n)).second) {
                arcs.emplace_back(static_cast<VertexId>(sender), static_cast<VertexId>(receiver));
            }
        }
    }
    return DirectedGraph::from_arcs(arcs, n);
}

DirectedGraph gen_power_law(const PowerLawParams& p, Seed seed, std::size_t max_retries,
                            std::size_t* attempts_out) {
    p.validate();
    const std::size_t attempts = std::max<std::size_t>(max_retries, 1);
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        DirectedGraph g = gen_power_law_once(p, derive_seed(seed, attempt, 0x706c));
        if (is_strongly_connected(g)) {
            if (attempts_out != nullptr) {
                *attempts_out = attempt + 1;
            }
            return g;
        }
    }
    if (attempts_out != nullptr) {
        *attempts_out = attempts;
    }
    throw GenerationError("power-law graph was not strongly connected after " +
                              std::to_string(attempts) + " attempts",
                          attempts);
}

}  // namespace rds
