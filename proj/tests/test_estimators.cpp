#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rds/diagnostics.hpp"
#include "rds/error.hpp"
#include "rds/estimators.hpp"
#include "rds/experiments.hpp"
#include "rds/generators.hpp"
#include "rds/stationary.hpp"
#include "support.hpp"

using namespace rds;

namespace {

Visit visit(VertexId v, DegreeTriple d, std::uint8_t flag = 0) {
    Visit x;
    x.vertex = v;
    x.degree = d;
    x.out_degree = d.out_degree();
    x.flag = flag;
    return x;
}

WalkSample sample_of(std::vector<Visit> visits, DegreeRegime regime = DegreeRegime::full) {
    WalkSample w;
    w.regime = regime;
    w.visits = std::move(visits);
    w.revisits = count_revisits(w.visits);
    return w;
}

WalkSample out_degree_sample(const std::vector<std::uint32_t>& out) {
    std::vector<Visit> visits;
    for (std::size_t t = 0; t < out.size(); ++t) {
        visits.push_back(visit(static_cast<VertexId>(t), DegreeTriple{0, 0, out[t]}));
    }
    return sample_of(std::move(visits));
}

// Untruncated renewal-reward ratio p_vis / (2 p_vis + 1 - p_ret).
double untruncated(const DegreeTriple& d, std::size_t n, double e_un, double e_in, double e_inv) {
    const double p_vis = visit_probability(d, n, e_un, e_in);
    const double p_ret = return_probability(d, e_inv);
    return p_vis / (2.0 * p_vis + 1.0 - p_ret);
}

struct SilenceWarnings {
    WarningSink previous = set_warning_sink({});
    ~SilenceWarnings() { set_warning_sink(previous); }
};

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("uniform estimator") {
    CHECK(pi_uniform(4).probs == std::vector<double>{0.25, 0.25, 0.25, 0.25});
    CHECK(pi_uniform(1).probs == std::vector<double>{1.0});
    CHECK_THROWS_AS(pi_uniform(0), InputError);
}

TEST_CASE("degree-proportional estimators") {
    const std::vector<std::uint32_t> out{1, 1, 2};
    CHECK(pi_outdeg(out).probs == std::vector<double>{0.25, 0.25, 0.5});
    const std::vector<std::uint32_t> regular{3, 3, 3};
    for (double p : pi_outdeg(regular).probs) {
        CHECK(p == doctest::Approx(1.0 / 3.0));
    }
    const std::vector<std::uint32_t> in{2, 2};
    CHECK(pi_indeg(in).probs == std::vector<double>{0.5, 0.5});
    const std::vector<std::uint32_t> zero{1, 0};
    CHECK_THROWS_AS(pi_outdeg(zero), StructuralError);

    const auto cycle = rds::test::directed_cycle(5);
    for (double p : pi_indeg(in_degrees(cycle)).probs) {
        CHECK(p == 0.2);
    }
}

TEST_CASE("full-degree renewal estimator") {
    SUBCASE("undirected triangle is uniform") {
        const auto g = rds::test::undirected({{0, 1}, {1, 2}, {2, 0}}, 3);
        for (double p : pi_renewal_full(g.degrees(), 0.5).probs) {
            CHECK(p == doctest::Approx(1.0 / 3.0));
        }
    }
    SUBCASE("fully directed graphs give in-degree weights for any e_inv") {
        const std::vector<DegreeTriple> d{{0, 1, 2}, {0, 3, 1}, {0, 2, 2}};
        for (double e_inv : {0.1, 0.5, 1.0}) {
            const auto pi = pi_renewal_full(d, e_inv);
            CHECK(pi.probs[0] == doctest::Approx(1.0 / 6.0));
            CHECK(pi.probs[1] == doctest::Approx(3.0 / 6.0));
            CHECK(pi.probs[2] == doctest::Approx(2.0 / 6.0));
        }
    }
    SUBCASE("two-vertex arithmetic") {
        // 2/(1 - 0.5*0.5) = 8/3 and 1/(1 - 0.5*0.5) = 4/3
        const std::vector<DegreeTriple> d{{1, 1, 1}, {1, 0, 1}};
        CHECK(renewal_weight(d[0], 0.5) == doctest::Approx(8.0 / 3.0));
        CHECK(renewal_weight(d[1], 0.5) == doctest::Approx(4.0 / 3.0));
        const auto pi = pi_renewal_full(d, 0.5);
        CHECK(pi.probs[0] == doctest::Approx(2.0 / 3.0));
        CHECK(pi.probs[1] == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("non-positive denominator") {
        // d_out = 0 and e_inv = 1: return probability 1.
        CHECK_THROWS_AS(renewal_weight({2, 0, 0}, 1.0), NumericDomainError);
        CHECK_THROWS_AS(pi_renewal_full(std::vector<DegreeTriple>{{1, 0, 1}}, 1.5), ParameterError);
    }
}

TEST_CASE("untruncated and truncated renewal forms agree as visits become rare") {
    // |pi_untruncated - pi_truncated| relative to pi shrinks like p_vis.
    const DegreeTriple d{4, 3, 2};
    const double e_un = 5.0, e_in = 2.5, e_inv = 0.12;
    double previous = 1.0;
    for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
        const double p_vis = visit_probability(d, n, e_un, e_in);
        const double truncated = p_vis / (1.0 - return_probability(d, e_inv));
        const double full = untruncated(d, n, e_un, e_in, e_inv);
        const double rel = std::abs(full - truncated) / truncated;
        CHECK(rel < previous);
        CHECK(rel < 3.0 * p_vis / (1.0 - return_probability(d, e_inv)));
        previous = rel;
    }
    CHECK(previous < 1e-4);
}

TEST_CASE("E[1/out-degree] from the walk") {
    CHECK(estimate_e_inv(out_degree_sample({4, 4, 4})) == 0.25);
    CHECK(estimate_e_inv(out_degree_sample({1, 2, 4, 4})) == doctest::Approx(0.5));
    CHECK(estimate_e_inv(out_degree_sample({1, 1, 1})) == 1.0);
    CHECK(estimate_e_inv(out_degree_sample({1, 2, 4, 4}), EInvMethod::inverse_of_mean) ==
          doctest::Approx(4.0 / 11.0));
}

TEST_CASE("degree decomposition") {
    DegreeMoments m;
    m.e_d_un = 6;
    m.e_d_out = 2;
    m.e_d_in = 2;
    auto d = decompose_degrees(8, m);
    CHECK(d.un == doctest::Approx(6));
    CHECK(d.out == doctest::Approx(2));
    CHECK(d.in == doctest::Approx(2));

    m.e_d_out = 0;
    d = decompose_degrees(8, m);
    CHECK(d.un == doctest::Approx(8));
    CHECK(d.out == 0.0);
    CHECK(d.in == doctest::Approx(2));

    m.e_d_un = 0;
    m.e_d_out = 3;
    d = decompose_degrees(8, m);
    CHECK(d.un == 0.0);
    CHECK(d.out == doctest::Approx(8));
    CHECK(d.in == doctest::Approx(2));

    m.e_d_out = 0;
    CHECK_THROWS_AS(decompose_degrees(8, m), ParameterError);
}

TEST_CASE("alpha moment estimator") {
    CHECK(alpha_moment_raw(5, 10) == doctest::Approx(2.0 / 3.0));
    CHECK(alpha_moment_raw(12, 10) == doctest::Approx(-0.5));
    CHECK(alpha_moment_raw(0, 4) == doctest::Approx(1.0));
    CHECK_THROWS_AS(alpha_moment_raw(20, 10), DegenerateEstimateError);

    SilenceWarnings quiet;
    // Directed 3-cycle: no revisits, alpha_hat = 1.
    std::vector<Visit> cycle;
    for (int t = 0; t < 9; ++t) {
        cycle.push_back(visit(static_cast<VertexId>(t % 3), DegreeTriple{0, 1, 1}));
    }
    CHECK(estimate_alpha(sample_of(cycle)) == 1.0);

    // Walk on a single edge: m = s - 2 = 8 against sigma = s - 1 = 9, so
    // (8 - 9) / (4 - 9) = 0.2 rather than 0 at this length.
    std::vector<Visit> edge;
    for (int t = 0; t < 10; ++t) {
        edge.push_back(visit(static_cast<VertexId>(t % 2), DegreeTriple{1, 0, 0}));
    }
    CHECK(estimate_alpha(sample_of(edge)) == doctest::Approx(0.2));
    CHECK_THROWS_AS(estimate_alpha(sample_of({cycle[0], cycle[1]})), ParameterError);
}

TEST_CASE("alpha_hat beyond the pole returns 0 with a warning") {
    std::vector<std::string> messages;
    const auto previous = set_warning_sink([&](const std::string& m) { messages.push_back(m); });
    // Out-degree 4 everywhere, path a b a b a b: m = 4, sigma = 5/4, m > 2 sigma.
    std::vector<Visit> v;
    for (int t = 0; t < 6; ++t) {
        v.push_back(visit(static_cast<VertexId>(t % 2), DegreeTriple{4, 0, 0}));
    }
    CHECK(estimate_alpha(sample_of(v)) == 0.0);
    CHECK(messages.size() == 1);
    set_warning_sink(previous);
}

TEST_CASE("lambda estimator") {
    CHECK(estimate_lambda(6.0, 0.0) == doctest::Approx(5.0));
    CHECK(estimate_lambda(6.0, 1.0) == doctest::Approx(12.0));
    CHECK(estimate_lambda(7.4, 0.5) == doctest::Approx(9.2));
    SilenceWarnings quiet;
    CHECK(estimate_lambda(0.5, 0.0) == 0.0);
}

TEST_CASE("out-degree renewal estimator") {
    const std::vector<std::uint32_t> out{5, 10};
    const auto pi = pi_renewal_outdeg(out, NetworkParams{0.5, 10.0});
    CHECK(renewal_outdeg_weight(5, {0.5, 10.0}) == doctest::Approx(35.0 / 6.0));
    CHECK(renewal_outdeg_weight(10, {0.5, 10.0}) == doctest::Approx(55.0 / 6.0));
    CHECK(pi.probs[0] == doctest::Approx(0.3888888889));
    CHECK(pi.probs[1] == doctest::Approx(0.6111111111));
    CHECK(pi.variant == Estimator::ren_known_params);
    CHECK(pi_renewal_outdeg(out, {0.5, 10.0, ParamProvenance::estimated}).variant == Estimator::ren);
}

TEST_CASE("out-degree renewal weight equals decomposed d_un + d_in") {
    Rng rng = make_rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = uniform01(rng);
        const double l = 0.5 + 20.0 * uniform01(rng);
        const auto d = static_cast<std::uint32_t>(1 + uniform_below(rng, 40));
        const auto parts = decompose_degrees(d, DegreeMoments::from_er(a, l));
        CHECK(renewal_outdeg_weight(d, {a, l}) == doctest::Approx(parts.un + parts.in).epsilon(1e-12));
    }
}

TEST_CASE("reduction identities") {
    const std::vector<std::uint32_t> out{3, 1, 4, 1, 5, 9, 2, 6};
    SUBCASE("alpha 0 gives out-degree weights") {
        const auto ren = pi_renewal_outdeg(out, {0.0, 7.0});
        const auto od = pi_outdeg(out);
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(std::abs(ren.probs[i] - od.probs[i]) < 1e-12);
        }
    }
    SUBCASE("alpha 1 gives uniform weights") {
        const auto ren = pi_renewal_outdeg(out, {1.0, 7.0});
        for (double p : ren.probs) {
            CHECK(std::abs(p - 1.0 / 8.0) < 1e-12);
        }
    }
    SUBCASE("undirected graph: ren_fd = outdeg = exact") {
        const auto g = rds::test::undirected({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}, {0, 4}}, 5);
        const auto exact = solve_exact(g);
        const auto fd = pi_renewal_full(g.degrees(), 0.3);
        const auto od = pi_outdeg(out_degrees(g));
        for (VertexId v = 0; v < 5; ++v) {
            CHECK(std::abs(fd.probs[v] - exact.probs[v]) < 1e-12);
            CHECK(std::abs(od.probs[v] - exact.probs[v]) < 1e-12);
        }
    }
    SUBCASE("uniform selection probabilities give the sample mean") {
        std::vector<Visit> v;
        const std::uint8_t flags[] = {1, 0, 0, 1, 1, 0, 1};
        for (int t = 0; t < 7; ++t) {
            v.push_back(visit(static_cast<VertexId>(t % 4), DegreeTriple{1, 0, 0}, flags[t]));
        }
        const auto w = sample_of(v);
        CHECK(std::abs(estimate_proportion(w, pi_uniform(4)) - 4.0 / 7.0) < 1e-12);
    }
}

TEST_CASE("proportion estimator") {
    SUBCASE("all flagged") {
        const auto w = sample_of({visit(0, {1, 0, 0}, 1), visit(1, {1, 0, 0}, 1)});
        CHECK(estimate_proportion(w, pi_uniform(2)) == 1.0);
    }
    SUBCASE("hand arithmetic") {
        const auto w = sample_of({visit(0, {1, 0, 0}, 1), visit(1, {1, 0, 0}, 0)});
        SelectionProbEstimate pi;
        pi.probs = {2.0 / 3.0, 1.0 / 3.0};
        CHECK(estimate_proportion(w, pi) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("unsampled coverage") {
        const auto w = sample_of({visit(0, {1, 0, 0}), visit(5, {1, 0, 0})});
        CHECK_THROWS_AS(estimate_proportion(w, pi_uniform(3)), CoverageError);
    }
}

TEST_CASE("property: proportion stays in [0, 1] and is monotone in flags") {
    Rng rng = make_rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + uniform_below(rng, 15);
        const auto g = rds::test::random_strong_digraph(n, 0.3, rng);
        std::vector<std::uint8_t> flags(n);
        for (auto& f : flags) {
            f = uniform01(rng) < 0.5;
        }
        const auto w = run_walk(g, 3 + uniform_below(rng, 50), derive_seed(17, trial), flags);
        const auto pi = estimate_on_sample(w, Estimator::outdeg);
        const double p = estimate_proportion(w, pi);
        REQUIRE(p >= 0.0);
        REQUIRE(p <= 1.0);
        for (VertexId v = 0; v < n; ++v) {
            if (flags[v] == 0) {
                auto flipped = w;
                for (auto& x : flipped.visits) {
                    if (x.vertex == v) {
                        x.flag = 1;
                    }
                }
                CHECK(estimate_proportion(flipped, pi) >= p);
            }
        }
    }
}

TEST_CASE("property: every estimate is a probability vector") {
    Rng rng = make_rng(23);
    SilenceWarnings quiet;
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = largest_scc(gen_directed_er({200, uniform01(rng), 3.0 + 10.0 * uniform01(rng)},
                                                   derive_seed(23, trial)));
        const auto w = run_walk(g, 300, derive_seed(23, trial, 1));
        EstimationOptions opts;
        opts.known_params = NetworkParams{0.5, 8.0};
        for (Estimator e : all_estimators) {
            for (const auto& est : {estimate_on_graph(g, w, e, opts), estimate_on_sample(w, e, opts)}) {
                const double sum = std::accumulate(est.probs.begin(), est.probs.end(), 0.0);
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
                for (double p : est.probs) {
                    REQUIRE(p > 0.0);
                }
            }
        }
        const auto on_sample = estimate_on_sample(w, Estimator::ren_fd, opts);
        CHECK(std::is_sorted(on_sample.vertices.begin(), on_sample.vertices.end()));
        CHECK(on_sample.domain == NormalizationDomain::sample);
    }
}

TEST_CASE("sample-domain estimates are proportional to the graph-domain weights") {
    Rng rng = make_rng(4);
    const auto g = rds::test::random_strong_digraph(40, 0.1, rng);
    const auto w = run_walk(g, 200, 6);
    for (Estimator e : {Estimator::outdeg, Estimator::indeg, Estimator::ren_fd, Estimator::ren}) {
        const auto full = estimate_on_graph(g, w, e);
        const auto sample = estimate_on_sample(w, e);
        const VertexId first = sample.vertices.front();
        const double scale = full.at(first) / sample.at(first);
        for (VertexId v : sample.vertices) {
            CHECK(full.at(v) == doctest::Approx(scale * sample.at(v)).epsilon(1e-12));
        }
    }
}

TEST_CASE("regime and parameter requirements") {
    Rng rng = make_rng(5);
    const auto g = rds::test::random_strong_digraph(10, 0.2, rng);
    WalkOptions opts;
    opts.regime = DegreeRegime::out_only;
    const auto w = run_walk(g, 50, 1, {}, opts);
    CHECK_THROWS_AS(estimate_on_sample(w, Estimator::indeg), InputError);
    CHECK_THROWS_AS(estimate_on_sample(w, Estimator::ren_fd), InputError);
    CHECK_THROWS_AS(estimate_on_sample(w, Estimator::ren_known_params), ParameterError);
    CHECK_NOTHROW(estimate_on_sample(w, Estimator::ren));
    CHECK(parse_estimator("ren_al") == Estimator::ren_known_params);
    CHECK(parse_estimator("ren_known_params") == Estimator::ren_known_params);
    CHECK_FALSE(parse_estimator("bogus").has_value());
}

TEST_CASE("alpha_hat is consistent on directed ER graphs") {
    SilenceWarnings quiet;
    for (double alpha : {0.25, 0.75}) {
        double sum = 0.0;
        const int runs = 200;
        for (int k = 0; k < runs; ++k) {
            const auto g = largest_scc(gen_directed_er({1000, alpha, 10.0}, derive_seed(61, k, 1)));
            sum += estimate_alpha(run_walk(g, 500, derive_seed(61, k, 2)));
        }
        CHECK(std::abs(sum / runs - alpha) < 0.05);
    }
}

}
