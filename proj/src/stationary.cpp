#include "rds/stationary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "rds/error.hpp"

namespace rds {

namespace {

void require_out_arcs(const DirectedGraph& g) {
    for (VertexId v = 0; v < g.size(); ++v) {
        if (g.degree(v).out_degree() == 0) {
            throw StructuralError("vertex " + std::to_string(g.original_id(v)) +
                                  " has no outgoing arcs; the walk is undefined");
        }
    }
}

double half_l1(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]);
    }
    return 0.5 * sum;
}

void normalize(std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) {
        total += x;
    }
    for (double& x : v) {
        x /= total;
    }
}

}  // namespace

std::vector<double> transition_step(const DirectedGraph& g, std::span<const double> pi) {
    const std::size_t n = g.size();
    std::vector<double> scaled(n);
    for (VertexId v = 0; v < n; ++v) {
        scaled[v] = pi[v] / static_cast<double>(g.degree(v).out_degree());
    }
    std::vector<double> next(n);
    for (VertexId v = 0; v < n; ++v) {
        double acc = 0.0;
        for (VertexId u : g.predecessors(v)) {
            acc += scaled[u];
        }
        next[v] = acc;
    }
    return next;
}

double stationarity_residual(const DirectedGraph& g, std::span<const double> pi) {
    const auto next = transition_step(g, pi);
    double worst = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        worst = std::max(worst, std::abs(next[i] - pi[i]));
    }
    return worst;
}

StationaryDistribution power_method(const DirectedGraph& g, double tol, std::size_t max_iter) {
    if (g.empty()) {
        throw InputError("power_method: graph is empty");
    }
    if (!(tol > 0.0)) {
        throw ParameterError("power_method: tolerance must be positive");
    }
    const std::size_t n = g.size();
    if (n == 1) {
        return {{1.0}, 0, 0.0};
    }
    require_out_arcs(g);

    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    double residual = 0.0;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        auto next = transition_step(g, pi);
        normalize(next);
        residual = half_l1(next, pi);
        pi = std::move(next);
        if (residual <= tol) {
            return {std::move(pi), iter, residual};
        }
    }
    throw ConvergenceError("power method did not converge in " + std::to_string(max_iter) +
                               " iterations (last residual " + std::to_string(residual) +
                               "); the graph may be periodic",
                           max_iter, residual);
}

StationaryDistribution solve_exact(const DirectedGraph& g) {
    const std::size_t n = g.size();
    if (n == 0) {
        throw InputError("solve_exact: graph is empty");
    }
    if (n > solve_exact_max_vertices) {
        throw ParameterError("solve_exact supports at most " + std::to_string(solve_exact_max_vertices) +
                             " vertices");
    }
    if (n == 1) {
        return {{1.0}, 0, 0.0};
    }
    require_out_arcs(g);

    // Rows 0..n-2: (P^T - I) pi = 0; last row: sum(pi) = 1.
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    for (VertexId u = 0; u < n; ++u) {
        const double share = 1.0 / static_cast<double>(g.degree(u).out_degree());
        for (VertexId v : g.successors(u)) {
            a(v, u) += share;
        }
        a(u, u) -= 1.0;
    }
    a.row(size - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
    b(size - 1) = 1.0;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
        throw StructuralError("balance equations are singular; the graph is not strongly connected");
    }
    const Eigen::VectorXd x = lu.solve(b);
    std::vector<double> pi(x.data(), x.data() + size);
    for (double p : pi) {
        if (p < -1e-12) {
            throw StructuralError("balance equations have no non-negative solution");
        }
    }
    for (double& p : pi) {
        p = std::max(p, 0.0);
    }
    normalize(pi);
    const double residual = stationarity_residual(g, pi);
    return {std::move(pi), 0, residual};
}

}  // namespace rds
