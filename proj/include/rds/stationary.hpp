#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rds/graph.hpp"

namespace rds {

struct StationaryDistribution {
    std::vector<double> probs;
    std::size_t iterations = 0;
    /// Total variation distance between the last two iterates (power method)
    /// or the max-abs balance residual (dense solve).
    double residual = 0.0;
};

constexpr double default_power_tolerance = 1e-10;
constexpr std::size_t default_power_max_iter = 1'000'000;

/// Plain power iteration pi <- pi P of the simple random walk from the uniform
/// vector, stopping once successive iterates are within `tol` in total
/// variation. No damping: periodic graphs never converge and raise
/// ConvergenceError after `max_iter` iterations.
StationaryDistribution power_method(const DirectedGraph& g, double tol = default_power_tolerance,
                                    std::size_t max_iter = default_power_max_iter);

/// Dense solve of the balance equations with the normalization row. Intended
/// as an oracle for small graphs (n <= 2000).
StationaryDistribution solve_exact(const DirectedGraph& g);

constexpr std::size_t solve_exact_max_vertices = 2000;

/// One step of the walk's transition: returns pi P.
std::vector<double> transition_step(const DirectedGraph& g, std::span<const double> pi);

/// max_i |(pi P)_i - pi_i|
double stationarity_residual(const DirectedGraph& g, std::span<const double> pi);

}  // namespace rds
