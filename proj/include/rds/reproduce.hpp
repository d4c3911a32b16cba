#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "rds/experiments.hpp"

namespace rds {

/// Published experiment grids that can be regenerated from scratch.
enum class ReproduceTarget { table2, table3, fig2, fig3, fig4 };

std::string_view to_string(ReproduceTarget target);
std::optional<ReproduceTarget> parse_reproduce_target(std::string_view name);

/// D_TV targets write dtv_results.csv, proportion targets prop_results.csv.
bool is_proportion_target(ReproduceTarget target);

struct ReproduceOptions {
    std::size_t replications = 200;
    Seed seed = 1;
    std::size_t n = 1000;
    std::size_t walk_length = 500;
    std::size_t threads = 0;
    bool sequential = false;
};

inline constexpr double er_alphas[] = {0.1, 0.25, 0.5, 0.75};
inline constexpr double er_lambdas[] = {5.0, 10.0, 15.0};
inline constexpr double power_law_gammas[] = {3.0, 3.5, 4.0, 4.5, 5.0};
/// (E[d_un], E[d_in + d_out]) giving alpha = 0.25, 0.5, 0.75 at total degree 16.
inline constexpr std::pair<double, double> power_law_degree_splits[] = {{12.0, 4.0}, {8.0, 8.0}, {4.0, 12.0}};

/// One spec per cell of the target grid. Cell i runs under
/// derive_seed(options.seed, i, ...) so cells are independent.
std::vector<ExperimentSpec> reproduce_specs(ReproduceTarget target, const ReproduceOptions& options);

ExperimentSpec er_cell(double alpha, double lambda, const ReproduceOptions& options);
ExperimentSpec power_law_cell(double e_d_un, double e_d_dir, double gamma, const ReproduceOptions& options);

}  // namespace rds
