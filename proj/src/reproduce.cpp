#include "rds/reproduce.hpp"

namespace rds {

namespace {

constexpr std::uint64_t cell_stream = 0xce11;

std::vector<AllocationScheme> degree_schemes(double p) {
    std::vector<AllocationScheme> schemes;
    for (AllocationKind kind : degree_allocations) {
        schemes.push_back({kind, p});
    }
    return schemes;
}

void apply_common(ExperimentSpec& spec, const ReproduceOptions& options) {
    spec.replications = options.replications;
    spec.walk_length = options.walk_length;
    spec.threads = options.threads;
    spec.sequential = options.sequential;
}

}  // namespace

std::string_view to_string(ReproduceTarget target) {
    switch (target) {
        case ReproduceTarget::table2: return "table2";
        case ReproduceTarget::table3: return "table3";
        case ReproduceTarget::fig2: return "fig2";
        case ReproduceTarget::fig3: return "fig3";
        case ReproduceTarget::fig4: return "fig4";
    }
    return "?";
}

std::optional<ReproduceTarget> parse_reproduce_target(std::string_view name) {
    for (auto t : {ReproduceTarget::table2, ReproduceTarget::table3, ReproduceTarget::fig2, ReproduceTarget::fig3,
                   ReproduceTarget::fig4}) {
        if (to_string(t) == name) {
            return t;
        }
    }
    return std::nullopt;
}

bool is_proportion_target(ReproduceTarget target) {
    return target == ReproduceTarget::fig2 || target == ReproduceTarget::fig4;
}

ExperimentSpec er_cell(double alpha, double lambda, const ReproduceOptions& options) {
    ExperimentSpec spec;
    spec.model = ModelKind::directed_er;
    spec.er = ErParams{options.n, alpha, lambda};
    apply_common(spec, options);
    return spec;
}

ExperimentSpec power_law_cell(double e_d_un, double e_d_dir, double gamma, const ReproduceOptions& options) {
    ExperimentSpec spec;
    spec.model = ModelKind::power_law;
    const double tau = tau_from_gamma(gamma);
    spec.power_law = PowerLawParams{options.n, e_d_un, e_d_dir, tau, tau, tau};
    apply_common(spec, options);
    return spec;
}

std::vector<ExperimentSpec> reproduce_specs(ReproduceTarget target, const ReproduceOptions& options) {
    std::vector<ExperimentSpec> specs;
    switch (target) {
        case ReproduceTarget::table2:
        case ReproduceTarget::table3:
            for (double alpha : er_alphas) {
                for (double lambda : er_lambdas) {
                    auto spec = er_cell(alpha, lambda, options);
                    if (target == ReproduceTarget::table2) {
                        spec.estimators = {Estimator::uni, Estimator::outdeg, Estimator::indeg, Estimator::ren_fd};
                    } else {
                        spec.estimators = {Estimator::uni, Estimator::outdeg, Estimator::ren_known_params,
                                           Estimator::ren};
                    }
                    specs.push_back(std::move(spec));
                }
            }
            break;
        case ReproduceTarget::fig2: {
            auto spec = er_cell(0.75, 10.0, options);
            spec.alloc_schemes = degree_schemes(0.5);
            specs.push_back(std::move(spec));
            break;
        }
        case ReproduceTarget::fig3:
            for (const auto& [un, dir] : power_law_degree_splits) {
                for (double gamma : power_law_gammas) {
                    specs.push_back(power_law_cell(un, dir, gamma, options));
                }
            }
            break;
        case ReproduceTarget::fig4: {
            auto spec = power_law_cell(4.0, 12.0, 3.0, options);
            spec.alloc_schemes = degree_schemes(0.2);
            specs.push_back(std::move(spec));
            break;
        }
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        specs[i].master_seed = derive_seed(options.seed, i, cell_stream);
    }
    return specs;
}

}  // namespace rds
