#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rds/allocation.hpp"
#include "rds/diagnostics.hpp"
#include "rds/error.hpp"
#include "rds/estimators.hpp"
#include "rds/experiments.hpp"
#include "rds/generators.hpp"
#include "rds/graph.hpp"
#include "rds/io.hpp"
#include "rds/report.hpp"
#include "rds/reproduce.hpp"
#include "rds/stationary.hpp"
#include "rds/walk.hpp"

namespace rds::cli {

namespace {

using Action = std::function<void()>;

// Writes to `path`, or to `fallback` when the path is empty or "-".
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw InputError("cannot open " + path + " for writing");
    }
    body(file);
    file.flush();
    if (!file) {
        throw InputError("failed writing " + path);
    }
}

// Edge-list loading that reports what the builder dropped.
LoadedGraph load_graph(const std::string& path) {
    auto loaded = read_edge_list_file(path);
    if (loaded.log.self_loops_dropped > 0 || loaded.log.duplicates_collapsed > 0) {
        warn(path + ": dropped " + std::to_string(loaded.log.self_loops_dropped) + " self-loops and " +
             std::to_string(loaded.log.duplicates_collapsed) + " duplicate arcs");
    }
    return loaded;
}

std::string fmt(std::optional<double> x, int digits = 6) {
    return format_number(x, digits);
}

std::optional<double> directedness_or_none(const DirectedGraph& g) {
    try {
        return directedness(g);
    } catch (const UndefinedMeasureError&) {
        return std::nullopt;
    }
}

std::vector<Estimator> parse_estimators(const std::vector<std::string>& names) {
    std::vector<Estimator> result;
    for (const auto& name : names) {
        const auto e = parse_estimator(name);
        if (!e) {
            throw ParameterError("--estimators: unknown estimator '" + name + "'");
        }
        result.push_back(*e);
    }
    return result;
}

std::vector<AllocationScheme> parse_allocations(const std::vector<std::string>& names, double p) {
    std::vector<AllocationScheme> result;
    for (const auto& name : names) {
        const auto kind = parse_allocation(name);
        if (!kind) {
            throw ParameterError("--allocations: unknown allocation '" + name + "'");
        }
        result.push_back({*kind, p});
    }
    return result;
}

VertexId dense_id(const DirectedGraph& g, VertexId original) {
    const auto ids = g.original_ids();
    for (VertexId v = 0; v < ids.size(); ++v) {
        if (ids[v] == original) {
            return v;
        }
    }
    throw ParameterError("--start: vertex " + std::to_string(original) + " is not in the graph");
}

const std::map<std::string, DegreeRegime> regime_names{{"full", DegreeRegime::full},
                                                       {"out_only", DegreeRegime::out_only}};
const std::map<std::string, EInvMethod> e_inv_names{{"mean_of_inverse", EInvMethod::mean_of_inverse},
                                                    {"inverse_of_mean", EInvMethod::inverse_of_mean}};

// generate ------------------------------------------------------------------

struct GenerateOptions {
    std::size_t n = 1000;
    double alpha = 0.0;
    double lambda = 0.0;
    double e_d_un = 0.0;
    double e_d_dir = 0.0;
    double tau = 0.5;
    std::optional<double> gamma;
    std::optional<double> tau_un;
    std::optional<double> tau_in;
    std::optional<double> tau_out;
    std::size_t max_retries = default_max_retries;
    bool largest_scc = false;
    Seed seed = 0;
    std::string out;
};

void report_graph(std::ostream& err, const std::string& model, const DirectedGraph& g, std::size_t attempts) {
    std::size_t scc = 0;
    for (const auto& component : strongly_connected_components(g)) {
        scc = std::max(scc, component.size());
    }
    err << "generated " << model << ": vertices=" << g.size() << " arcs=" << g.arc_count()
        << " directedness=" << fmt(directedness_or_none(g), 4) << " largest_scc=" << scc
        << " attempts=" << attempts << "\n";
}

void emit_graph(const GenerateOptions& o, DirectedGraph g, const std::string& model, std::size_t attempts,
                std::ostream& out, std::ostream& err) {
    if (o.largest_scc && !g.empty()) {
        g = largest_scc(g);
    }
    report_graph(err, model, g, attempts);
    with_output(o.out, out, [&](std::ostream& s) { write_edge_list(s, g); });
}

void add_generate(CLI::App& app, Action& action, std::ostream& out, std::ostream& err) {
    auto opts = std::make_shared<GenerateOptions>();
    auto* gen = app.add_subcommand("generate", "Generate a random directed graph as an edge list");
    gen->require_subcommand(1);

    auto common = [opts](CLI::App* sub) {
        sub->add_option("--n", opts->n, "Number of vertices")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--seed", opts->seed, "Master seed")->required();
        sub->add_option("--out", opts->out, "Output edge list (default stdout)");
        sub->add_flag("--largest-scc", opts->largest_scc, "Keep only the largest strongly connected component");
    };

    auto* er = gen->add_subcommand("er", "Directed Erdos-Renyi graph");
    common(er);
    er->add_option("--alpha", opts->alpha, "Directedness")->required()->check(CLI::Range(0.0, 1.0));
    er->add_option("--lambda", opts->lambda, "Mean total degree")->required()->check(CLI::NonNegativeNumber);
    er->callback([opts, &action, &out, &err] {
        action = [opts, &out, &err] {
            const ErParams p{opts->n, opts->alpha, opts->lambda};
            emit_graph(*opts, gen_directed_er(p, opts->seed), "er", 1, out, err);
        };
    });

    auto* pl = gen->add_subcommand("pl", "Power-law static-model graph, redrawn until strongly connected");
    common(pl);
    pl->add_option("--edun", opts->e_d_un, "Expected undirected degree")->required()->check(CLI::NonNegativeNumber);
    pl->add_option("--eddir", opts->e_d_dir, "Expected directed degree (in + out)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    auto* tau = pl->add_option("--tau", opts->tau, "Weight exponent for all layers")
                    ->capture_default_str()
                    ->check(CLI::Range(0.0, 1.0));
    pl->add_option("--gamma", opts->gamma, "Degree exponent; sets tau = 1/(gamma-1)")
        ->excludes(tau)
        ->check(CLI::Range(2.0, 1e9));
    pl->add_option("--tau-un", opts->tau_un, "Undirected-layer exponent")->check(CLI::Range(0.0, 1.0));
    pl->add_option("--tau-in", opts->tau_in, "In-weight exponent")->check(CLI::Range(0.0, 1.0));
    pl->add_option("--tau-out", opts->tau_out, "Out-weight exponent")->check(CLI::Range(0.0, 1.0));
    pl->add_option("--max-retries", opts->max_retries, "Draws before giving up")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    pl->callback([opts, &action, &out, &err] {
        action = [opts, &out, &err] {
            const double base = opts->gamma ? tau_from_gamma(*opts->gamma) : opts->tau;
            const PowerLawParams p{opts->n, opts->e_d_un, opts->e_d_dir, opts->tau_un.value_or(base),
                                   opts->tau_in.value_or(base), opts->tau_out.value_or(base)};
            std::size_t attempts = 0;
            DirectedGraph g = gen_power_law(p, opts->seed, opts->max_retries, &attempts);
            emit_graph(*opts, std::move(g), "pl", attempts, out, err);
        };
    });
}

// stationary ----------------------------------------------------------------

struct StationaryOptions {
    std::string graph;
    double tol = default_power_tolerance;
    std::size_t max_iter = default_power_max_iter;
    std::string method = "power";
    std::string out;
};

void add_stationary(CLI::App& app, Action& action, std::ostream& out, std::ostream& err) {
    auto opts = std::make_shared<StationaryOptions>();
    auto* sub = app.add_subcommand("stationary", "Stationary distribution of the simple random walk");
    sub->add_option("--graph", opts->graph, "Edge list")->required();
    sub->add_option("--tol", opts->tol, "Total-variation stopping tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", opts->max_iter, "Iteration limit")->capture_default_str();
    sub->add_option("--method", opts->method, "power or exact")
        ->capture_default_str()
        ->check(CLI::IsMember({"power", "exact"}));
    sub->add_option("--out", opts->out, "Output file (default stdout)");
    sub->callback([opts, &action, &out, &err] {
        action = [opts, &out, &err] {
            const auto loaded = load_graph(opts->graph);
            const DirectedGraph& g = loaded.graph;
            if (!is_strongly_connected(g)) {
                warn("graph is not strongly connected; the stationary distribution may not be unique");
            }
            StationaryDistribution pi;
            if (opts->method == "exact") {
                pi = solve_exact(g);
            } else {
                pi = power_method(g, opts->tol, opts->max_iter);
                err << "power method: iterations=" << pi.iterations << " residual=" << pi.residual << "\n";
            }
            with_output(opts->out, out, [&](std::ostream& s) {
                s.precision(17);
                for (VertexId v = 0; v < g.size(); ++v) {
                    s << g.original_id(v) << ' ' << pi.probs[v] << '\n';
                }
            });
        };
    });
}

// walk ----------------------------------------------------------------------

struct WalkCliOptions {
    std::string graph;
    std::size_t length = 500;
    Seed seed = 0;
    std::optional<VertexId> start;
    std::string attributes;
    DegreeRegime regime = DegreeRegime::full;
    std::size_t burn_in = 0;
    std::string out;
};

void add_walk(CLI::App& app, Action& action, std::ostream& out, std::ostream& err) {
    auto opts = std::make_shared<WalkCliOptions>();
    auto* sub = app.add_subcommand("walk", "Record one simple random walk");
    sub->add_option("--graph", opts->graph, "Edge list")->required();
    sub->add_option("--s,--length", opts->length, "Recorded visits")->capture_default_str()->check(CLI::Range(2, 1 << 30));
    sub->add_option("--seed", opts->seed, "Walk seed")->required();
    sub->add_option("--start", opts->start, "Start vertex (original id); uniform when omitted");
    sub->add_option("--attributes", opts->attributes, "Attribute file supplying the recorded property");
    sub->add_option("--regime", opts->regime, "Reported degrees: full or out_only")
        ->transform(CLI::CheckedTransformer(regime_names));
    sub->add_option("--burn-in", opts->burn_in, "Steps discarded before recording")->capture_default_str();
    sub->add_option("--out", opts->out, "Output walk sample (default stdout)");
    sub->callback([opts, &action, &out, &err] {
        action = [opts, &out, &err] {
            const auto loaded = load_graph(opts->graph);
            const DirectedGraph& g = loaded.graph;
            std::vector<std::uint8_t> flags;
            if (!opts->attributes.empty()) {
                flags = read_attributes_file(opts->attributes, g);
            }
            WalkOptions wo;
            wo.burn_in = opts->burn_in;
            wo.regime = opts->regime;
            if (opts->start) {
                wo.start = dense_id(g, *opts->start);
            }
            const WalkSample w = run_walk(g, opts->length, opts->seed, flags, wo);
            err << "walk: visits=" << w.size() << " revisits=" << w.revisits << "\n";
            with_output(opts->out, out, [&](std::ostream& s) { write_walk_sample(s, w, &g); });
        };
    });
}

// estimate ------------------------------------------------------------------

struct EstimateOptions {
    std::string sample;
    std::string graph;
    std::optional<double> alpha;
    std::optional<double> lambda;
    std::vector<std::string> estimators;
    EInvMethod e_inv = EInvMethod::mean_of_inverse;
    std::string weights_out;
    std::string out;
};

std::optional<NetworkParams> known_params_from(std::optional<double> alpha, std::optional<double> lambda) {
    if (alpha.has_value() != lambda.has_value()) {
        throw ParameterError("--alpha and --lambda must be given together");
    }
    if (!alpha) {
        return std::nullopt;
    }
    NetworkParams p{*alpha, *lambda, ParamProvenance::true_model};
    p.validate();
    return p;
}

void run_estimate(const EstimateOptions& o, std::ostream& out) {
    WalkSample w = read_walk_sample_file(o.sample);
    std::optional<LoadedGraph> loaded;
    if (!o.graph.empty()) {
        loaded = load_graph(o.graph);
        w = reindex_sample(w, loaded->graph);
    }
    EstimationOptions eo;
    eo.e_inv_method = o.e_inv;
    eo.known_params = known_params_from(o.alpha, o.lambda);

    const bool explicit_list = !o.estimators.empty();
    std::vector<Estimator> chosen = explicit_list ? parse_estimators(o.estimators)
                                                  : std::vector<Estimator>(std::begin(all_estimators),
                                                                           std::end(all_estimators));
    std::vector<Estimator> usable;
    for (Estimator e : chosen) {
        const bool needs_full = e == Estimator::indeg || e == Estimator::ren_fd;
        const bool missing_full = needs_full && w.regime != DegreeRegime::full && !loaded;
        const bool missing_params = e == Estimator::ren_known_params && !eo.known_params;
        if (missing_full || missing_params) {
            if (explicit_list) {
                throw ParameterError(std::string("estimator ") + std::string(to_string(e)) +
                                     (missing_params ? " needs --alpha and --lambda"
                                                     : " needs full degrees or --graph"));
            }
            continue;
        }
        usable.push_back(e);
    }
    if (!o.weights_out.empty() && usable.size() != 1) {
        throw ParameterError("--weights-out needs exactly one estimator in --estimators");
    }

    std::optional<double> alpha_hat;
    std::optional<double> lambda_hat;
    try {
        const auto params = estimate_network_params(w);
        alpha_hat = params.alpha;
        lambda_hat = params.lambda;
    } catch (const DegenerateEstimateError& e) {
        warn(e.what());
    }

    std::optional<std::vector<double>> truth;
    if (loaded) {
        truth = power_method(loaded->graph).probs;
    }

    std::ostringstream table;
    table << "# s=" << w.size() << " revisits=" << w.revisits << " alpha_hat=" << fmt(alpha_hat)
          << " lambda_hat=" << fmt(lambda_hat) << "\n";
    table << "estimator,p_hat,dtv\n";
    for (Estimator e : usable) {
        const SelectionProbEstimate est =
            loaded ? estimate_on_graph(loaded->graph, w, e, eo) : estimate_on_sample(w, e, eo);
        std::optional<double> dtv;
        if (truth) {
            dtv = tv_distance(est.probs, *truth);
        }
        table << to_string(e) << ',' << fmt(estimate_proportion(w, est)) << ',' << fmt(dtv) << "\n";
        if (!o.weights_out.empty()) {
            with_output(o.weights_out, out, [&](std::ostream& s) {
                write_weights(s, est, loaded ? &loaded->graph : nullptr);
            });
        }
    }
    with_output(o.out, out, [&](std::ostream& s) { s << table.str(); });
}

void add_estimate(CLI::App& app, Action& action, std::ostream& out) {
    auto opts = std::make_shared<EstimateOptions>();
    auto* sub = app.add_subcommand("estimate", "Estimate selection probabilities and the property share from a walk");
    sub->add_option("--sample", opts->sample, "Walk sample file")->required();
    sub->add_option("--graph", opts->graph,
                    "Edge list; estimates then cover every vertex and D_TV to the true distribution is reported");
    sub->add_option("--alpha", opts->alpha, "Known directedness for ren_al")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--lambda", opts->lambda, "Known mean degree for ren_al")->check(CLI::NonNegativeNumber);
    sub->add_option("--estimators", opts->estimators, "Subset of uni outdeg indeg ren_fd ren_al ren")->delimiter(',');
    sub->add_option("--e-inv", opts->e_inv, "mean_of_inverse or inverse_of_mean")
        ->transform(CLI::CheckedTransformer(e_inv_names));
    sub->add_option("--weights-out", opts->weights_out, "Write the selection probabilities of the single estimator");
    sub->add_option("--out", opts->out, "Output table (default stdout)");
    sub->callback([opts, &action, &out] { action = [opts, &out] { run_estimate(*opts, out); }; });
}

// experiments ---------------------------------------------------------------

struct ExperimentOptions {
    std::string model = "er";
    std::size_t n = 1000;
    std::optional<double> alpha;
    std::optional<double> lambda;
    std::optional<double> e_d_un;
    std::optional<double> e_d_dir;
    double tau = 0.5;
    std::optional<double> gamma;
    std::size_t max_retries = default_max_retries;
    std::string graph;
    std::string attributes;
    bool largest_scc = false;
    std::size_t walk_length = 500;
    std::size_t replications = 200;
    Seed seed = 0;
    std::size_t threads = 0;
    bool sequential = false;
    std::size_t burn_in = 0;
    std::vector<std::string> estimators;
    EInvMethod e_inv = EInvMethod::mean_of_inverse;
    double tol = default_power_tolerance;
    double p = 0.5;
    std::vector<std::string> allocations;
    std::string out;
    std::string config;
};

CLI::App* add_experiment_options(CLI::App& app, const std::string& name, const std::string& description,
                                 ExperimentOptions& o, bool proportion) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", o.config, "Read key=value options from a file; command-line flags win");
    sub->add_option("--model", o.model, "er, pl, or external")
        ->capture_default_str()
        ->check(CLI::IsMember({"er", "pl", "external"}));
    sub->add_option("--n", o.n, "Vertices of generated graphs")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--alpha", o.alpha, "ER directedness, or known directedness of an external graph")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--lambda", o.lambda, "ER mean degree, or known mean degree of an external graph")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--edun", o.e_d_un, "Power-law expected undirected degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--eddir", o.e_d_dir, "Power-law expected directed degree")->check(CLI::NonNegativeNumber);
    auto* tau = sub->add_option("--tau", o.tau, "Power-law weight exponent")
                    ->capture_default_str()
                    ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--gamma", o.gamma, "Power-law degree exponent")->excludes(tau)->check(CLI::Range(2.0, 1e9));
    sub->add_option("--max-retries", o.max_retries, "Power-law draws per replication")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--graph", o.graph, "External edge list");
    sub->add_flag("--largest-scc", o.largest_scc, "Restrict an external graph to its largest SCC");
    sub->add_option("--s,--walk-length", o.walk_length, "Walk length")->capture_default_str();
    sub->add_option("--r,--replications", o.replications, "Replications")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Master seed")->required();
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)")->capture_default_str();
    sub->add_flag("--sequential", o.sequential, "Run replications on the calling thread");
    sub->add_option("--burn-in", o.burn_in, "Walk steps discarded before recording")->capture_default_str();
    sub->add_option("--estimators", o.estimators, "Subset of uni outdeg indeg ren_fd ren_al ren")->delimiter(',');
    sub->add_option("--e-inv", o.e_inv, "mean_of_inverse or inverse_of_mean")
        ->transform(CLI::CheckedTransformer(e_inv_names));
    sub->add_option("--tol", o.tol, "Power-method tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    if (proportion) {
        sub->add_option("--p", o.p, "Target property share")->capture_default_str()->check(CLI::Range(0.0, 1.0));
        sub->add_option("--allocations", o.allocations,
                        "Subset of in_deg out_deg undirected in_directed out_directed directed uniform")
            ->delimiter(',');
        sub->add_option("--attributes", o.attributes, "Attribute file of an external graph");
    }
    sub->add_option("--out", o.out, "Output CSV (default stdout)");
    return sub;
}

ExperimentSpec build_spec(const ExperimentOptions& o, bool proportion) {
    ExperimentSpec spec;
    spec.walk_length = o.walk_length;
    spec.replications = o.replications;
    spec.master_seed = o.seed;
    spec.threads = o.threads;
    spec.sequential = o.sequential;
    spec.burn_in = o.burn_in;
    spec.e_inv_method = o.e_inv;
    spec.power_tolerance = o.tol;
    spec.max_retries = o.max_retries;
    if (!o.estimators.empty()) {
        spec.estimators = parse_estimators(o.estimators);
    }

    if (o.model == "er") {
        if (!o.alpha || !o.lambda) {
            throw ParameterError("--model er requires --alpha and --lambda");
        }
        spec.model = ModelKind::directed_er;
        spec.er = ErParams{o.n, *o.alpha, *o.lambda};
    } else if (o.model == "pl") {
        if (!o.e_d_un || !o.e_d_dir) {
            throw ParameterError("--model pl requires --edun and --eddir");
        }
        const double tau = o.gamma ? tau_from_gamma(*o.gamma) : o.tau;
        spec.model = ModelKind::power_law;
        spec.power_law = PowerLawParams{o.n, *o.e_d_un, *o.e_d_dir, tau, tau, tau};
    } else {
        if (o.graph.empty()) {
            throw ParameterError("--model external requires --graph");
        }
        spec.model = ModelKind::external_graph;
        DirectedGraph g = load_graph(o.graph).graph;
        if (o.largest_scc) {
            g = largest_scc(g);
        }
        if (proportion) {
            if (o.attributes.empty()) {
                throw ParameterError("--model external requires --attributes for prop-experiment");
            }
            spec.external_flags = read_attributes_file(o.attributes, g);
        }
        spec.external = std::make_shared<const DirectedGraph>(std::move(g));
        spec.known_params = known_params_from(o.alpha, o.lambda);
        if (!spec.known_params) {
            std::erase(spec.estimators, Estimator::ren_known_params);
        }
    }
    if (proportion && spec.model != ModelKind::external_graph) {
        std::vector<std::string> names = o.allocations;
        if (names.empty()) {
            for (AllocationKind kind : degree_allocations) {
                names.emplace_back(to_string(kind));
            }
        }
        spec.alloc_schemes = parse_allocations(names, o.p);
    }
    spec.validate();
    return spec;
}

void add_experiments(CLI::App& app, Action& action, std::ostream& out, std::ostream& err) {
    auto dtv = std::make_shared<ExperimentOptions>();
    auto* dtv_sub = add_experiment_options(app, "dtv-experiment",
                                           "Replicated D_TV of the estimators against the true stationary distribution",
                                           *dtv, false);
    dtv_sub->callback([dtv, &action, &out, &err] {
        action = [dtv, &out, &err] {
            const auto result = run_dtv_experiment(build_spec(*dtv, false));
            const auto rows = summarize_dtv(result);
            with_output(dtv->out, out, [&](std::ostream& s) {
                write_dtv_header(s);
                write_dtv_rows(s, rows);
            });
            err << "dtv-experiment: replications=" << result.records.size() << " seconds=" << result.runtime_seconds
                << "\n";
        };
    });

    auto prop = std::make_shared<ExperimentOptions>();
    auto* prop_sub = add_experiment_options(app, "prop-experiment",
                                            "Replicated deviations of the property-share estimates", *prop, true);
    prop_sub->callback([prop, &action, &out, &err] {
        action = [prop, &out, &err] {
            const auto result = run_proportion_experiment(build_spec(*prop, true));
            const auto rows = summarize_proportions(result);
            with_output(prop->out, out, [&](std::ostream& s) {
                write_prop_header(s);
                write_prop_rows(s, rows);
            });
            err << "prop-experiment: replications=" << result.records.size()
                << " seconds=" << result.runtime_seconds << "\n";
        };
    });
}

// reproduce -----------------------------------------------------------------

struct ReproduceCliOptions {
    std::string target;
    std::size_t replications = 200;
    bool paper_scale = false;
    Seed seed = 0;
    std::string out_dir = ".";
    std::size_t threads = 0;
    bool sequential = false;
    std::size_t n = 1000;
    std::size_t walk_length = 500;
};

void run_reproduce(const ReproduceCliOptions& o, std::ostream& err) {
    const auto target = parse_reproduce_target(o.target);
    if (!target) {
        throw ParameterError("unknown reproduce target '" + o.target + "'");
    }
    ReproduceOptions ro;
    ro.replications = o.paper_scale ? 1000 : o.replications;
    ro.seed = o.seed;
    ro.threads = o.threads;
    ro.sequential = o.sequential;
    ro.n = o.n;
    ro.walk_length = o.walk_length;
    const auto specs = reproduce_specs(*target, ro);

    std::filesystem::create_directories(o.out_dir);
    const bool proportion = is_proportion_target(*target);
    const auto path = std::filesystem::path(o.out_dir) / (proportion ? "prop_results.csv" : "dtv_results.csv");
    std::ostringstream csv;
    proportion ? write_prop_header(csv) : write_dtv_header(csv);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (proportion) {
            const auto result = run_proportion_experiment(specs[i]);
            write_prop_rows(csv, summarize_proportions(result));
            err << to_string(*target) << ": cell " << i + 1 << "/" << specs.size() << " "
                << result.runtime_seconds << "s\n";
        } else {
            const auto result = run_dtv_experiment(specs[i]);
            write_dtv_rows(csv, summarize_dtv(result));
            err << to_string(*target) << ": cell " << i + 1 << "/" << specs.size() << " "
                << result.runtime_seconds << "s\n";
        }
    }
    with_output(path.string(), err, [&](std::ostream& s) { s << csv.str(); });
    err << "wrote " << path.string() << "\n";
}

void add_reproduce(CLI::App& app, Action& action, std::ostream& err) {
    auto opts = std::make_shared<ReproduceCliOptions>();
    auto* sub = app.add_subcommand("reproduce", "Regenerate the data behind a published table or figure");
    sub->add_option("target", opts->target, "table2, table3, fig2, fig3, or fig4")
        ->required()
        ->check(CLI::IsMember({"table2", "table3", "fig2", "fig3", "fig4"}));
    auto* r = sub->add_option("--r,--replications", opts->replications, "Replications per cell")
                  ->capture_default_str()
                  ->check(CLI::PositiveNumber);
    sub->add_flag("--paper-scale", opts->paper_scale, "Use 1000 replications per cell")->excludes(r);
    sub->add_option("--seed", opts->seed, "Master seed")->required();
    sub->add_option("--out-dir", opts->out_dir, "Directory for the CSV")->capture_default_str();
    sub->add_option("--threads", opts->threads, "Worker threads (0: all cores)")->capture_default_str();
    sub->add_flag("--sequential", opts->sequential, "Run replications on the calling thread");
    sub->add_option("--n", opts->n, "Vertices per generated graph")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--s,--walk-length", opts->walk_length, "Walk length")->capture_default_str();
    sub->callback([opts, &action, &err] { action = [opts, &err] { run_reproduce(*opts, err); }; });
}

// Appends "--key=value" for every config-file entry not already given on
// the command line, so explicit flags override the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& token = args[i];
        if (token.rfind("--", 0) != 0) {
            continue;
        }
        const auto eq = token.find('=');
        const std::string name = token.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
        given.insert(name);
        if (name == "config") {
            if (eq != std::string::npos) {
                path = token.substr(eq + 1);
            } else if (i + 1 < args.size()) {
                path = args[i + 1];
            }
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream file(path);
    if (!file) {
        throw CLI::FileError::Missing(path);
    }
    for (const auto& item : CLI::ConfigTOML().from_config(file)) {
        if (item.name == "++" || item.name == "--" || given.contains(item.name)) {
            continue;
        }
        std::string value;
        for (const auto& input : item.inputs) {
            value += (value.empty() ? "" : ",") + input;
        }
        args.push_back("--" + item.name + "=" + value);
    }
    return args;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random-walk RDS simulation and estimation on partially directed networks", "rds"};
    app.require_subcommand(1);
    Action action;
    add_generate(app, action, out, err);
    add_stationary(app, action, out, err);
    add_walk(app, action, out, err);
    add_estimate(app, action, out);
    add_experiments(app, action, out, err);
    add_reproduce(app, action, err);

    const auto previous_sink = set_warning_sink([&err](const std::string& message) {
        err << "warning: " << message << "\n";
    });
    int code = exit_ok;
    try {
        auto args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (action) {
            action();
        }
    } catch (const CLI::ParseError& e) {
        const int parsed = app.exit(e, out, err);
        code = parsed == 0 ? exit_ok : exit_usage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        code = exit_usage;
    } catch (const AllocationError& e) {
        err << "error: " << e.what() << "\n";
        code = exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        code = exit_runtime;
    }
    set_warning_sink(previous_sink);
    return code;
}

}  // namespace rds::cli
