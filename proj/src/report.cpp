#include "rds/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "rds/error.hpp"

namespace rds {

double quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw InputError("quantile of an empty sample");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(pos));
    const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lower);
    return sorted[lower] + frac * (sorted[upper] - sorted[lower]);
}

SummaryStats summarize_samples(std::span<const double> samples) {
    std::vector<double> values;
    values.reserve(samples.size());
    for (double x : samples) {
        if (!std::isnan(x)) {
            values.push_back(x);
        }
    }
    if (values.empty()) {
        throw InputError("cannot summarize an empty sample");
    }
    std::sort(values.begin(), values.end());

    SummaryStats s;
    s.count = values.size();
    double sum = 0.0;
    for (double x : values) {
        sum += x;
    }
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double x : values) {
            ss += (x - s.mean) * (x - s.mean);
        }
        s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    const double reach = 1.5 * (s.q3 - s.q1);
    s.lo_whisker = *std::lower_bound(values.begin(), values.end(), s.q1 - reach);
    s.hi_whisker = *(std::upper_bound(values.begin(), values.end(), s.q3 + reach) - 1);
    return s;
}

std::string format_number(std::optional<double> value, int digits) {
    if (!value || std::isnan(*value)) {
        return "NA";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, *value);
    return buffer;
}

CellKey cell_key(const ExperimentResult& result) {
    const auto& spec = result.spec;
    CellKey key;
    key.model = std::string(to_string(spec.model));
    key.alpha = spec.reported_alpha();
    key.lambda = spec.reported_lambda();
    key.gamma = spec.gamma();
    key.walk_length = spec.walk_length;
    key.replications = spec.replications;
    key.seed = spec.master_seed;
    return key;
}

std::vector<DtvRow> summarize_dtv(const ExperimentResult& result) {
    const CellKey key = cell_key(result);
    std::vector<DtvRow> rows;
    double sd_sum = 0.0;
    std::size_t sd_count = 0;
    for (std::size_t e = 0; e < result.estimators.size(); ++e) {
        DtvRow row{key, result.estimators[e], summarize_samples(result.dtv[e]), std::nullopt};
        if (row.stats.sd) {
            sd_sum += *row.stats.sd;
            ++sd_count;
        }
        rows.push_back(std::move(row));
    }
    if (sd_count > 0) {
        for (auto& row : rows) {
            row.sd_avg = sd_sum / static_cast<double>(sd_count);
        }
    }
    return rows;
}

std::vector<PropRow> summarize_proportions(const ExperimentResult& result) {
    const CellKey key = cell_key(result);
    std::vector<PropRow> rows;
    for (std::size_t a = 0; a < result.deviations.size(); ++a) {
        const auto& scheme = result.spec.alloc_schemes[a];
        const double realized = summarize_samples(result.realized_p[a]).mean;
        for (std::size_t e = 0; e < result.estimators.size(); ++e) {
            rows.push_back(PropRow{key, scheme.kind, scheme.target_p, realized, result.estimators[e],
                                   summarize_samples(result.deviations[a][e])});
        }
    }
    return rows;
}

namespace {

void write_cell(std::ostream& out, const CellKey& c) {
    out << c.model << ',' << format_number(c.alpha, 4) << ',' << format_number(c.lambda, 4) << ','
        << format_number(c.gamma, 4);
}

}  // namespace

void write_dtv_header(std::ostream& out) {
    out << "model,alpha,lambda,gamma,estimator,mean_dtv,sd_dtv,replications,seed,walk_length,sd_avg\n";
}

void write_dtv_rows(std::ostream& out, std::span<const DtvRow> rows) {
    for (const auto& row : rows) {
        write_cell(out, row.cell);
        out << ',' << to_string(row.estimator) << ',' << format_number(row.stats.mean) << ','
            << format_number(row.stats.sd) << ',' << row.cell.replications << ',' << row.cell.seed << ','
            << row.cell.walk_length << ',' << format_number(row.sd_avg) << '\n';
    }
}

void write_prop_header(std::ostream& out) {
    out << "# quartiles: linear interpolation; whiskers: most extreme value within 1.5*IQR of the quartiles\n";
    out << "model,alpha,lambda,gamma,walk_length,allocation,p_target,p_realized_mean,estimator,mean_dev,sd_dev,"
           "q1,median,q3,lo_whisker,hi_whisker,replications,seed\n";
}

void write_prop_rows(std::ostream& out, std::span<const PropRow> rows) {
    for (const auto& row : rows) {
        write_cell(out, row.cell);
        out << ',' << row.cell.walk_length << ',' << to_string(row.allocation) << ','
            << format_number(row.p_target, 4) << ',' << format_number(row.p_realized_mean) << ','
            << to_string(row.estimator) << ',' << format_number(row.stats.mean) << ','
            << format_number(row.stats.sd) << ',' << format_number(row.stats.q1) << ','
            << format_number(row.stats.median) << ',' << format_number(row.stats.q3) << ','
            << format_number(row.stats.lo_whisker) << ',' << format_number(row.stats.hi_whisker) << ','
            << row.cell.replications << ',' << row.cell.seed << '\n';
    }
}

}  // namespace rds
