#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rds/experiments.hpp"

namespace rds {

/// Location and spread of one sample. Quartiles use linear interpolation
/// between order statistics (position (n-1)q); whiskers are the most extreme
/// observations within 1.5 IQR of the quartiles.
struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    std::optional<double> sd;  // sample s.d. (n-1); absent for n < 2
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double lo_whisker = 0.0;
    double hi_whisker = 0.0;
};

/// NaN entries are skipped. Throws InputError when nothing remains.
SummaryStats summarize_samples(std::span<const double> samples);

double quantile(std::span<const double> sorted, double q);

struct CellKey {
    std::string model;
    double alpha = 0.0;
    double lambda = 0.0;
    std::optional<double> gamma;
    std::size_t walk_length = 0;
    std::size_t replications = 0;
    Seed seed = 0;
};

struct DtvRow {
    CellKey cell;
    Estimator estimator = Estimator::uni;
    SummaryStats stats;
    /// Mean of the per-estimator s.d. values over the cell.
    std::optional<double> sd_avg;
};

struct PropRow {
    CellKey cell;
    AllocationKind allocation = AllocationKind::uniform;
    double p_target = 0.0;
    double p_realized_mean = 0.0;
    Estimator estimator = Estimator::uni;
    SummaryStats stats;
};

CellKey cell_key(const ExperimentResult& result);

std::vector<DtvRow> summarize_dtv(const ExperimentResult& result);
std::vector<PropRow> summarize_proportions(const ExperimentResult& result);

void write_dtv_header(std::ostream& out);
void write_dtv_rows(std::ostream& out, std::span<const DtvRow> rows);
void write_prop_header(std::ostream& out);
void write_prop_rows(std::ostream& out, std::span<const PropRow> rows);

/// Fixed-point text used for every CSV number; "NA" for missing values.
std::string format_number(std::optional<double> value, int digits = 6);

}  // namespace rds
