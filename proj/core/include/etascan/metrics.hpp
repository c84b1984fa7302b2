// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_METRICS_HPP
#define ETASCAN_METRICS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace etascan {

/// One (actual, predicted) arrival-time pair, in days of travelling time.
struct EvalPair {
    double ata_days = 0.0;
    double eta_days = 0.0;
    std::string trajectory_label;
};

/// The eight evaluation statistics for a set of (ATA, ETA) pairs.
/// By construction rmse = sqrt(mse), acc = 1 - mape, and
/// sigma_e^2 + mu_e^2 = mse (population standard deviation).
struct MetricsReport {
    double mae = 0.0;      // days
    double mse = 0.0;      // days^2
    double rmse = 0.0;     // days
    double mape = 0.0;     // fraction
    double acc = 0.0;      // fraction, 1 - mape
    double r_squared = 0.0;
    double mu_e = 0.0;     // days
    double sigma_e = 0.0;  // days
    std::size_t n = 0;
};

/// Computes the report over prediction errors e_i = eta_i - ata_i.
/// Throws std::invalid_argument when n < 2, when any ata <= 0 (MAPE
/// undefined), or when all ata are equal (R^2 denominator zero).
MetricsReport evaluate(std::span<const EvalPair> pairs);

/// A named aggregate row spanning the listed trajectory labels.
struct TableGroup {
    std::string label;
    std::vector<std::string> members;
};

/// Renders the evaluation table: one row per trajectory label
/// (first-appearance order), one aggregate row per group, and an OVERALL row
/// when there is more than one label. Aggregate rows are computed by pooling
/// the raw pairs of their member labels, not by averaging member rows.
/// MAPE/ACC are percentages with 2 decimals; other statistics use 3 decimals.
std::string render_table(std::span<const EvalPair> pairs,
                         std::span<const TableGroup> groups = {});

/// Same rows as render_table, machine-readable:
/// label,mae,mse,rmse,mape,acc,r2,mu_e,sigma_e,n (fractions, full precision).
void write_metrics_csv(std::ostream& out, std::span<const EvalPair> pairs,
                       std::span<const TableGroup> groups = {});

}  // namespace etascan

#endif  // ETASCAN_METRICS_HPP
