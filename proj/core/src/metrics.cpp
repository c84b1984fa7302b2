// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace etascan {

MetricsReport evaluate(std::span<const EvalPair> pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) throw std::invalid_argument("evaluate: need at least 2 pairs");

    double ata_sum = 0.0;
    for (const auto& p : pairs) {
        if (!(p.ata_days > 0.0)) {
            throw std::invalid_argument("evaluate: ata_days must be > 0 (MAPE undefined)");
        }
        ata_sum += p.ata_days;
    }
    const double ata_mean = ata_sum / static_cast<double>(n);

    double abs_sum = 0.0, sq_sum = 0.0, ape_sum = 0.0, err_sum = 0.0, ss_tot = 0.0;
    for (const auto& p : pairs) {
        const double e = p.eta_days - p.ata_days;
        abs_sum += std::abs(e);
        sq_sum += e * e;
        ape_sum += std::abs(e) / p.ata_days;
        err_sum += e;
        ss_tot += (p.ata_days - ata_mean) * (p.ata_days - ata_mean);
    }
    if (ss_tot == 0.0) {
        throw std::invalid_argument("evaluate: all ata_days equal (R^2 undefined)");
    }

    MetricsReport r;
    r.n = n;
    const auto dn = static_cast<double>(n);
    r.mae = abs_sum / dn;
    r.mse = sq_sum / dn;
    r.rmse = std::sqrt(r.mse);
    r.mape = ape_sum / dn;
    r.acc = 1.0 - r.mape;
    r.r_squared = 1.0 - sq_sum / ss_tot;
    r.mu_e = err_sum / dn;
    double var = 0.0;
    for (const auto& p : pairs) {
        const double d = (p.eta_days - p.ata_days) - r.mu_e;
        var += d * d;
    }
    r.sigma_e = std::sqrt(var / dn);  // population standard deviation
    return r;
}

namespace {

struct TableRow {
    std::string label;
    MetricsReport report;
    bool aggregate = false;
};

std::vector<std::string> labels_in_order(std::span<const EvalPair> pairs) {
    std::vector<std::string> labels;
    for (const auto& p : pairs) {
        if (std::find(labels.begin(), labels.end(), p.trajectory_label) == labels.end()) {
            labels.push_back(p.trajectory_label);
        }
    }
    return labels;
}

std::vector<EvalPair> select(std::span<const EvalPair> pairs,
                             std::span<const std::string> labels) {
    std::vector<EvalPair> out;
    for (const auto& p : pairs) {
        if (std::find(labels.begin(), labels.end(), p.trajectory_label) != labels.end()) {
            out.push_back(p);
        }
    }
    return out;
}

// Rows per label in first-appearance order, grouped aggregates over pooled
// pairs, OVERALL over everything.
std::vector<TableRow> build_rows(std::span<const EvalPair> pairs,
                                 std::span<const TableGroup> groups) {
    const auto labels = labels_in_order(pairs);
    std::vector<TableRow> rows;

    if (groups.empty()) {
        for (const auto& label : labels) {
            rows.push_back({label, evaluate(select(pairs, {{label}})), false});
        }
    } else {
        for (const auto& group : groups) {
            for (const auto& label : labels) {
                if (std::find(group.members.begin(), group.members.end(), label) !=
                    group.members.end()) {
                    rows.push_back({label, evaluate(select(pairs, {{label}})), false});
                }
            }
            rows.push_back({group.label, evaluate(select(pairs, group.members)), true});
        }
    }
    if (labels.size() > 1 || !groups.empty()) {
        rows.push_back({"OVERALL", evaluate(pairs), true});
    }
    return rows;
}

std::string format_metric(double v, bool percent) {
    char buf[40];
    if (percent) {
        std::snprintf(buf, sizeof(buf), "%.2f%%", v * 100.0);
    } else {
        std::snprintf(buf, sizeof(buf), "%.3f", v);
    }
    return buf;
}

}  // namespace

std::string render_table(std::span<const EvalPair> pairs,
                         std::span<const TableGroup> groups) {
    if (pairs.empty()) throw std::invalid_argument("render_table: no pairs");
    const auto rows = build_rows(pairs, groups);

    const char* headers[] = {"Trajectory", "MAE",       "MSE",  "RMSE", "MAPE",
                             "ACC",        "R-Squared", "mu_e", "sigma_e"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        const auto& m = row.report;
        cells.push_back({row.label, format_metric(m.mae, false),
                         format_metric(m.mse, false), format_metric(m.rmse, false),
                         format_metric(m.mape, true), format_metric(m.acc, true),
                         format_metric(m.r_squared, false), format_metric(m.mu_e, false),
                         format_metric(m.sigma_e, false)});
    }

    std::size_t width[9];
    for (std::size_t c = 0; c < 9; ++c) {
        width[c] = std::string(headers[c]).size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }

    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < 9; ++c) {
            out << (c == 0 ? "" : "  ");
            // label column left-aligned, numbers right-aligned
            const auto pad = width[c] - row[c].size();
            if (c == 0) {
                out << row[c] << std::string(pad, ' ');
            } else {
                out << std::string(pad, ' ') << row[c];
            }
        }
        out << '\n';
    };
    std::vector<std::string> header_row(headers, headers + 9);
    emit_row(header_row);
    std::size_t total = 0;
    for (std::size_t c = 0; c < 9; ++c) total += width[c] + (c == 0 ? 0 : 2);
    out << std::string(total, '-') << '\n';
    for (const auto& row : cells) emit_row(row);
    return out.str();
}

void write_metrics_csv(std::ostream& out, std::span<const EvalPair> pairs,
                       std::span<const TableGroup> groups) {
    if (pairs.empty()) throw std::invalid_argument("write_metrics_csv: no pairs");
    out << "label,mae,mse,rmse,mape,acc,r2,mu_e,sigma_e,n\n";
    char buf[256];
    for (const auto& row : build_rows(pairs, groups)) {
        const auto& m = row.report;
        std::snprintf(buf, sizeof(buf),
                      ",%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%zu\n",
                      m.mae, m.mse, m.rmse, m.mape, m.acc, m.r_squared, m.mu_e,
                      m.sigma_e, m.n);
        out << row.label << buf;
    }
}

}  // namespace etascan
