#include "scseg/metrics.hpp"

#include <stdexcept>
#include <utility>

namespace scseg {

Confusion confusion(const LabelMask& predicted, const LabelMask& truth) {
    if (predicted.width != truth.width || predicted.height != truth.height)
        throw std::invalid_argument("mask dimensions differ");
    Confusion c;
    for (std::size_t i = 0; i < predicted.labels.size(); ++i) {
        const bool p = predicted.labels[i] == Label::Foreground;
        const bool t = truth.labels[i] == Label::Foreground;
        if (p && t)
            ++c.tp;
        else if (p && !t)
            ++c.fp;
        else if (!p && t)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

Scores precision_recall_f1(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
    Scores s;
    s.precision = (tp + fp == 0) ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    s.recall = (tp + fn == 0) ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    // harmonic mean 2pr/(p+r), written on the counts so one division keeps it
    // exact; the vacuous all-zero case scores 1 like its factors
    if (tp == 0)
        s.f1 = (fp == 0 && fn == 0) ? 1.0 : 0.0;
    else
        s.f1 = 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
    return s;
}

MetricsReport evaluate_masks(const LabelMask& predicted, const LabelMask& truth,
                             std::string name) {
    MetricsReport report;
    report.name = std::move(name);
    report.counts = confusion(predicted, truth);
    report.scores = precision_recall_f1(report.counts.tp, report.counts.fp, report.counts.fn);
    return report;
}

MetricsReport aggregate(std::span<const MetricsReport> reports, AverageMode mode) {
    if (reports.empty()) throw std::invalid_argument("nothing to aggregate");
    MetricsReport agg;
    agg.name = mode == AverageMode::Macro ? "macro" : "micro";
    for (const MetricsReport& r : reports) {
        agg.counts.tp += r.counts.tp;
        agg.counts.fp += r.counts.fp;
        agg.counts.fn += r.counts.fn;
        agg.counts.tn += r.counts.tn;
    }
    if (mode == AverageMode::Micro) {
        agg.scores = precision_recall_f1(agg.counts.tp, agg.counts.fp, agg.counts.fn);
    } else {
        double p = 0.0, r = 0.0, f = 0.0;
        for (const MetricsReport& rep : reports) {
            p += rep.scores.precision;
            r += rep.scores.recall;
            f += rep.scores.f1;
        }
        const double n = static_cast<double>(reports.size());
        agg.scores = {p / n, r / n, f / n};
    }
    return agg;
}

}  // namespace scseg
