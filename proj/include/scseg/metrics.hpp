#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "scseg/image.hpp"

namespace scseg {

struct Confusion {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;
};

// Per-pixel confusion counts with foreground as the positive class.
// Throws std::invalid_argument on dimension mismatch.
Confusion confusion(const LabelMask& predicted, const LabelMask& truth);

struct Scores {
    double precision = 1.0;
    double recall = 1.0;
    double f1 = 1.0;
};

// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = harmonic mean of the two.
// Empty denominators score 1 (nothing predicted / nothing to find is vacuously
// perfect); f1 = 0 when precision + recall = 0.
Scores precision_recall_f1(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);

struct MetricsReport {
    std::string name;
    Confusion counts;
    Scores scores;
};

MetricsReport evaluate_masks(const LabelMask& predicted, const LabelMask& truth,
                             std::string name = {});

enum class AverageMode { Macro, Micro };

// Macro averages the per-image scores; micro pools the counts first and
// scores the pool. Counts are summed either way. Throws on an empty list.
MetricsReport aggregate(std::span<const MetricsReport> reports,
                        AverageMode mode = AverageMode::Macro);

}  // namespace scseg
