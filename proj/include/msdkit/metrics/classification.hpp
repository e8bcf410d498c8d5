#pragma once

#include <string>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

struct ClassificationMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Accuracy/precision/recall/F1 with True as the positive class. Degenerate
// denominators yield 0 plus a warning.
inline ClassificationMetrics classification_metrics(const std::vector<QaRecord>& records,
                                                    std::vector<std::string>* warnings = nullptr) {
    if (records.empty()) raise(errc::input, "classification requires at least one record");

    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& r : records) {
        if (r.pred && r.gold) ++tp;
        else if (r.pred && !r.gold) ++fp;
        else if (!r.pred && r.gold) ++fn;
        else ++tn;
    }

    ClassificationMetrics m;
    m.accuracy = (tp + tn) / static_cast<double>(records.size());
    if (tp + fp > 0.0) {
        m.precision = tp / (tp + fp);
    } else if (warnings) {
        warnings->push_back("classification: no positive predictions, precision undefined");
    }
    if (tp + fn > 0.0) {
        m.recall = tp / (tp + fn);
    } else if (warnings) {
        warnings->push_back("classification: no positive golds, recall undefined");
    }
    if (m.precision + m.recall > 0.0)
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

} // namespace msdkit
