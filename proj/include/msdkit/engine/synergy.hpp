#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

// Per-token synergy values. l1 rewards per-pathway confidence, l2 averages
// the evidence, l3/l4/l5 measure cross-pathway disagreement. The stored
// disagreement values keep their natural sign (l3 and l5 are non-negative
// by construction, l4 is non-negative for even theta); the combined total
// subtracts them so that disagreement lowers a token's synergy.
struct SynergyBreakdown {
    double basic = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double l4 = 0.0;
    double l5 = 0.0;
    double total = 0.0;
};

namespace detail {

inline double ipow(double base, int exponent) {
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

} // namespace detail

// Log-softmax. Entries come back <= 0 and exp-sum to 1; invariant under
// adding a constant to every input. Max-shifted so huge raw logits cannot
// overflow the exp.
inline std::vector<double> normalize_pathway(std::span<const double> logits) {
    if (logits.empty()) raise(errc::input, "cannot normalize an empty logit vector");
    const double max = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double v : logits) sum += std::exp(v - max);
    const double log_sum = max + std::log(sum);
    std::vector<double> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - log_sum;
    return out;
}

// Basic synergy per token: mean of the two normalized log-scores plus
// gamma times their minimum.
inline std::vector<double> basic_synergy(std::span<const double> visual_logprob,
                                         std::span<const double> motion_logprob,
                                         double gamma) {
    if (visual_logprob.size() != motion_logprob.size())
        raise(errc::input, "pathway vectors differ in length");
    std::vector<double> out(visual_logprob.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double lv = visual_logprob[i];
        const double lm = motion_logprob[i];
        out[i] = 0.5 * (lv + lm) + gamma * std::min(lv, lm);
    }
    return out;
}

// Five-component synergy per token. With d = lv - lm:
//   l1 = a1*exp(lv) + a2*exp(lm)
//   l2 = a3*(lv + lm)/2
//   l3 = a4*ln(1 + |d|)
//   l4 = a5*d^theta
//   l5 = a6*d^2
//   total = l1 + l2 - l3 - l4 - l5
inline std::vector<SynergyBreakdown> synergy_components(std::span<const double> visual_logprob,
                                                        std::span<const double> motion_logprob,
                                                        const SynergyParams& params) {
    if (visual_logprob.size() != motion_logprob.size())
        raise(errc::input, "pathway vectors differ in length");
    std::vector<SynergyBreakdown> out(visual_logprob.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double lv = visual_logprob[i];
        const double lm = motion_logprob[i];
        const double d = lv - lm;
        SynergyBreakdown& b = out[i];
        b.basic = 0.5 * (lv + lm) + params.gamma * std::min(lv, lm);
        b.l1 = params.alpha1 * std::exp(lv) + params.alpha2 * std::exp(lm);
        b.l2 = params.alpha3 * 0.5 * (lv + lm);
        b.l3 = params.alpha4 * std::log1p(std::fabs(d));
        b.l4 = params.alpha5 * detail::ipow(d, params.theta);
        b.l5 = params.alpha6 * d * d;
        b.total = b.l1 + b.l2 - b.l3 - b.l4 - b.l5;
    }
    return out;
}

inline std::vector<SynergyBreakdown> synergy_components(const DualStepInput& step,
                                                        const SynergyParams& params) {
    const auto lv = normalize_pathway(step.visual);
    const auto lm = normalize_pathway(step.motion);
    return synergy_components(lv, lm, params);
}

} // namespace msdkit
