#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/engine/synergy.hpp"

namespace msdkit {

enum class ScoreMode { five_component, basic };
enum class ChoiceMode { greedy, sample };

struct DecodeConfig {
    SynergyParams params{};
    ScoreMode score_mode = ScoreMode::five_component;
    ChoiceMode choice = ChoiceMode::greedy;
    std::uint64_t seed = 0; // used in sample mode only
    std::size_t max_steps = std::numeric_limits<std::size_t>::max();
    std::optional<TokenId> stop_token;

    void validate() const {
        params.validate();
        if (max_steps < 1) raise(errc::value, "max_steps must be >= 1");
    }
};

struct StepResult {
    TokenId chosen = 0;
    std::vector<TokenId> retained;            // ascending token ids, never empty
    std::vector<double> distribution;         // aligned with retained, sums to 1
    std::vector<SynergyBreakdown> breakdown;  // one entry per vocabulary token
};

namespace detail {

// Index of the first maximum, i.e. lowest-id tie-break.
inline std::size_t argmax(std::span<const double> values) {
    return static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
}

} // namespace detail

// Distribution pruning. A token survives when its visual-pathway probability
// rho = exp(visual log-score) clears the synergy-adjusted threshold
// beta*(1 + S). An empty survivor set falls back to the visual argmax
// singleton so decoding always emits a token.
inline std::vector<TokenId> prune_vocab(std::span<const double> visual_logprob,
                                        std::span<const double> totals, double beta) {
    if (visual_logprob.size() != totals.size())
        raise(errc::input, "visual scores and synergy totals differ in length");
    std::vector<TokenId> retained;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        const double rho = std::exp(visual_logprob[i]);
        if (rho >= beta * (1.0 + totals[i])) retained.push_back(static_cast<TokenId>(i));
    }
    if (retained.empty())
        retained.push_back(static_cast<TokenId>(detail::argmax(visual_logprob)));
    return retained;
}

// Softmax of the synergy totals restricted to the retained set.
inline std::vector<double> msd_distribution(std::span<const double> totals,
                                            std::span<const TokenId> retained) {
    if (retained.empty()) raise(errc::input, "retained set must be non-empty");
    double max = -std::numeric_limits<double>::infinity();
    for (TokenId id : retained) max = std::max(max, totals[id]);
    std::vector<double> probs(retained.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < retained.size(); ++i) {
        probs[i] = std::exp(totals[retained[i]] - max);
        sum += probs[i];
    }
    for (double& p : probs) p /= sum;
    return probs;
}

// One decode step: normalize both pathways, score, prune, renormalize,
// choose. Greedy picks the most probable retained token (lowest id on
// ties); sample draws from the pruned distribution with a generator seeded
// by config seed and step index, so repeated calls agree.
inline StepResult decode_step(const DualStepInput& input, const DecodeConfig& cfg) {
    if (input.visual.empty()) raise(errc::input, "decode step has an empty vocabulary");
    if (input.visual.size() != input.motion.size())
        raise(errc::input, "visual and motion vectors differ in length");

    const auto lv = normalize_pathway(input.visual);
    const auto lm = normalize_pathway(input.motion);

    StepResult result;
    result.breakdown = synergy_components(lv, lm, cfg.params);

    std::vector<double> totals(result.breakdown.size());
    for (std::size_t i = 0; i < totals.size(); ++i)
        totals[i] = cfg.score_mode == ScoreMode::basic ? result.breakdown[i].basic
                                                       : result.breakdown[i].total;

    result.retained = prune_vocab(lv, totals, cfg.params.beta);
    result.distribution = msd_distribution(totals, result.retained);

    if (cfg.choice == ChoiceMode::greedy) {
        result.chosen = result.retained[detail::argmax(result.distribution)];
    } else {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(input.step));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double draw = unit(rng);
        double cumulative = 0.0;
        result.chosen = result.retained.back();
        for (std::size_t i = 0; i < result.retained.size(); ++i) {
            cumulative += result.distribution[i];
            if (draw <= cumulative) {
                result.chosen = result.retained[i];
                break;
            }
        }
    }
    return result;
}

// Greedy/sampling decode over a pre-computed stream of dual-pathway steps.
// Stops after max_steps, at stream end, or after emitting stop_token.
inline std::vector<TokenId> decode_sequence(std::span<const DualStepInput> stream,
                                            const DecodeConfig& cfg) {
    if (stream.empty()) raise(errc::input, "decode stream is empty");
    cfg.validate();
    std::vector<TokenId> tokens;
    for (const DualStepInput& step : stream) {
        if (tokens.size() >= cfg.max_steps) break;
        const StepResult result = decode_step(step, cfg);
        tokens.push_back(result.chosen);
        if (cfg.stop_token && result.chosen == *cfg.stop_token) break;
    }
    return tokens;
}

// Baseline for A/B comparison: argmax of the raw visual logits.
inline TokenId visual_only_choice(const DualStepInput& input) {
    if (input.visual.empty()) raise(errc::input, "decode step has an empty vocabulary");
    return static_cast<TokenId>(detail::argmax(input.visual));
}

} // namespace msdkit
