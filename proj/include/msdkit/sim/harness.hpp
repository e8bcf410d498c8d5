#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/engine/decode.hpp"

namespace msdkit {

// Controlled disagreement scenario: at every step the visual pathway gives
// the hallucination token a raw-logit head start and the motion pathway
// gives the truth token a (usually larger) one, with optional i.i.d.
// Gaussian noise on every entry.
struct ScenarioSpec {
    std::size_t vocab_size = 32;
    std::size_t steps = 1;
    std::vector<TokenId> truth_tokens;         // one per step
    std::vector<TokenId> hallucination_tokens; // one per step, != truth
    double visual_margin = 1.0;
    double motion_margin = 3.0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    static ScenarioSpec uniform(std::size_t vocab_size, std::size_t steps, TokenId truth,
                                TokenId hallucination, double visual_margin,
                                double motion_margin, double noise_sigma = 0.0,
                                std::uint64_t seed = 0) {
        ScenarioSpec spec;
        spec.vocab_size = vocab_size;
        spec.steps = steps;
        spec.truth_tokens.assign(steps, truth);
        spec.hallucination_tokens.assign(steps, hallucination);
        spec.visual_margin = visual_margin;
        spec.motion_margin = motion_margin;
        spec.noise_sigma = noise_sigma;
        spec.seed = seed;
        return spec;
    }

    void validate() const {
        if (vocab_size < 2) raise(errc::value, "scenario vocab_size must be >= 2");
        if (steps < 1) raise(errc::value, "scenario steps must be >= 1");
        if (truth_tokens.size() != steps || hallucination_tokens.size() != steps)
            raise(errc::value, "scenario token lists must have one entry per step");
        for (std::size_t t = 0; t < steps; ++t) {
            if (truth_tokens[t] >= vocab_size || hallucination_tokens[t] >= vocab_size)
                raise(errc::value, "scenario tokens must lie inside the vocabulary");
            if (truth_tokens[t] == hallucination_tokens[t])
                raise(errc::value, "truth and hallucination tokens must differ");
        }
        if (!(std::isfinite(visual_margin) && std::isfinite(motion_margin)))
            raise(errc::value, "scenario margins must be finite");
        if (!(noise_sigma >= 0.0)) raise(errc::value, "noise_sigma must be >= 0");
    }
};

struct TrialOutcome {
    std::size_t visual_only_errors = 0; // steps where the visual argmax is the hallucination
    std::size_t msd_errors = 0;         // steps where decode_step picks the hallucination
    std::size_t trials = 0;
};

inline std::vector<DualStepInput> generate_scenario(const ScenarioSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma > 0.0 ? spec.noise_sigma : 1.0);

    std::vector<DualStepInput> stream;
    stream.reserve(spec.steps);
    for (std::size_t t = 0; t < spec.steps; ++t) {
        DualStepInput step;
        step.step = static_cast<std::int64_t>(t);
        step.visual.assign(spec.vocab_size, 0.0);
        step.motion.assign(spec.vocab_size, 0.0);
        step.visual[spec.hallucination_tokens[t]] += spec.visual_margin;
        step.motion[spec.truth_tokens[t]] += spec.motion_margin;
        if (spec.noise_sigma > 0.0) {
            for (double& v : step.visual) v += noise(rng);
            for (double& v : step.motion) v += noise(rng);
        }
        stream.push_back(std::move(step));
    }
    return stream;
}

// Runs visual-only greedy argmax and full MSD decoding over identical
// streams, one stream per trial with derived seed = spec.seed + trial.
inline TrialOutcome run_comparison(const ScenarioSpec& spec, const SynergyParams& params,
                                   std::size_t trials) {
    spec.validate();
    params.validate();
    if (trials < 1) raise(errc::value, "trials must be >= 1");

    DecodeConfig cfg;
    cfg.params = params;

    TrialOutcome outcome;
    outcome.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        ScenarioSpec derived = spec;
        derived.seed = spec.seed + trial;
        const auto stream = generate_scenario(derived);
        for (std::size_t t = 0; t < stream.size(); ++t) {
            const TokenId hallucination = spec.hallucination_tokens[t];
            if (visual_only_choice(stream[t]) == hallucination) ++outcome.visual_only_errors;
            if (decode_step(stream[t], cfg).chosen == hallucination) ++outcome.msd_errors;
        }
    }
    return outcome;
}

} // namespace msdkit
