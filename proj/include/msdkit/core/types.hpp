#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "msdkit/core/error.hpp"

namespace msdkit {

using TokenId = std::uint32_t;

// Raw per-token log-scores for one pathway, length == vocabulary size.
using VocabLogits = std::vector<double>;

// OpenPose BODY-18 keypoint layout and the body-part grouping used by the
// motion-quality and keyframe stages.
namespace body18 {

inline constexpr std::size_t count = 18;

enum Index : int {
    nose = 0,
    neck = 1,
    right_shoulder = 2,
    right_elbow = 3,
    right_wrist = 4,
    left_shoulder = 5,
    left_elbow = 6,
    left_wrist = 7,
    right_hip = 8,
    right_knee = 9,
    right_ankle = 10,
    left_hip = 11,
    left_knee = 12,
    left_ankle = 13,
    right_eye = 14,
    left_eye = 15,
    right_ear = 16,
    left_ear = 17,
};

inline constexpr std::array<int, 5> face{nose, right_eye, left_eye, right_ear, left_ear};
inline constexpr std::array<int, 6> arms{right_shoulder, right_elbow, right_wrist,
                                         left_shoulder,  left_elbow,  left_wrist};
inline constexpr std::array<int, 3> torso{neck, right_hip, left_hip};
inline constexpr std::array<int, 4> legs{right_knee, right_ankle, left_knee, left_ankle};

// A keypoint counts as visible when its confidence is strictly above this.
inline constexpr double visibility_confidence = 0.5;

} // namespace body18

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    double confidence = 0.0;

    bool visible() const { return confidence > body18::visibility_confidence; }
};

struct BoundingBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

struct PersonDetection {
    std::array<Keypoint, body18::count> keypoints{};
    BoundingBox bbox{};

    int visible_keypoint_count() const {
        int n = 0;
        for (const auto& kp : keypoints)
            if (kp.visible()) ++n;
        return n;
    }
};

struct PoseFrame {
    std::int64_t index = 0;
    std::vector<PersonDetection> persons;

    bool single_person() const { return persons.size() == 1; }
};

struct PoseTrack {
    std::vector<PoseFrame> frames;
    double fps = 0.0;
    int image_width = 0;
    int image_height = 0;
    std::string source_id;

    double duration_seconds() const {
        return static_cast<double>(frames.size()) / fps;
    }
    double image_area() const {
        return static_cast<double>(image_width) * static_cast<double>(image_height);
    }
};

// Aligned visual-pathway and motion-pathway logits for one decode step.
struct DualStepInput {
    std::int64_t step = 0;
    VocabLogits visual;
    VocabLogits motion;

    std::size_t vocab_size() const { return visual.size(); }
};

// Synergy-score hyperparameters. alpha1..alpha6 weight the five score
// components, gamma weights the min-term of the basic score, theta is the
// power-transform exponent and beta the pruning base threshold.
struct SynergyParams {
    double alpha1 = 0.5;
    double alpha2 = 0.2;
    double alpha3 = 0.4;
    double alpha4 = 0.8;
    double alpha5 = 0.3;
    double alpha6 = 2.0;
    double gamma = 0.5;
    int theta = 2;
    double beta = 0.2;

    void validate() const {
        const double alphas[] = {alpha1, alpha2, alpha3, alpha4, alpha5, alpha6};
        for (double a : alphas)
            if (!(std::isfinite(a) && a >= 0.0))
                raise(errc::value, "synergy alphas must be finite and non-negative");
        // alpha1..alpha3 keep the token ranking monotone when pathways agree.
        if (!(alpha1 > 0.0 && alpha2 > 0.0 && alpha3 > 0.0))
            raise(errc::value, "alpha1, alpha2 and alpha3 must be positive");
        if (!(std::isfinite(gamma) && gamma >= 0.0))
            raise(errc::value, "gamma must be finite and non-negative");
        if (theta < 1)
            raise(errc::value, "theta must be an integer >= 1");
        if (!(std::isfinite(beta) && beta >= 0.0 && beta <= 1.0))
            raise(errc::value, "beta must lie in [0, 1]");
    }
};

struct CaptionPair {
    std::string id;
    std::string candidate;
    std::vector<std::string> references; // never empty
};

// The five judge dimensions, each scored in [0, 10].
struct JudgeScores {
    double details_of_movements = 0.0;
    double interaction_with_environment = 0.0;
    double motivation_and_reason = 0.0;
    double micro_expressions_and_emotions = 0.0;
    double character_attributes = 0.0;

    static constexpr std::array<const char*, 5> dimension_names() {
        return {"details_of_movements", "interaction_with_environment",
                "motivation_and_reason", "micro_expressions_and_emotions",
                "character_attributes"};
    }

    std::array<double, 5> values() const {
        return {details_of_movements, interaction_with_environment, motivation_and_reason,
                micro_expressions_and_emotions, character_attributes};
    }
};

struct JudgeRecord {
    std::string id;
    JudgeScores scores;
};

struct QaRecord {
    std::string id;
    bool pred = false;
    bool gold = false;
};

} // namespace msdkit
