#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "msdkit/core/types.hpp"
#include "msdkit/pose/filter.hpp"

namespace msdkit {

namespace detail {

// Keypoint scaled into the person's bbox frame; cancels global translation
// and per-axis scale.
inline std::array<double, 2> bbox_normalized(const Keypoint& kp, const BoundingBox& bbox) {
    return {(kp.x - bbox.x_min) / bbox.width(), (kp.y - bbox.y_min) / bbox.height()};
}

struct PartMotion {
    bool visible = false; // >= 2 keypoints of the part visible in both frames
    bool moving = false;  // mean displacement of the common set >= tau
};

inline PartMotion part_motion(std::span<const int> part_indices, const PersonDetection& a,
                              const PersonDetection& b, double tau) {
    PartMotion motion;
    int common = 0;
    double displacement_sum = 0.0;
    for (int k : part_indices) {
        const Keypoint& ka = a.keypoints[static_cast<std::size_t>(k)];
        const Keypoint& kb = b.keypoints[static_cast<std::size_t>(k)];
        if (!(ka.visible() && kb.visible())) continue;
        ++common;
        const auto pa = bbox_normalized(ka, a.bbox);
        const auto pb = bbox_normalized(kb, b.bbox);
        displacement_sum = displacement_sum +
                           std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    }
    if (common < 2) return motion;
    motion.visible = true;
    motion.moving = displacement_sum / common >= tau;
    return motion;
}

// Movement rule for one consecutive single-person frame pair: with all four
// body parts visible at least two must move; with exactly three visible all
// three must move; fewer than three visible parts fails the pair.
inline bool pair_meets_movement(const PersonDetection& a, const PersonDetection& b, double tau) {
    const PartMotion parts[] = {
        part_motion(body18::face, a, b, tau),
        part_motion(body18::arms, a, b, tau),
        part_motion(body18::torso, a, b, tau),
        part_motion(body18::legs, a, b, tau),
    };
    int visible = 0;
    int moving = 0;
    for (const PartMotion& p : parts) {
        if (!p.visible) continue;
        ++visible;
        if (p.moving) ++moving;
    }
    if (visible >= 4) return moving >= 2;
    if (visible == 3) return moving == 3;
    return false;
}

} // namespace detail

// Inter-frame movement verdict over the track's single-person frames.
// Displacements are measured between consecutive single-person frames in
// bbox-normalized coordinates; the verdict passes when at least
// movement_frame_ratio of the evaluated pairs meet the movement rule.
inline FilterVerdict motion_quality(const PoseTrack& track, const FilterConfig& cfg) {
    std::vector<const PersonDetection*> persons;
    for (const auto& frame : track.frames)
        if (frame.single_person()) persons.push_back(&frame.persons.front());

    FilterVerdict verdict;
    if (persons.size() < 2) {
        verdict.add("insufficient_frames", static_cast<double>(persons.size()), 2.0, false);
        return verdict;
    }

    std::size_t meets = 0;
    const std::size_t pairs = persons.size() - 1;
    for (std::size_t i = 0; i + 1 < persons.size(); ++i)
        if (detail::pair_meets_movement(*persons[i], *persons[i + 1], cfg.movement_threshold_tau))
            ++meets;

    const double ratio = static_cast<double>(meets) / static_cast<double>(pairs);
    verdict.add("moving_pair_ratio", ratio, cfg.movement_frame_ratio,
                ratio >= cfg.movement_frame_ratio);
    return verdict;
}

} // namespace msdkit
