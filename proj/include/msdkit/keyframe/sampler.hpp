#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

// Flattened keypoint coordinates of a single-person frame plus an 18-bit
// visibility mask (bit k set when keypoint k has confidence > 0.5).
struct FrameVector {
    std::array<double, 2 * body18::count> xy{};
    std::uint32_t visibility = 0;
    std::int64_t frame_index = 0;
};

inline FrameVector frame_vector(const PoseFrame& frame) {
    if (!frame.single_person())
        raise(errc::input, "frame_vector requires a single-person frame");
    const PersonDetection& person = frame.persons.front();
    FrameVector vec;
    vec.frame_index = frame.index;
    for (std::size_t k = 0; k < body18::count; ++k) {
        vec.xy[2 * k] = person.keypoints[k].x;
        vec.xy[2 * k + 1] = person.keypoints[k].y;
        if (person.keypoints[k].visible()) vec.visibility |= (1u << k);
    }
    return vec;
}

// Euclidean distance restricted to the keypoints visible in both frames,
// divided by the common-visible count; 0 when the common set is empty.
inline double pair_distance(const FrameVector& a, const FrameVector& b) {
    const std::uint32_t common = a.visibility & b.visibility;
    if (common == 0) return 0.0;
    double sum = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < body18::count; ++k) {
        if (!(common & (1u << k))) continue;
        const double dx = a.xy[2 * k] - b.xy[2 * k];
        const double dy = a.xy[2 * k + 1] - b.xy[2 * k + 1];
        sum += dx * dx + dy * dy;
        ++count;
    }
    return std::sqrt(sum) / count;
}

struct KeyframeSelection {
    int segment_index = 0;       // 0-based one-second segment
    std::int64_t frame_index = 0; // original frame number of the selection
    double score = 0.0;           // the maximized distance objective
};

// One keyframe per one-second segment. Single-person frames are split into
// N = ceil(duration) contiguous segments of near-equal count (earlier
// segments one frame larger on remainder). The first segment picks the
// frame with the largest total distance to every frame in the segment;
// each later segment picks the frame farthest from the previous keyframe.
// Ties resolve to the lowest frame index.
inline std::vector<KeyframeSelection> sample_keyframes(const PoseTrack& track) {
    std::vector<FrameVector> frames;
    for (const auto& frame : track.frames)
        if (frame.single_person()) frames.push_back(frame_vector(frame));
    if (frames.empty())
        raise(errc::input, "track has no single-person frames to sample from");

    const std::size_t segment_count = static_cast<std::size_t>(
        std::max(1.0, std::ceil(track.duration_seconds() - 1e-9)));
    const std::size_t base = frames.size() / segment_count;
    const std::size_t remainder = frames.size() % segment_count;

    std::vector<KeyframeSelection> selections;
    std::size_t begin = 0;
    std::size_t previous_keyframe = 0; // index into frames
    for (std::size_t seg = 0; seg < segment_count; ++seg) {
        const std::size_t size = base + (seg < remainder ? 1 : 0);
        if (size == 0) continue;
        const std::size_t end = begin + size;

        std::size_t best = begin;
        double best_score = -1.0;
        if (selections.empty()) {
            for (std::size_t j = begin; j < end; ++j) {
                double total = 0.0;
                for (std::size_t i = begin; i < end; ++i)
                    total += pair_distance(frames[i], frames[j]);
                if (total > best_score) {
                    best_score = total;
                    best = j;
                }
            }
        } else {
            for (std::size_t i = begin; i < end; ++i) {
                const double dist = pair_distance(frames[i], frames[previous_keyframe]);
                if (dist > best_score) {
                    best_score = dist;
                    best = i;
                }
            }
        }

        selections.push_back(KeyframeSelection{static_cast<int>(seg),
                                               frames[best].frame_index, best_score});
        previous_keyframe = best;
        begin = end;
    }
    return selections;
}

} // namespace msdkit
