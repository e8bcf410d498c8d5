#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

struct FilterConfig {
    std::vector<std::string> keywords{"people", "person", "man",  "woman", "men",
                                      "women",  "boy",    "girl", "human"};
    double single_person_ratio = 0.9;
    double bbox_area_fraction = 1.0 / 50.0;
    int min_keypoints = 12;
    int min_face_keypoints = 2;
    double quality_frame_ratio = 0.7;
    double max_segment_seconds = 10.0;
    double min_segment_seconds = 2.0;
    double movement_frame_ratio = 0.5;
    // Mean bbox-normalized keypoint displacement a body part needs between
    // consecutive frames to count as moving.
    double movement_threshold_tau = 0.02;

    void validate() const {
        const double ratios[] = {single_person_ratio, quality_frame_ratio, movement_frame_ratio};
        for (double r : ratios)
            if (!(r > 0.0 && r <= 1.0))
                raise(errc::value, "filter ratios must lie in (0, 1]");
        const double thresholds[] = {bbox_area_fraction, max_segment_seconds,
                                     min_segment_seconds, movement_threshold_tau};
        for (double t : thresholds)
            if (!(std::isfinite(t) && t > 0.0))
                raise(errc::value, "filter thresholds must be positive");
        if (min_keypoints < 0 || min_face_keypoints < 0)
            raise(errc::value, "keypoint minimums must be non-negative");
    }
};

struct CriterionResult {
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct FilterVerdict {
    bool pass = false; // true iff every criterion passes
    std::map<std::string, CriterionResult> criteria;

    void add(const std::string& name, double measured, double threshold, bool ok) {
        criteria[name] = CriterionResult{measured, threshold, ok};
        recompute();
    }

private:
    void recompute() {
        pass = !criteria.empty();
        for (const auto& [name, c] : criteria) pass = pass && c.pass;
    }
};

namespace detail {

inline std::string lowercase_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace detail

// True iff any configured keyword equals a whole word of the lowercased
// caption; words are maximal alphanumeric runs, so "person" does not match
// inside "chairperson".
inline bool keyword_gate(std::string_view caption, const FilterConfig& cfg) {
    const std::string lowered = detail::lowercase_ascii(caption);
    std::size_t i = 0;
    while (i < lowered.size()) {
        while (i < lowered.size() && !std::isalnum(static_cast<unsigned char>(lowered[i]))) ++i;
        std::size_t start = i;
        while (i < lowered.size() && std::isalnum(static_cast<unsigned char>(lowered[i]))) ++i;
        if (i > start) {
            std::string_view word(lowered.data() + start, i - start);
            for (const auto& keyword : cfg.keywords)
                if (word == keyword) return true;
        }
    }
    return false;
}

struct SplitResult {
    std::vector<PoseTrack> segments;  // retained, each <= max and >= min duration
    std::vector<PoseTrack> discarded; // stubs shorter than the minimum
};

// Greedy fixed-length split at max_segment_seconds boundaries. Retained and
// discarded segments together partition the original frame sequence.
inline SplitResult split_segments(const PoseTrack& track, const FilterConfig& cfg) {
    SplitResult result;
    if (track.frames.empty()) return result;

    const std::size_t frames_per_segment = static_cast<std::size_t>(
        std::floor(cfg.max_segment_seconds * track.fps + 1e-9));
    const double min_frames = cfg.min_segment_seconds * track.fps - 1e-9;

    for (std::size_t begin = 0; begin < track.frames.size(); begin += frames_per_segment) {
        const std::size_t end = std::min(begin + frames_per_segment, track.frames.size());
        PoseTrack segment;
        segment.fps = track.fps;
        segment.image_width = track.image_width;
        segment.image_height = track.image_height;
        segment.source_id = track.source_id;
        segment.frames.assign(track.frames.begin() + static_cast<std::ptrdiff_t>(begin),
                              track.frames.begin() + static_cast<std::ptrdiff_t>(end));
        if (static_cast<double>(segment.frames.size()) >= min_frames)
            result.segments.push_back(std::move(segment));
        else
            result.discarded.push_back(std::move(segment));
    }
    return result;
}

// Per-frame quality gate for single-person frames: enough visible keypoints
// overall and at least min_face_keypoints of them on the face.
inline bool frame_quality(const PoseFrame& frame, const FilterConfig& cfg) {
    if (!frame.single_person())
        raise(errc::input, "frame_quality requires a single-person frame");
    const PersonDetection& person = frame.persons.front();
    int visible = 0;
    int face_visible = 0;
    for (std::size_t k = 0; k < body18::count; ++k) {
        if (!person.keypoints[k].visible()) continue;
        ++visible;
        if (std::find(body18::face.begin(), body18::face.end(), static_cast<int>(k)) !=
            body18::face.end())
            ++face_visible;
    }
    return visible >= cfg.min_keypoints && face_visible >= cfg.min_face_keypoints;
}

// Per-segment quality verdict:
//   single_person_ratio  — fraction of frames with exactly one person
//   bbox_area_fraction   — mean bbox area over single-person frames,
//                          relative to the image area (strict >)
//   quality_frame_ratio  — fraction of single-person frames passing
//                          frame_quality
inline FilterVerdict video_quality(const PoseTrack& track, const FilterConfig& cfg) {
    FilterVerdict verdict;
    const double total = static_cast<double>(track.frames.size());

    std::size_t single = 0;
    std::size_t quality = 0;
    double bbox_area_sum = 0.0;
    for (const auto& frame : track.frames) {
        if (!frame.single_person()) continue;
        ++single;
        bbox_area_sum += frame.persons.front().bbox.area();
        if (frame_quality(frame, cfg)) ++quality;
    }

    const double single_ratio = total > 0.0 ? static_cast<double>(single) / total : 0.0;
    verdict.add("single_person_ratio", single_ratio, cfg.single_person_ratio,
                single_ratio >= cfg.single_person_ratio);

    const double mean_area_fraction =
        single > 0 ? bbox_area_sum / static_cast<double>(single) / track.image_area() : 0.0;
    verdict.add("bbox_area_fraction", mean_area_fraction, cfg.bbox_area_fraction,
                mean_area_fraction > cfg.bbox_area_fraction);

    const double quality_ratio =
        single > 0 ? static_cast<double>(quality) / static_cast<double>(single) : 0.0;
    verdict.add("quality_frame_ratio", quality_ratio, cfg.quality_frame_ratio,
                quality_ratio >= cfg.quality_frame_ratio);
    return verdict;
}

} // namespace msdkit
