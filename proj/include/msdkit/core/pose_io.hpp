#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "msdkit/core/jsonl.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

// JSONL pose-track format.
//   line 1: {"format":"pose18","fps":f,"width":i,"height":i,"source_id":s}
//   line k: {"i":int,"persons":[{"bbox":[x0,y0,x1,y1],"kp":[[x,y,c] x18]}...]}
inline PoseTrack parse_pose_track(std::istream& in, std::vector<std::string>* warnings = nullptr) {
    jsonl::LineReader reader(in);
    std::string line;

    if (!reader.next(line))
        raise(errc::schema, "empty input: missing pose18 header line");
    const std::size_t header_line = reader.line_no();
    jsonl::json header = jsonl::parse_line(line, header_line);
    if (jsonl::require_string(header, "format", header_line) != "pose18")
        raise(errc::schema, jsonl::at_line(header_line, "header format must be \"pose18\""));

    PoseTrack track;
    track.fps = jsonl::require_number(header, "fps", header_line);
    track.image_width = static_cast<int>(jsonl::require_int(header, "width", header_line));
    track.image_height = static_cast<int>(jsonl::require_int(header, "height", header_line));
    track.source_id = jsonl::require_string(header, "source_id", header_line);
    if (!(track.fps > 0.0))
        raise(errc::value, jsonl::at_line(header_line, "fps must be positive"));
    if (track.image_width <= 0 || track.image_height <= 0)
        raise(errc::value, jsonl::at_line(header_line, "image dimensions must be positive"));

    bool have_prev = false;
    std::int64_t prev_index = 0;
    while (reader.next(line)) {
        const std::size_t line_no = reader.line_no();
        jsonl::json rec = jsonl::parse_line(line, line_no);

        PoseFrame frame;
        frame.index = jsonl::require_int(rec, "i", line_no);
        if (have_prev && frame.index <= prev_index)
            raise(errc::ordering,
                  jsonl::at_line(line_no, "frame index " + std::to_string(frame.index) +
                                              " not greater than previous " +
                                              std::to_string(prev_index)));
        prev_index = frame.index;
        have_prev = true;

        const jsonl::json& persons = jsonl::require_array(rec, "persons", line_no);
        for (const auto& pj : persons) {
            if (!pj.is_object())
                raise(errc::schema, jsonl::at_line(line_no, "person entry must be an object"));

            PersonDetection person;
            const jsonl::json& bbox = jsonl::require_array(pj, "bbox", line_no);
            if (bbox.size() != 4)
                raise(errc::schema, jsonl::at_line(line_no, "bbox must have 4 entries"));
            person.bbox.x_min = jsonl::finite_number_at(bbox, 0, line_no, "bbox coordinate");
            person.bbox.y_min = jsonl::finite_number_at(bbox, 1, line_no, "bbox coordinate");
            person.bbox.x_max = jsonl::finite_number_at(bbox, 2, line_no, "bbox coordinate");
            person.bbox.y_max = jsonl::finite_number_at(bbox, 3, line_no, "bbox coordinate");
            if (!(person.bbox.x_min < person.bbox.x_max && person.bbox.y_min < person.bbox.y_max))
                raise(errc::value, jsonl::at_line(line_no, "bbox must have positive extent"));

            const jsonl::json& kp = jsonl::require_array(pj, "kp", line_no);
            if (kp.size() != body18::count)
                raise(errc::schema,
                      jsonl::at_line(line_no, "expected 18 keypoints, got " +
                                                  std::to_string(kp.size())));
            for (std::size_t k = 0; k < body18::count; ++k) {
                const jsonl::json& entry = kp.at(k);
                if (!entry.is_array() || entry.size() != 3)
                    raise(errc::schema,
                          jsonl::at_line(line_no, "keypoint must be an [x, y, c] triple"));
                Keypoint point;
                point.x = jsonl::finite_number_at(entry, 0, line_no, "keypoint x");
                point.y = jsonl::finite_number_at(entry, 1, line_no, "keypoint y");
                point.confidence = jsonl::finite_number_at(entry, 2, line_no, "keypoint confidence");
                if (point.confidence < 0.0 || point.confidence > 1.0)
                    raise(errc::value,
                          jsonl::at_line(line_no, "keypoint confidence must lie in [0, 1]"));
                person.keypoints[k] = point;
            }

            if (warnings) {
                for (std::size_t k = 0; k < body18::count; ++k) {
                    const Keypoint& point = person.keypoints[k];
                    if (point.visible() && !person.bbox.contains(point.x, point.y)) {
                        warnings->push_back(jsonl::at_line(
                            line_no, "visible keypoint " + std::to_string(k) + " outside bbox"));
                        break;
                    }
                }
            }
            frame.persons.push_back(std::move(person));
        }
        track.frames.push_back(std::move(frame));
    }
    return track;
}

inline PoseTrack parse_pose_track(const std::string& text,
                                  std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    return parse_pose_track(in, warnings);
}

inline jsonl::json pose_frame_to_json(const PoseFrame& frame) {
    jsonl::json persons = jsonl::json::array();
    for (const auto& person : frame.persons) {
        jsonl::json kp = jsonl::json::array();
        for (const auto& point : person.keypoints)
            kp.push_back({point.x, point.y, point.confidence});
        persons.push_back({{"bbox",
                            {person.bbox.x_min, person.bbox.y_min, person.bbox.x_max,
                             person.bbox.y_max}},
                           {"kp", std::move(kp)}});
    }
    return {{"i", frame.index}, {"persons", std::move(persons)}};
}

inline std::string serialize_pose_track(const PoseTrack& track) {
    jsonl::json header = {{"format", "pose18"},
                          {"fps", track.fps},
                          {"width", track.image_width},
                          {"height", track.image_height},
                          {"source_id", track.source_id}};
    std::string out = header.dump();
    out.push_back('\n');
    for (const auto& frame : track.frames) {
        out += pose_frame_to_json(frame).dump();
        out.push_back('\n');
    }
    return out;
}

} // namespace msdkit
