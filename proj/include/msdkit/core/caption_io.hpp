#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "msdkit/core/jsonl.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

// Caption pairs: {"id":s,"candidate":s,"references":[s,...]} per line.
inline std::vector<CaptionPair> parse_caption_pairs(std::istream& in) {
    jsonl::LineReader reader(in);
    std::vector<CaptionPair> pairs;
    std::string line;
    while (reader.next(line)) {
        const std::size_t line_no = reader.line_no();
        jsonl::json rec = jsonl::parse_line(line, line_no);
        CaptionPair pair;
        pair.id = jsonl::require_string(rec, "id", line_no);
        pair.candidate = jsonl::require_string(rec, "candidate", line_no);
        const jsonl::json& refs = jsonl::require_array(rec, "references", line_no);
        if (refs.empty())
            raise(errc::schema, jsonl::at_line(line_no, "references must be non-empty"));
        for (const auto& r : refs) {
            if (!r.is_string())
                raise(errc::schema, jsonl::at_line(line_no, "references must be strings"));
            pair.references.push_back(r.get<std::string>());
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

// Judge scores: {"id":s,"scores":{dim:f x5}} per line; all five dimensions
// must be present, each in [0, 10].
inline std::vector<JudgeRecord> parse_judge_records(std::istream& in) {
    jsonl::LineReader reader(in);
    std::vector<JudgeRecord> records;
    std::string line;
    while (reader.next(line)) {
        const std::size_t line_no = reader.line_no();
        jsonl::json rec = jsonl::parse_line(line, line_no);
        JudgeRecord record;
        record.id = jsonl::require_string(rec, "id", line_no);
        const jsonl::json& scores = jsonl::require(rec, "scores", line_no);
        if (!scores.is_object())
            raise(errc::schema, jsonl::at_line(line_no, "field \"scores\" must be an object"));

        double values[5];
        auto names = JudgeScores::dimension_names();
        for (std::size_t d = 0; d < names.size(); ++d) {
            values[d] = jsonl::require_number(scores, names[d], line_no);
            if (values[d] < 0.0 || values[d] > 10.0)
                raise(errc::value,
                      jsonl::at_line(line_no, std::string(names[d]) + " must lie in [0, 10]"));
        }
        record.scores.details_of_movements = values[0];
        record.scores.interaction_with_environment = values[1];
        record.scores.motivation_and_reason = values[2];
        record.scores.micro_expressions_and_emotions = values[3];
        record.scores.character_attributes = values[4];
        records.push_back(std::move(record));
    }
    return records;
}

// True/False QA records: {"id":s,"pred":bool,"gold":bool} per line.
inline std::vector<QaRecord> parse_qa_records(std::istream& in) {
    jsonl::LineReader reader(in);
    std::vector<QaRecord> records;
    std::string line;
    while (reader.next(line)) {
        const std::size_t line_no = reader.line_no();
        jsonl::json rec = jsonl::parse_line(line, line_no);
        QaRecord record;
        record.id = jsonl::require_string(rec, "id", line_no);
        const jsonl::json& pred = jsonl::require(rec, "pred", line_no);
        const jsonl::json& gold = jsonl::require(rec, "gold", line_no);
        if (!pred.is_boolean() || !gold.is_boolean())
            raise(errc::schema, jsonl::at_line(line_no, "pred and gold must be booleans"));
        record.pred = pred.get<bool>();
        record.gold = gold.get<bool>();
        records.push_back(std::move(record));
    }
    return records;
}

inline std::vector<CaptionPair> parse_caption_pairs(const std::string& text) {
    std::istringstream in(text);
    return parse_caption_pairs(in);
}

inline std::vector<JudgeRecord> parse_judge_records(const std::string& text) {
    std::istringstream in(text);
    return parse_judge_records(in);
}

inline std::vector<QaRecord> parse_qa_records(const std::string& text) {
    std::istringstream in(text);
    return parse_qa_records(in);
}

} // namespace msdkit
