#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "msdkit/core/jsonl.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

// JSONL dual-logit stream.
//   line 1: {"format":"dual_logits","vocab":["tok",...]}
//   line k: {"step":int,"visual":[f...],"motion":[f...]}
// Steps must run 0, 1, 2, ... and both vectors must match the vocab size.
class LogitStreamReader {
public:
    explicit LogitStreamReader(std::istream& in) : reader_(in) {
        std::string line;
        if (!reader_.next(line))
            raise(errc::schema, "empty input: missing dual_logits header line");
        const std::size_t line_no = reader_.line_no();
        jsonl::json header = jsonl::parse_line(line, line_no);
        if (jsonl::require_string(header, "format", line_no) != "dual_logits")
            raise(errc::schema, jsonl::at_line(line_no, "header format must be \"dual_logits\""));
        const jsonl::json& vocab = jsonl::require_array(header, "vocab", line_no);
        if (vocab.empty())
            raise(errc::schema, jsonl::at_line(line_no, "vocab must be non-empty"));
        for (const auto& tok : vocab) {
            if (!tok.is_string())
                raise(errc::schema, jsonl::at_line(line_no, "vocab entries must be strings"));
            vocab_.push_back(tok.get<std::string>());
        }
    }

    const std::vector<std::string>& vocab() const { return vocab_; }

    std::optional<DualStepInput> next() {
        std::string line;
        if (!reader_.next(line)) return std::nullopt;
        const std::size_t line_no = reader_.line_no();
        jsonl::json rec = jsonl::parse_line(line, line_no);

        DualStepInput step;
        step.step = jsonl::require_int(rec, "step", line_no);
        if (step.step != next_step_)
            raise(errc::ordering,
                  jsonl::at_line(line_no, "expected step " + std::to_string(next_step_) +
                                              ", got " + std::to_string(step.step)));
        ++next_step_;

        step.visual = read_vector(rec, "visual", line_no);
        step.motion = read_vector(rec, "motion", line_no);
        if (step.visual.size() != step.motion.size())
            raise(errc::schema,
                  jsonl::at_line(line_no, "visual and motion vectors differ in length"));
        return step;
    }

private:
    VocabLogits read_vector(const jsonl::json& rec, const char* key, std::size_t line_no) {
        const jsonl::json& arr = jsonl::require_array(rec, key, line_no);
        if (arr.size() != vocab_.size())
            raise(errc::schema,
                  jsonl::at_line(line_no, std::string(key) + " vector length " +
                                              std::to_string(arr.size()) +
                                              " does not match vocab size " +
                                              std::to_string(vocab_.size())));
        VocabLogits values(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i)
            values[i] = jsonl::finite_number_at(arr, i, line_no, "logit");
        return values;
    }

    jsonl::LineReader reader_;
    std::vector<std::string> vocab_;
    std::int64_t next_step_ = 0;
};

struct LogitStream {
    std::vector<std::string> vocab;
    std::vector<DualStepInput> steps;
};

inline LogitStream parse_logit_stream(std::istream& in) {
    LogitStreamReader reader(in);
    LogitStream stream;
    stream.vocab = reader.vocab();
    while (auto step = reader.next()) stream.steps.push_back(std::move(*step));
    return stream;
}

inline LogitStream parse_logit_stream(const std::string& text) {
    std::istringstream in(text);
    return parse_logit_stream(in);
}

inline std::string serialize_logit_stream(const LogitStream& stream) {
    jsonl::json header = {{"format", "dual_logits"}, {"vocab", stream.vocab}};
    std::string out = header.dump();
    out.push_back('\n');
    for (const auto& step : stream.steps) {
        jsonl::json rec = {{"step", step.step}, {"visual", step.visual}, {"motion", step.motion}};
        out += rec.dump();
        out.push_back('\n');
    }
    return out;
}

} // namespace msdkit
