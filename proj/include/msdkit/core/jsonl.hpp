#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <string>

#include <json.hpp>

#include "msdkit/core/error.hpp"

namespace msdkit::jsonl {

using json = nlohmann::ordered_json;

inline std::string at_line(std::size_t line_no, const std::string& what) {
    return "line " + std::to_string(line_no) + ": " + what;
}

inline json parse_line(const std::string& line, std::size_t line_no) {
    json value = json::parse(line, /*cb=*/nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded())
        raise(errc::parse, at_line(line_no, "malformed JSON record"));
    if (!value.is_object())
        raise(errc::schema, at_line(line_no, "record is not a JSON object"));
    return value;
}

inline const json& require(const json& obj, const char* key, std::size_t line_no) {
    auto it = obj.find(key);
    if (it == obj.end())
        raise(errc::schema, at_line(line_no, std::string("missing field \"") + key + "\""));
    return *it;
}

inline std::string require_string(const json& obj, const char* key, std::size_t line_no) {
    const json& v = require(obj, key, line_no);
    if (!v.is_string())
        raise(errc::schema, at_line(line_no, std::string("field \"") + key + "\" must be a string"));
    return v.get<std::string>();
}

inline std::int64_t require_int(const json& obj, const char* key, std::size_t line_no) {
    const json& v = require(obj, key, line_no);
    if (!v.is_number_integer())
        raise(errc::schema, at_line(line_no, std::string("field \"") + key + "\" must be an integer"));
    return v.get<std::int64_t>();
}

inline double require_number(const json& obj, const char* key, std::size_t line_no) {
    const json& v = require(obj, key, line_no);
    if (!v.is_number())
        raise(errc::schema, at_line(line_no, std::string("field \"") + key + "\" must be a number"));
    double d = v.get<double>();
    if (!std::isfinite(d))
        raise(errc::value, at_line(line_no, std::string("field \"") + key + "\" must be finite"));
    return d;
}

inline const json& require_array(const json& obj, const char* key, std::size_t line_no) {
    const json& v = require(obj, key, line_no);
    if (!v.is_array())
        raise(errc::schema, at_line(line_no, std::string("field \"") + key + "\" must be an array"));
    return v;
}

inline double number_at(const json& arr, std::size_t i, std::size_t line_no, const char* what) {
    const json& v = arr.at(i);
    if (!v.is_number())
        raise(errc::schema, at_line(line_no, std::string(what) + " must be numeric"));
    return v.get<double>();
}

inline double finite_number_at(const json& arr, std::size_t i, std::size_t line_no, const char* what) {
    double d = number_at(arr, i, line_no, what);
    if (!std::isfinite(d))
        raise(errc::value, at_line(line_no, std::string(what) + " must be finite"));
    return d;
}

// Reads logical JSONL lines, skipping blank ones, tracking 1-based numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& out) {
        while (std::getline(in_, out)) {
            ++line_no_;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (out.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

} // namespace msdkit::jsonl
