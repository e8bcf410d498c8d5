#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace msdkit {

// Error taxonomy shared by parsers, validators and the CLI.
// The CLI maps kinds to exit codes: io/parse/schema -> 2 (unreadable or
// structurally broken input), ordering/value/input -> 1 (well-formed data
// violating a domain invariant).
enum class errc {
    parse,    // not valid JSON / truncated record
    schema,   // valid JSON with the wrong shape (missing key, wrong arity)
    ordering, // sequence indices out of order
    value,    // non-finite or out-of-range numeric value
    input,    // input unusable for the requested operation
    io,       // file system failure
};

inline const char* errc_name(errc kind) {
    switch (kind) {
    case errc::parse: return "parse";
    case errc::schema: return "schema";
    case errc::ordering: return "ordering";
    case errc::value: return "value";
    case errc::input: return "input";
    case errc::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void raise(errc kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace msdkit
