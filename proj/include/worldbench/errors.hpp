#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wb {

// Misconfigured inputs (bad parameters, alphabet mismatches, malformed files).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Analysis requested on a world that does not support it (e.g. tree
// expansion or mean-cycle analysis of a stochastic world).
class UnsupportedAnalysisError : public std::runtime_error {
public:
    explicit UnsupportedAnalysisError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap would be exceeded; the message names the cap.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

enum class ParseCode {
    bad_directive,
    bad_number,
    bad_probability,
    duplicate_alphabet,
    duplicate_letter,
    duplicate_state,
    duplicate_transition,
    missing_section,
    missing_transition,
    out_of_range,
    probability_sum,
    unknown_letter,
    unknown_state,
};

const char* parse_code_name(ParseCode code);

// Parse diagnostic with a stable code and 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseCode code, std::size_t line, std::size_t column, const std::string& message);

    ParseCode code() const { return code_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    ParseCode code_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace wb
