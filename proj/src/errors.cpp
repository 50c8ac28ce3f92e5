#include "worldbench/errors.hpp"

namespace wb {

const char* parse_code_name(ParseCode code) {
    switch (code) {
        case ParseCode::bad_directive: return "bad-directive";
        case ParseCode::bad_number: return "bad-number";
        case ParseCode::bad_probability: return "bad-probability";
        case ParseCode::duplicate_alphabet: return "duplicate-alphabet";
        case ParseCode::duplicate_letter: return "duplicate-letter";
        case ParseCode::duplicate_state: return "duplicate-state";
        case ParseCode::duplicate_transition: return "duplicate-transition";
        case ParseCode::missing_section: return "missing-section";
        case ParseCode::missing_transition: return "missing-transition";
        case ParseCode::out_of_range: return "out-of-range";
        case ParseCode::probability_sum: return "probability-sum";
        case ParseCode::unknown_letter: return "unknown-letter";
        case ParseCode::unknown_state: return "unknown-state";
    }
    return "unknown";
}

ParseError::ParseError(ParseCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": [" +
                         parse_code_name(code) + "] " + message),
      code_(code),
      line_(line),
      column_(column) {}

}  // namespace wb
