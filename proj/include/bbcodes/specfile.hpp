#pragma once

// Code spec files:
//
//   # comment
//   l = 7
//   m = 7
//   c = "x + y^3 + y^4"
//   d = "y + x^3 + x^4"

#include <stdexcept>
#include <string>

#include "bbcodes/codes.hpp"

namespace bbcodes {

class SpecFileError : public std::runtime_error {
public:
    /// line and column are 1-based; the message already names them.
    SpecFileError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// `source` names the input in messages. Polynomial errors point at the
/// offending token inside the quoted string.
BBCodeSpec parse_spec_text(const std::string& text, const std::string& source = "<input>");
BBCodeSpec read_spec_file(const std::string& path);

/// Inverse of parse_spec_text.
std::string format_spec(const BBCodeSpec& spec);

}  // namespace bbcodes
