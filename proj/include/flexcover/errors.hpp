#pragma once

#include <stdexcept>
#include <string>

namespace flexcover {

// User-facing input problem (bad file, unknown id, malformed record).
// CLI maps these to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in a text format, carrying a 1-based position.
class parse_error : public input_error {
public:
    parse_error(std::string msg, int line, int column = 0)
        : input_error(format(msg, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& msg, int line, int column) {
        std::string out = msg + " (line " + std::to_string(line);
        if (column > 0) out += ", column " + std::to_string(column);
        out += ")";
        return out;
    }
    int line_ = 0;
    int column_ = 0;
};

// Broken internal invariant. CLI maps these to exit code 1.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace flexcover
