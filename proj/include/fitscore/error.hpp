#pragma once

#include <stdexcept>
#include <string>

namespace fitscore {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the file readers. line is 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string &msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace fitscore
