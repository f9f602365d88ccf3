#pragma once

#include <stdexcept>
#include <string>

namespace spx {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    DisconnectedGraph,
    NotADag,
    GenerationFailed,
    DegenerateSegment,
    LpFailure,
    SingularSystem,
    NonFiniteUpdate,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Parse failure with a 1-based line/column position.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error(ErrorCode::Parse,
                "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace spx
