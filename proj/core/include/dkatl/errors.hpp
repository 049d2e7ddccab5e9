#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dkatl
{

// Out-of-range ids, malformed history text and similar caller mistakes.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A joint action outside D(w).
class illegal_action : public input_error
{
public:
    using input_error::input_error;
};

class name_error : public input_error
{
public:
    using input_error::input_error;
};

class parse_error : public input_error
{
    std::size_t _line;
    std::size_t _column;

public:
    parse_error( std::size_t line, std::size_t column, const std::string& message )
        : input_error{ std::to_string( line ) + ":" + std::to_string( column ) + ": " + message },
          _line{ line }, _column{ column } {}

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
};

// Query the evaluator refuses rather than answering with a made-up verdict,
// e.g. a pending next-step obligation with no budget left.
class unsupported_query : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class incomplete_strategy : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace dkatl
