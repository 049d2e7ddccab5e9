#pragma once

#include "dkatl/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dkatl
{

// A document that parsed but describes a model failing validate_model.
class invalid_model : public input_error
{
    std::vector< Violation > _violations;

public:
    explicit invalid_model( std::vector< Violation > violations );

    [[nodiscard]] const std::vector< Violation >& violations() const { return _violations; }
};

// Parses and validates a model document. Throws parse_error (with line and
// column) on syntax or name errors and invalid_model on semantic violations.
[[nodiscard]] Model load_model( std::string_view text );

// Parses without validating; for tools that want to report violations
// themselves.
[[nodiscard]] Model parse_model( std::string_view text );

// Canonical explicit form: every menu and transition spelled out, alphabet
// listed, singleton indistinguishability blocks omitted.
[[nodiscard]] std::string save_model( const Model& m );

struct BuiltinCheck
{
    std::string history;
    std::string formula;
    int horizon = 0;
    bool expected = false;
};

struct BuiltinSuite
{
    std::string name;
    std::string document;
    Model model;
    std::vector< BuiltinCheck > checks;
};

[[nodiscard]] std::vector< std::string > builtin_names();
// Throws input_error for an unknown name.
[[nodiscard]] BuiltinSuite builtin( std::string_view name );

} // namespace dkatl
