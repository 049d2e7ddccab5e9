#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dkatl::cli
{

// Runs one invocation; returns the process exit code.
int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace dkatl::cli
