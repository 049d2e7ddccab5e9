// Prints one [PASS]/[FAIL] line per acceptance criterion; exits nonzero if any
// criterion fails. Usage: dkatl_acceptance [dkatl-binary] [seed]

#include "dkatl/harness.hpp"
#include "dkatl/model_format.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

using namespace dkatl;

namespace
{

using clock_type = std::chrono::steady_clock;

double seconds_since( clock_type::time_point t0 )
{
    return std::chrono::duration< double >( clock_type::now() - t0 ).count();
}

int failures = 0;

void report( const char* id, bool ok, const std::string& detail )
{
    std::cout << ( ok ? "[PASS] " : "[FAIL] " ) << id << " " << detail << std::endl;
    failures += !ok;
}

std::string capture( const std::string& command, int& status )
{
    std::unique_ptr< FILE, int ( * )( FILE* ) > pipe{ popen( command.c_str(), "r" ), pclose };
    std::string out;
    if ( !pipe )
    {
        status = -1;
        return out;
    }
    std::array< char, 4096 > buf{};
    while ( auto n = std::fread( buf.data(), 1, buf.size(), pipe.get() ) )
        out.append( buf.data(), n );
    status = pclose( pipe.release() );
    return out;
}

void ac1()
{
    auto t0 = clock_type::now();
    auto r = builtin_regression();
    auto s = seconds_since( t0 );
    std::ostringstream d;
    d << "built-in verdicts: " << r.checks - r.counterexamples.size() << "/" << r.checks << " exact in " << s << "s";
    report( "AC1", r.passed() && r.checks > 0 && s < 1.0, d.str() );
}

void ac2( std::uint64_t seed )
{
    auto t0 = clock_type::now();
    std::size_t campaigns = 0, checks = 0, found = 0, short_trials = 0;
    for ( const auto& schema : schema_corpus() )
    {
        if ( schema.polarity != Polarity::valid )
            continue;
        CampaignOptions o;
        o.trials = 200;
        o.seed = seed;
        o.builtins = builtin_names();
        auto r = check_schema( schema, o );
        ++campaigns;
        checks += r.checks;
        found += r.counterexamples.size();
        short_trials += r.trials < 200;
        for ( const auto& c : r.counterexamples )
            std::cout << "  counterexample " << c.schema << " at " << c.source.describe() << ", " << c.history << "\n";
    }
    auto s = seconds_since( t0 );
    std::ostringstream d;
    d << campaigns << " validity campaigns x 200 random models, " << checks << " checks, " << found
      << " counterexamples, " << s << "s";
    report( "AC2", found == 0 && short_trials == 0 && campaigns > 0 && s <= 300.0, d.str() );
}

void ac3( std::uint64_t seed )
{
    bool ok = true, m4_seen = false;
    std::ostringstream d;
    for ( auto name : { "prop4.1", "prop4.2", "prop4.3", "prop4.4", "prop4.5" } )
    {
        CampaignOptions o;
        o.trials = 500;
        o.seed = seed;
        o.builtins = { "M3", "M4" };
        auto r = check_schema( find_schema( name ), o );
        std::size_t replayed = 0;
        for ( const auto& c : r.counterexamples )
        {
            replayed += replay( c );
            if ( std::string_view{ name } == "prop4.1" && c.source.builtin == "M4" && c.history == "q0 -(n,l)-> q1" &&
                 c.binding.rfind( "phi := p;", 0 ) == 0 )
                m4_seen = true;
        }
        ok = ok && replayed > 0 && replayed == r.counterexamples.size();
        d << name << "=" << replayed << "/" << r.counterexamples.size() << " ";
    }
    d << "(M4, q0 -(n,l)-> q1, p) " << ( m4_seen ? "found" : "missing" );
    report( "AC3", ok && m4_seen, d.str() );
}

void ac4( std::uint64_t seed )
{
    CampaignOptions o;
    o.trials = 300;
    o.seed = seed;
    o.builtins = builtin_names();
    auto r = oracle_crosscheck( o );
    std::ostringstream d;
    d << r.checks - r.counterexamples.size() << "/" << r.checks << " queries agree over " << r.trials
      << " random models and the built-ins, H 0..3";
    report( "AC4", r.passed() && r.trials >= 300 && r.checks > 0, d.str() );
}

void ac5( std::uint64_t seed )
{
    CampaignOptions o;
    o.trials = 60;
    o.seed = seed;
    o.builtins = builtin_names();
    auto r = epistemic_crosscheck( o );
    std::ostringstream d;
    d << r.checks - r.counterexamples.size() << "/" << r.checks << " points agree";
    report( "AC5", r.passed() && r.checks >= 1000, d.str() );
}

void ac6( std::uint64_t seed )
{
    CampaignOptions o;
    o.trials = 60;
    o.seed = seed;
    o.builtins = builtin_names();
    auto r = witness_crosscheck( o );
    std::ostringstream d;
    d << r.checks - r.counterexamples.size() << "/" << r.checks << " witnesses replay";
    report( "AC6", r.passed() && r.checks > 0, d.str() );
}

void ac7( const std::string& binary, std::uint64_t seed )
{
    auto command = "\"" + binary + "\" --format structured suite --seed " + std::to_string( seed ) + " 2>/dev/null";
    int s1 = 0, s2 = 0;
    auto a = capture( command, s1 );
    auto b = capture( command, s2 );
    std::ostringstream d;
    d << "two runs of suite --seed " << seed << ": " << a.size() << " bytes, "
      << ( a == b ? "identical" : "different" ) << ", exit " << s1 << "/" << s2;
    report( "AC7", !a.empty() && a == b && s1 == 0 && s2 == 0, d.str() );
}

} // namespace

int main( int argc, char** argv )
{
    std::string binary = argc > 1 ? argv[ 1 ] : DKATL_CLI_PATH;
    std::uint64_t seed = argc > 2 ? std::stoull( argv[ 2 ] ) : 1;
    ac1();
    ac2( seed );
    ac3( seed );
    ac4( seed );
    ac5( seed );
    ac6( seed );
    ac7( binary, seed );
    return failures == 0 ? 0 : 1;
}
