#include "cli.hpp"

#include "report.hpp"

#include "dkatl/errors.hpp"
#include "dkatl/formula.hpp"
#include "dkatl/harness.hpp"
#include "dkatl/history.hpp"
#include "dkatl/model_format.hpp"
#include "dkatl/semantics.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace dkatl::cli
{

namespace
{

using json = nlohmann::ordered_json;

constexpr int exit_error = 2;

struct ModelArgs
{
    std::string path;
    std::string builtin;
};

void add_model_options( CLI::App& cmd, ModelArgs& m )
{
    auto* path = cmd.add_option( "--model", m.path, "Model document" );
    auto* name = cmd.add_option( "--builtin", m.builtin, "Built-in model (M1, M2, M3, M4)" );
    path->excludes( name );
}

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw input_error( "cannot read '" + path + "'" );
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string model_text( const ModelArgs& m )
{
    if ( !m.builtin.empty() )
        return builtin( m.builtin ).document;
    if ( m.path.empty() )
        throw input_error( "one of --model or --builtin is required" );
    return read_file( m.path );
}

void emit( std::ostream& out, const json& j )
{
    out << j.dump( 2 ) << "\n";
}

json envelope( const char* command )
{
    json j;
    j[ "format" ] = format_tag;
    j[ "command" ] = command;
    return j;
}

int do_validate( const ModelArgs& margs, bool structured, std::ostream& out )
{
    auto m = parse_model( model_text( margs ) );
    auto result = validate_model( m );
    if ( structured )
    {
        auto j = envelope( "validate" );
        j[ "ok" ] = result.ok();
        j[ "violations" ] = json::array();
        for ( const auto& v : result.violations )
            j[ "violations" ].push_back( v.message );
        emit( out, j );
    }
    else if ( result.ok() )
        out << "ok\n";
    else
        for ( const auto& v : result.violations )
            out << v.message << "\n";
    return result.ok() ? 0 : 1;
}

struct CheckArgs
{
    std::string history;
    std::string formula;
    int horizon = -1;
    bool witness = false;
    bool stable = false;
};

int do_check( const ModelArgs& margs, const CheckArgs& a, bool structured, std::ostream& out )
{
    auto m = load_model( model_text( margs ) );
    auto at = parse_history( m, a.history );
    auto f = parse( a.formula );
    auto resolved = resolve( f, m );
    const Horizon h{ a.horizon >= 0 ? a.horizon : resolved.temporal_depth() };

    EvalOptions options;
    options.witness = a.witness;
    options.stable_check = a.stable;
    auto report = eval( m, at, f, h, options );

    if ( structured )
    {
        auto j = envelope( "check" );
        j[ "history" ] = format_history( m, at );
        j[ "formula" ] = print( f );
        j[ "horizon" ] = h.budget;
        j[ "verdict" ] = report.verdict;
        if ( report.horizon_stable )
            j[ "horizon_stable" ] = *report.horizon_stable;
        if ( report.witness )
            j[ "witness" ] = to_json( m, *report.witness );
        j[ "stats" ] = { { "nodes_explored", report.stats.nodes_explored },
                         { "classes_built", report.stats.classes_built } };
        emit( out, j );
    }
    else
    {
        out << "verdict: " << ( report.verdict ? "true" : "false" ) << "\n";
        out << "horizon: " << h.budget << "\n";
        if ( report.horizon_stable )
            out << "horizon_stable: " << ( *report.horizon_stable ? "true" : "false" ) << "\n";
        if ( report.witness )
        {
            out << "witness:\n";
            std::istringstream lines{ format_strategy( m, *report.witness ) };
            for ( std::string line; std::getline( lines, line ); )
                out << "  " << line << "\n";
        }
        else if ( a.witness && report.verdict && !f.is_coalition() )
            out << "witness: none (not a coalition-operator formula)\n";
        out << "stats: nodes=" << report.stats.nodes_explored << " classes=" << report.stats.classes_built << "\n";
    }
    return report.verdict ? 0 : 1;
}

struct FalsifyArgs
{
    std::string schema;
    bool list = false;
    std::size_t trials = 500;
    std::uint64_t seed = 1;
};

int do_falsify( const FalsifyArgs& a, bool structured, std::ostream& out )
{
    if ( a.list || a.schema.empty() )
    {
        for ( const auto& s : schema_corpus() )
            out << s.name << "  [" << to_string( s.polarity ) << "]  " << s.pattern << "\n";
        return a.list ? 0 : exit_error;
    }
    const auto& schema = find_schema( a.schema );
    CampaignOptions options;
    options.trials = a.trials;
    options.seed = a.seed;
    if ( schema.polarity == Polarity::valid )
        options.builtins = builtin_names();
    auto report = check_schema( schema, options );
    if ( structured )
    {
        auto j = envelope( "falsify" );
        j[ "seed" ] = a.seed;
        j[ "pattern" ] = schema.pattern;
        j[ "campaign" ] = to_json( report );
        emit( out, j );
    }
    else
        out << schema.pattern << "\n" << to_text( report );
    return report.passed() ? 0 : 1;
}

struct SuiteArgs
{
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    std::size_t falsify_trials = 500;
    std::size_t oracle_trials = 300;
};

int do_suite( const SuiteArgs& a, bool structured, std::ostream& out )
{
    SuiteOptions options;
    options.seed = a.seed;
    options.valid_trials = a.trials;
    options.falsify_trials = a.falsify_trials;
    options.oracle_trials = a.oracle_trials;
    if ( !structured )
        options.progress = [ & ]( const CampaignReport& r ) { out << to_text( r, 3 ) << std::flush; };
    auto reports = run_suite( options );

    bool all = std::all_of( reports.begin(), reports.end(), []( const auto& r ) { return r.passed(); } );
    if ( structured )
    {
        auto j = envelope( "suite" );
        j[ "seed" ] = a.seed;
        j[ "trials" ] = { { "valid", a.trials }, { "falsify", a.falsify_trials }, { "oracle", a.oracle_trials } };
        j[ "passed" ] = all;
        j[ "campaigns" ] = json::array();
        for ( const auto& r : reports )
            j[ "campaigns" ].push_back( to_json( r ) );
        emit( out, j );
    }
    else
    {
        auto failed = std::count_if( reports.begin(), reports.end(), []( const auto& r ) { return !r.passed(); } );
        out << ( all ? "suite passed" : "suite FAILED" ) << ": " << reports.size() - failed << "/" << reports.size()
            << " campaigns\n";
    }
    return all ? 0 : 1;
}

struct BuiltinArgs
{
    std::string name;
    bool checks = false;
    bool canonical = false;
};

int do_builtin( const BuiltinArgs& a, bool structured, std::ostream& out )
{
    if ( a.name.empty() )
    {
        if ( structured )
        {
            auto j = envelope( "builtin" );
            j[ "models" ] = builtin_names();
            emit( out, j );
        }
        else
            for ( const auto& n : builtin_names() )
                out << n << "\n";
        return 0;
    }
    auto suite = builtin( a.name );
    if ( structured )
    {
        auto j = envelope( "builtin" );
        j[ "name" ] = suite.name;
        j[ "document" ] = a.canonical ? save_model( suite.model ) : suite.document;
        j[ "checks" ] = json::array();
        for ( const auto& c : suite.checks )
            j[ "checks" ].push_back( { { "history", c.history },
                                       { "formula", c.formula },
                                       { "horizon", c.horizon },
                                       { "expected", c.expected } } );
        emit( out, j );
        return 0;
    }
    if ( a.checks )
    {
        for ( const auto& c : suite.checks )
            out << c.history << " | " << c.formula << " | H=" << c.horizon << " | "
                << ( c.expected ? "true" : "false" ) << "\n";
        return 0;
    }
    out << ( a.canonical ? save_model( suite.model ) : suite.document );
    return 0;
}

} // namespace

int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Bounded model checker for ATL with imperfect information, perfect recall and knowledge-sharing "
                  "coalitions",
                  "dkatl" };
    app.require_subcommand( 1 );
    app.fallthrough();
    std::string format = "text";
    app.add_option( "--format", format, "Output format" )
        ->check( CLI::IsMember( { "text", "structured" } ) )
        ->capture_default_str();

    ModelArgs validate_model_args, check_model_args;
    auto* validate = app.add_subcommand( "validate", "Check a model document against the iCGS invariants" );
    add_model_options( *validate, validate_model_args );

    CheckArgs check_args;
    auto* check = app.add_subcommand( "check", "Evaluate a formula at a history" );
    add_model_options( *check, check_model_args );
    check->add_option( "--history", check_args.history, "Evaluation history, e.g. \"q0 -(L,n,n)-> q1\"" )->required();
    check->add_option( "--formula", check_args.formula, "Formula, e.g. \"<<g1,g2>> X win\"" )->required();
    check->add_option( "--horizon", check_args.horizon, "Transition budget (default: temporal depth)" )
        ->check( CLI::NonNegativeNumber );
    check->add_flag( "--witness", check_args.witness, "Print a witness strategy for true coalition formulas" );
    check->add_flag( "--stable-check", check_args.stable, "Re-evaluate at horizon + 1 and report stability" );

    FalsifyArgs falsify_args;
    auto* falsify = app.add_subcommand( "falsify", "Run one schema campaign" );
    falsify->add_option( "--schema", falsify_args.schema, "Schema name" );
    falsify->add_flag( "--list", falsify_args.list, "List schemata" );
    falsify->add_option( "--trials", falsify_args.trials, "Random models" )->capture_default_str();
    falsify->add_option( "--seed", falsify_args.seed, "Campaign seed" )->capture_default_str();

    SuiteArgs suite_args;
    auto* suite = app.add_subcommand( "suite", "Built-in regression plus every standard campaign" );
    suite->add_option( "--seed", suite_args.seed, "Suite seed" )->capture_default_str();
    suite->add_option( "--trials", suite_args.trials, "Random models per validity schema" )->capture_default_str();
    suite->add_option( "--falsify-trials", suite_args.falsify_trials, "Random models per non-validity schema" )
        ->capture_default_str();
    suite->add_option( "--oracle-trials", suite_args.oracle_trials, "Random models for the evaluator cross-check" )
        ->capture_default_str();

    BuiltinArgs builtin_args;
    auto* builtin_cmd = app.add_subcommand( "builtin", "List built-in models or print one" );
    builtin_cmd->add_option( "name", builtin_args.name, "M1, M2, M3 or M4" );
    builtin_cmd->add_flag( "--checks", builtin_args.checks, "Print the expected verdicts instead" );
    builtin_cmd->add_flag( "--canonical", builtin_args.canonical, "Print the canonical saved form" );

    std::vector< const char* > argv;
    for ( const auto& a : args )
        argv.push_back( a.c_str() );
    try
    {
        app.parse( static_cast< int >( argv.size() ), argv.data() );
    }
    catch ( const CLI::ParseError& e )
    {
        int code = app.exit( e, out, err );
        return code == 0 ? 0 : exit_error;
    }

    const bool structured = format == "structured";
    try
    {
        if ( *validate )
            return do_validate( validate_model_args, structured, out );
        if ( *check )
            return do_check( check_model_args, check_args, structured, out );
        if ( *falsify )
            return do_falsify( falsify_args, structured, out );
        if ( *suite )
            return do_suite( suite_args, structured, out );
        return do_builtin( builtin_args, structured, out );
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
}

} // namespace dkatl::cli
