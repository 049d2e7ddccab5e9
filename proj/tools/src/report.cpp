#include "report.hpp"

#include "dkatl/history.hpp"

#include <cstdio>

namespace dkatl::cli
{

nlohmann::ordered_json to_json( const Counterexample& c )
{
    nlohmann::ordered_json j;
    j[ "schema" ] = c.schema;
    if ( c.source.params )
    {
        const auto& p = *c.source.params;
        j[ "model" ] = { { "agents", p.agents },  { "states", p.states },   { "max_actions", p.max_actions },
                         { "props", p.props },    { "density", p.density }, { "seed", p.seed } };
    }
    else
        j[ "model" ] = { { "builtin", c.source.builtin } };
    j[ "history" ] = c.history;
    if ( !c.binding.empty() )
        j[ "binding" ] = c.binding;
    j[ "horizon" ] = c.horizon;
    j[ "connective" ] = std::string( to_string( c.connective ) );
    j[ "lhs" ] = c.lhs;
    j[ "rhs" ] = c.rhs;
    if ( !c.rhs_mode.empty() )
        j[ "rhs_mode" ] = c.rhs_mode;
    j[ "lhs_verdict" ] = c.lhs_verdict;
    j[ "rhs_verdict" ] = c.rhs_verdict;
    return j;
}

nlohmann::ordered_json to_json( const CampaignReport& r )
{
    nlohmann::ordered_json j;
    j[ "name" ] = r.name;
    j[ "polarity" ] = std::string( to_string( r.polarity ) );
    j[ "trials" ] = r.trials;
    j[ "checks" ] = r.checks;
    j[ "passed" ] = r.passed();
    j[ "counterexamples" ] = nlohmann::ordered_json::array();
    for ( const auto& c : r.counterexamples )
        j[ "counterexamples" ].push_back( to_json( c ) );
    return j;
}

nlohmann::ordered_json to_json( const Model& m, const StrategyProfile& F )
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    auto members = F.coalition.members();
    for ( const auto& [ rep, acts ] : F.choice )
    {
        nlohmann::ordered_json choice;
        for ( std::size_t i = 0; i < members.size(); ++i )
            choice[ m.agent_name( members[ i ] ) ] = m.action_name( acts[ i ] );
        j.push_back( { { "class", format_history( m, rep ) }, { "choice", choice } } );
    }
    return j;
}

std::string to_text( const CampaignReport& r, std::size_t max_counterexamples )
{
    char timing[ 32 ];
    std::snprintf( timing, sizeof timing, "%.2fs", r.wall_seconds );
    std::string out = std::string( r.passed() ? "PASS " : "FAIL " ) + r.name + " (" + std::string( to_string( r.polarity ) ) +
                      ") trials=" + std::to_string( r.trials ) + " checks=" + std::to_string( r.checks ) +
                      " counterexamples=" + std::to_string( r.counterexamples.size() ) + " " + timing + "\n";
    for ( std::size_t i = 0; i < r.counterexamples.size() && i < max_counterexamples; ++i )
    {
        const auto& c = r.counterexamples[ i ];
        out += "  at " + c.source.describe() + ", " + c.history + ", H=" + std::to_string( c.horizon ) + "\n";
        if ( !c.binding.empty() )
            out += "    " + c.binding + "\n";
        out += "    lhs " + std::string( c.lhs_verdict ? "true " : "false" ) + "  " + c.lhs + "\n";
        out += "    rhs " + std::string( c.rhs_verdict ? "true " : "false" ) + "  " + c.rhs +
               ( c.rhs_mode.empty() ? "" : "  [" + c.rhs_mode + "]" ) + "\n";
    }
    if ( r.counterexamples.size() > max_counterexamples )
        out += "  ... " + std::to_string( r.counterexamples.size() - max_counterexamples ) + " more\n";
    return out;
}

} // namespace dkatl::cli
