#include "dkatl/formula.hpp"
#include "dkatl/model_format.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dkatl;
using namespace dkatl::ast;

namespace
{

std::vector< std::string > some_agents( std::mt19937_64& rng )
{
    static const std::vector< std::string > pool{ "a", "b", "c" };
    std::vector< std::string > g;
    while ( g.empty() )
        for ( const auto& a : pool )
            if ( rng() % 2 )
                g.push_back( a );
    return g;
}

// Random core formulas built only through the convenience constructors.
Formula random_formula( std::mt19937_64& rng, int depth )
{
    if ( depth == 0 )
    {
        switch ( rng() % 4 )
        {
        case 0: return top();
        case 1: return bot();
        default: return prop( "p" + std::to_string( rng() % 3 ) );
        }
    }
    auto sub = [ & ] { return random_formula( rng, depth - 1 ); };
    switch ( rng() % 14 )
    {
    case 0: return neg( sub() );
    case 1: return conj( sub(), sub() );
    case 2: return disj( sub(), sub() );
    case 3: return implies( sub(), sub() );
    case 4: return iff( sub(), sub() );
    case 5: return next( some_agents( rng ), sub() );
    case 6: return always( some_agents( rng ), sub() );
    case 7: return eventually( some_agents( rng ), sub() );
    case 8: return until( some_agents( rng ), sub(), sub() );
    case 9: return know( "b", sub() );
    case 10: return dist( some_agents( rng ), sub() );
    case 11: return know_dual( "a", sub() );
    case 12: return dist_dual( some_agents( rng ), sub() );
    default: return random_formula( rng, 0 );
    }
}

} // namespace

TEST( Formula, PrintParseRoundTrip )
{
    std::mt19937_64 rng{ 42 };
    for ( int i = 0; i < 2000; ++i )
    {
        auto f = random_formula( rng, 1 + i % 4 );
        auto text = print( f );
        EXPECT_EQ( parse( text ), f ) << text;
        EXPECT_EQ( print( parse( text ) ), text );
    }
}

TEST( Formula, SugarExpandsToCore )
{
    EXPECT_EQ( parse( "K{1} p" ), until( { "1" }, prop( "p" ), prop( "p" ) ) );
    EXPECT_EQ( parse( "D{2,1} p" ), parse( "<<1,2>> p U p" ) );
    EXPECT_EQ( parse( "Khat{1} p" ), neg( know( "1", neg( prop( "p" ) ) ) ) );
    EXPECT_EQ( parse( "Dhat{1} p" ), parse( "~D{1} ~p" ) );
    EXPECT_EQ( parse( "<<a>> F p" ), parse( "<<a>> true U p" ) );
    EXPECT_EQ( parse( "p | q" ), parse( "~(~p & ~q)" ) );
    EXPECT_EQ( parse( "p -> q" ), parse( "~(p & ~q)" ) );
    EXPECT_EQ( parse( "<<a,a>> X p" ), parse( "<<a>> X p" ) );
}

TEST( Formula, Precedence )
{
    EXPECT_EQ( parse( "p & q | r" ), disj( conj( prop( "p" ), prop( "q" ) ), prop( "r" ) ) );
    EXPECT_EQ( parse( "p -> q -> r" ), implies( prop( "p" ), implies( prop( "q" ), prop( "r" ) ) ) );
    EXPECT_EQ( parse( "~p & q" ), conj( neg( prop( "p" ) ), prop( "q" ) ) );
    EXPECT_EQ( parse( "<<a>> X p & q" ), conj( next( { "a" }, prop( "p" ) ), prop( "q" ) ) );
    EXPECT_EQ( parse( "<<a>> p U q & r" ), conj( until( { "a" }, prop( "p" ), prop( "q" ) ), prop( "r" ) ) );
    EXPECT_EQ( parse( "p & <<a>> X <<a>> G p -> <<a>> G p" ),
               implies( conj( prop( "p" ), next( { "a" }, always( { "a" }, prop( "p" ) ) ) ),
                        always( { "a" }, prop( "p" ) ) ) );
}

TEST( Formula, ParseErrorsCarryColumns )
{
    auto column_of = []( const char* text ) -> std::size_t {
        try
        {
            (void)parse( text );
        }
        catch ( const parse_error& e )
        {
            return e.column();
        }
        return 0;
    };
    EXPECT_EQ( column_of( "p &" ), 4u );
    EXPECT_EQ( column_of( "<<>> X p" ), 3u );
    EXPECT_EQ( column_of( "p q" ), 3u );
    EXPECT_EQ( column_of( "(p" ), 3u );
    EXPECT_GT( column_of( "<<a>> p" ), 0u );
    EXPECT_GT( column_of( "p $ q" ), 0u );
    EXPECT_GT( column_of( "X p" ), 0u );
    EXPECT_THROW( (void)Formula::next( {}, top() ), input_error );
}

TEST( Formula, ResolutionSharesNodes )
{
    auto m = builtin( "M4" ).model;
    auto r = resolve( parse( "p & <<1>> X <<1>> G p -> <<1>> G p" ), m );
    EXPECT_EQ( r.temporal_depth(), 2 );
    EXPECT_FALSE( r.root().propositional );
    // p, <<1>> G p, <<1>> X ..., and the boolean glue; both G p occurrences share.
    auto twice = resolve( parse( "<<1>> G p & <<1>> G p" ), m );
    EXPECT_EQ( twice.root().lhs, twice.root().rhs );
    EXPECT_TRUE( resolve( parse( "K{1} p" ), m ).root().is_dist_knowledge() );
    EXPECT_THROW( (void)resolve( parse( "<<9>> X p" ), m ), name_error );
    EXPECT_THROW( (void)resolve( parse( "zz" ), m ), name_error );
}

TEST( Formula, TemporalDepth )
{
    auto m = builtin( "M4" ).model;
    EXPECT_EQ( resolve( parse( "p" ), m ).temporal_depth(), 0 );
    EXPECT_EQ( resolve( parse( "<<1>> X p" ), m ).temporal_depth(), 1 );
    EXPECT_EQ( resolve( parse( "<<1>> X <<2>> X p & <<1>> G p" ), m ).temporal_depth(), 2 );
}

TEST( Formula, LiftIsInverseOfDesugar )
{
    std::mt19937_64 rng{ 7 };
    for ( int i = 0; i < 300; ++i )
    {
        auto f = random_formula( rng, 3 );
        EXPECT_EQ( desugar( lift( f ) ), f );
    }
}
