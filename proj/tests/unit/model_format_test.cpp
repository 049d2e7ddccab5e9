#include "dkatl/harness.hpp"
#include "dkatl/model_format.hpp"

#include <gtest/gtest.h>

using namespace dkatl;

namespace
{

constexpr const char* small = R"(agents: a
states: s, t
props:
  p: t
actions:
  a @ *: x, y
transitions:
  s (x) -> s
  s (y) -> t
  t * -> t
)";

std::size_t error_line( const std::string& text )
{
    try
    {
        (void)load_model( text );
    }
    catch ( const parse_error& e )
    {
        return e.line();
    }
    return 0;
}

std::string replace( std::string text, const std::string& from, const std::string& to )
{
    text.replace( text.find( from ), from.size(), to );
    return text;
}

} // namespace

TEST( ModelFormat, LoadsWildcards )
{
    auto m = load_model( small );
    EXPECT_EQ( m.agent_count(), 1u );
    EXPECT_EQ( m.action_names(), ( std::vector< std::string >{ "x", "y" } ) );
    auto t = *m.find_state( "t" );
    EXPECT_EQ( m.available( AgentId{ 0 }, t ).size(), 2u );
    std::vector< ActionId > y{ *m.find_action( "y" ) };
    EXPECT_EQ( m.transition( t, y ), t );
}

TEST( ModelFormat, ExplicitBeatsWildcard )
{
    auto text = std::string{ small } + "  t (x) -> s\n";
    auto m = load_model( text );
    std::vector< ActionId > x{ *m.find_action( "x" ) };
    EXPECT_EQ( m.state_name( *m.transition( *m.find_state( "t" ), x ) ), "s" );
}

TEST( ModelFormat, BuiltinsRoundTrip )
{
    for ( const auto& name : builtin_names() )
    {
        auto suite = builtin( name );
        EXPECT_TRUE( validate_model( suite.model ).ok() ) << name;
        auto saved = save_model( suite.model );
        EXPECT_EQ( load_model( saved ), suite.model ) << name;
        EXPECT_EQ( save_model( load_model( saved ) ), saved ) << name;
        EXPECT_FALSE( suite.checks.empty() );
    }
}

TEST( ModelFormat, RandomModelsRoundTrip )
{
    for ( std::size_t t = 0; t < 200; ++t )
    {
        auto m = random_model( trial_params( 77, t ) );
        auto saved = save_model( m );
        ASSERT_EQ( load_model( saved ), m ) << saved;
    }
}

TEST( ModelFormat, ErrorsNameTheLine )
{
    EXPECT_EQ( error_line( replace( small, "  s (y) -> t", "  s (y) -> u" ) ), 9u );
    EXPECT_EQ( error_line( replace( small, "  p: t", "  p: u" ) ), 4u );
    EXPECT_EQ( error_line( replace( small, "actions:", "actionz:" ) ), 5u );
    EXPECT_EQ( error_line( replace( small, "  s (y) -> t", "  s (y) t" ) ), 9u );
    EXPECT_EQ( error_line( replace( small, "  s (x) -> s", "  s (x,x) -> s" ) ), 8u );
    EXPECT_EQ( error_line( std::string{ small } + "  s (x) -> t\n" ), 11u );
    EXPECT_EQ( error_line( std::string{ small } + "agents: b\n" ), 11u );
    EXPECT_GT( error_line( "states: s\n" ), 0u );
}

TEST( ModelFormat, SemanticViolationsAreCollected )
{
    auto text = replace( small, "  t * -> t\n", "" );
    try
    {
        (void)load_model( text );
        FAIL() << "expected invalid_model";
    }
    catch ( const invalid_model& e )
    {
        ASSERT_EQ( e.violations().size(), 2u );
        EXPECT_EQ( e.violations()[ 0 ].kind, Violation::Kind::transition_missing );
        EXPECT_NE( std::string{ e.what() }.find( "t" ), std::string::npos );
    }
    EXPECT_NO_THROW( (void)parse_model( text ) );
    EXPECT_FALSE( validate_model( parse_model( text ) ).ok() );
}

TEST( ModelFormat, IncoherentMenusAreRejected )
{
    auto text = replace( small, "  a @ *: x, y", "  a @ *: x, y\n  a @ t: x" ) + "indist:\n  a: {s, t}\n";
    EXPECT_THROW( (void)load_model( text ), invalid_model );
}

TEST( ModelFormat, CommentsAndContinuations )
{
    auto text = replace( small, "states: s, t", "# two states\nstates: s,\n  t   # trailing" );
    EXPECT_EQ( load_model( text ), load_model( small ) );
}

TEST( ModelFormat, UnknownBuiltin )
{
    EXPECT_THROW( (void)builtin( "M9" ), input_error );
    EXPECT_EQ( builtin_names(), ( std::vector< std::string >{ "M1", "M2", "M3", "M4" } ) );
}
