#include "dkatl/harness.hpp"
#include "dkatl/model_format.hpp"
#include "dkatl/semantics.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dkatl;

TEST( Harness, TrialParamsStayInBounds )
{
    std::set< std::size_t > agents, states;
    for ( std::size_t t = 0; t < 500; ++t )
    {
        auto p = trial_params( 1, t, 2 );
        EXPECT_GE( p.agents, 2u );
        EXPECT_LE( p.agents, 3u );
        EXPECT_GE( p.states, 2u );
        EXPECT_LE( p.states, 6u );
        EXPECT_LE( p.max_actions, p.agents == 3 ? 2u : 3u );
        agents.insert( p.agents );
        states.insert( p.states );
        EXPECT_EQ( p, trial_params( 1, t, 2 ) );
    }
    EXPECT_EQ( agents.size(), 2u );
    EXPECT_EQ( states.size(), 5u );
    EXPECT_NE( trial_params( 1, 0 ), trial_params( 2, 0 ) );
}

TEST( Harness, EvaluationPointsAreExhaustive )
{
    auto m = builtin( "M3" ).model;
    EXPECT_EQ( evaluation_points( m ), histories_up_to( m, 2 ) );
}

TEST( Harness, CorpusShape )
{
    const auto& corpus = schema_corpus();
    std::set< std::string > names;
    std::size_t falsifiable = 0;
    for ( const auto& s : corpus )
    {
        EXPECT_TRUE( names.insert( s.name ).second ) << s.name;
        falsifiable += s.polarity == Polarity::falsifiable;
    }
    EXPECT_EQ( falsifiable, 6u );
    for ( auto n : { "prop4.1", "prop4.2", "prop4.3", "prop4.4", "prop4.5", "prop3.5-converse", "prop5", "cor1.next" } )
        EXPECT_TRUE( names.count( n ) ) << n;
    EXPECT_THROW( (void)find_schema( "nope" ), input_error );
}

TEST( Harness, SchemaSidesInstantiate )
{
    Binding b;
    b.phi = parse( "p" );
    b.psi = parse( "q" );
    b.G = { "1" };
    b.G1 = { "1" };
    b.G2 = { "2" };
    b.N = { "1", "2" };
    b.horizon = 2;
    auto [ lhs, rhs ] = find_schema( "prop4.1" ).sides( b );
    EXPECT_EQ( lhs, parse( "p & <<1>> X <<1>> G p" ) );
    EXPECT_EQ( rhs, parse( "<<1>> G p" ) );
    EXPECT_EQ( b.complement(), std::vector< std::string >{ "2" } );
    EXPECT_EQ( b.merged(), ( std::vector< std::string >{ "1", "2" } ) );
}

TEST( Harness, FalsifierFindsTheBoxCounterModel )
{
    CampaignOptions o;
    o.trials = 50;
    auto r = check_schema( find_schema( "prop4.1" ), o );
    EXPECT_TRUE( r.passed() );
    bool m4 = false;
    for ( const auto& c : r.counterexamples )
    {
        EXPECT_TRUE( replay( c ) );
        m4 = m4 || ( c.source.builtin == "M4" && c.history == "q0 -(n,l)-> q1" && c.lhs == "p & <<1>> X <<1>> G p" );
    }
    EXPECT_TRUE( m4 );
}

TEST( Harness, ValidSchemaSmallCampaign )
{
    CampaignOptions o;
    o.trials = 20;
    auto r = check_schema( find_schema( "prop2.4-always" ), o );
    EXPECT_TRUE( r.passed() );
    EXPECT_TRUE( r.counterexamples.empty() );
    EXPECT_GT( r.checks, 0u );
}

TEST( Harness, CampaignsAreDeterministic )
{
    CampaignOptions o;
    o.trials = 30;
    o.seed = 11;
    auto a = check_schema( find_schema( "prop4.4" ), o );
    auto b = check_schema( find_schema( "prop4.4" ), o );
    ASSERT_EQ( a.counterexamples.size(), b.counterexamples.size() );
    EXPECT_EQ( a.checks, b.checks );
    for ( std::size_t i = 0; i < a.counterexamples.size(); ++i )
    {
        EXPECT_EQ( a.counterexamples[ i ].lhs, b.counterexamples[ i ].lhs );
        EXPECT_EQ( a.counterexamples[ i ].history, b.counterexamples[ i ].history );
        EXPECT_EQ( a.counterexamples[ i ].source.describe(), b.counterexamples[ i ].source.describe() );
    }
}

TEST( Harness, RandomCounterexamplesReplay )
{
    CampaignOptions o;
    o.trials = 200;
    o.builtins = {};
    auto r = check_schema( find_schema( "prop3.5-converse" ), o );
    ASSERT_FALSE( r.counterexamples.empty() );
    for ( const auto& c : r.counterexamples )
    {
        ASSERT_TRUE( c.source.params );
        EXPECT_TRUE( replay( c ) ) << c.source.describe();
    }
}

TEST( Harness, ReplayRejectsDoctoredRecords )
{
    CampaignOptions o;
    o.trials = 0;
    auto r = check_schema( find_schema( "prop4.1" ), o );
    ASSERT_FALSE( r.counterexamples.empty() );
    auto c = r.counterexamples.front();
    c.rhs_verdict = !c.rhs_verdict;
    EXPECT_FALSE( replay( c ) );
}

TEST( Harness, BuiltinRegressionPasses )
{
    auto r = builtin_regression();
    EXPECT_TRUE( r.passed() );
    EXPECT_EQ( r.checks, 13u );
}
