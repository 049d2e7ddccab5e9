#include "dkatl/harness.hpp"
#include "dkatl/model.hpp"
#include "dkatl/model_format.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dkatl;

namespace
{

Model two_state()
{
    return Model::Builder{}
        .agents( { "a", "b" } )
        .states( { "s", "t" } )
        .actions( { "x", "y" } )
        .propositions( { "p" } )
        .menu( "a", "s", { "x", "y" } )
        .menu( "a", "t", { "x" } )
        .menu( "b", "s", { "x" } )
        .menu( "b", "t", { "x" } )
        .label( "p", "t" )
        .transition( "s", { "x", "x" }, "s" )
        .transition( "s", { "y", "x" }, "t" )
        .transition( "t", { "x", "x" }, "t" )
        .build();
}

} // namespace

TEST( Model, NamesAndLookups )
{
    auto m = two_state();
    EXPECT_EQ( m.agent_count(), 2u );
    EXPECT_EQ( m.state_count(), 2u );
    EXPECT_EQ( m.find_state( "t" )->value, 1u );
    EXPECT_FALSE( m.find_agent( "zz" ) );
    EXPECT_TRUE( m.holds( PropId{ 0 }, StateId{ 1 } ) );
    EXPECT_FALSE( m.holds( PropId{ 0 }, StateId{ 0 } ) );
    EXPECT_EQ( props_at( m, StateId{ 1 } ), std::vector< std::string >{ "p" } );
    EXPECT_TRUE( validate_model( m ).ok() );
}

TEST( Model, JointActionsAreLexicographic )
{
    auto m = two_state();
    auto d = joint_actions( m, StateId{ 0 } );
    ASSERT_EQ( d.size(), 2u );
    EXPECT_EQ( format_joint_action( m, d[ 0 ].span() ), "(x,x)" );
    EXPECT_EQ( format_joint_action( m, d[ 1 ].span() ), "(y,x)" );
}

TEST( Model, SuccessorChecksLegality )
{
    auto m = two_state();
    JointAction yx{ std::vector< ActionId >{ ActionId{ 1 }, ActionId{ 0 } } };
    EXPECT_EQ( successor( m, StateId{ 0 }, yx ), StateId{ 1 } );
    EXPECT_THROW( (void)successor( m, StateId{ 1 }, yx ), illegal_action );
    EXPECT_FALSE( m.transition( StateId{ 1 }, yx.span() ) );
}

TEST( Model, CompletionsFixCoalitionComponents )
{
    auto m = load_model( builtin( "M1" ).document );
    auto q1 = *m.find_state( "q1" );
    auto g2 = *m.find_agent( "g2" );
    std::vector< ActionId > partial( 3, *m.find_action( "r" ) );
    std::vector< std::string > seen;
    m.for_each_completion( q1, Coalition::of( { g2.value } ), partial,
                           [ & ]( std::span< const ActionId > a ) { seen.push_back( format_joint_action( m, a ) ); } );
    EXPECT_EQ( seen, std::vector< std::string >{ "(n,n,r)" } );
}

TEST( Model, ValidationReportsEachKind )
{
    // Missing transition and an empty menu.
    auto holes = Model::Builder{}
                     .agents( { "a" } )
                     .states( { "s", "t" } )
                     .actions( { "x" } )
                     .menu( "a", "s", { "x" } )
                     .build();
    auto r = validate_model( holes );
    ASSERT_FALSE( r.ok() );
    std::set< Violation::Kind > kinds;
    for ( const auto& v : r.violations )
        kinds.insert( v.kind );
    EXPECT_TRUE( kinds.count( Violation::Kind::empty_menu ) );
    EXPECT_TRUE( kinds.count( Violation::Kind::transition_missing ) );

    // Menus differ inside one indistinguishability block.
    auto incoherent = Model::Builder{}
                          .agents( { "a" } )
                          .states( { "s", "t" } )
                          .actions( { "x", "y" } )
                          .menu( "a", "s", { "x", "y" } )
                          .menu( "a", "t", { "x" } )
                          .transition( "s", { "x" }, "s" )
                          .transition( "s", { "y" }, "s" )
                          .transition( "t", { "x" }, "t" )
                          .indistinguishable( "a", { "s", "t" } )
                          .build();
    auto c = validate_model( incoherent );
    ASSERT_EQ( c.violations.size(), 1u );
    EXPECT_EQ( c.violations[ 0 ].kind, Violation::Kind::action_knowledge_coherence );

    auto stray = Model::Builder{}
                     .agents( { "a" } )
                     .states( { "s" } )
                     .actions( { "x", "y" } )
                     .menu( "a", "s", { "x" } )
                     .transition( "s", { "x" }, "s" )
                     .transition( "s", { "y" }, "s" )
                     .build();
    auto st = validate_model( stray );
    ASSERT_EQ( st.violations.size(), 1u );
    EXPECT_EQ( st.violations[ 0 ].kind, Violation::Kind::transition_outside_menu );
}

TEST( Model, BuilderRejectsStructuralErrors )
{
    EXPECT_THROW( (void)Model::Builder{}.agents( { "a", "a" } ).states( { "s" } ).build(), input_error );
    EXPECT_THROW( Model::Builder{}.agents( { "a" } ).states( { "s" } ).menu( "b", "s", {} ), name_error );
}

TEST( Model, OverlappingGroupsMerge )
{
    auto m = Model::Builder{}
                 .agents( { "a" } )
                 .states( { "s", "t", "u" } )
                 .actions( { "x" } )
                 .menu( "a", "s", { "x" } )
                 .menu( "a", "t", { "x" } )
                 .menu( "a", "u", { "x" } )
                 .transition( "s", { "x" }, "s" )
                 .transition( "t", { "x" }, "t" )
                 .transition( "u", { "x" }, "u" )
                 .indistinguishable( "a", { "s", "t" } )
                 .indistinguishable( "a", { "t", "u" } )
                 .build();
    EXPECT_TRUE( m.related( AgentId{ 0 }, StateId{ 0 }, StateId{ 2 } ) );
}

TEST( Model, RandomModelsAlwaysValidate )
{
    for ( std::size_t t = 0; t < 300; ++t )
    {
        auto p = trial_params( 99, t );
        auto m = random_model( p );
        EXPECT_TRUE( validate_model( m ).ok() ) << "trial " << t;
        EXPECT_LE( m.state_count(), 6u );
        EXPECT_LE( m.agent_count(), 3u );
        EXPECT_EQ( m, random_model( p ) );
    }
}
