#include "brute_force.hpp"

#include "dkatl/harness.hpp"
#include "dkatl/history.hpp"
#include "dkatl/model_format.hpp"

#include <gtest/gtest.h>

using namespace dkatl;

TEST( History, ParseAndFormat )
{
    auto m = builtin( "M1" ).model;
    auto h = parse_history( m, "q0 -(L,n,n)-> q1 -(n,n,l)-> q2" );
    EXPECT_EQ( h.length(), 2u );
    EXPECT_EQ( m.state_name( h.last() ), "q2" );
    EXPECT_EQ( format_history( m, h ), "q0 -(L,n,n)-> q1 -(n,n,l)-> q2" );
    EXPECT_EQ( format_history( m, h.prefix( 1 ) ), "q0 -(L,n,n)-> q1" );
}

TEST( History, RejectsInconsistentText )
{
    auto m = builtin( "M1" ).model;
    EXPECT_THROW( (void)parse_history( m, "q0 -(L,n,n)-> q1'" ), input_error );   // wrong successor
    EXPECT_THROW( (void)parse_history( m, "q0 -(L,n,l)-> q1" ), illegal_action );  // outside D(q0)
    EXPECT_THROW( (void)parse_history( m, "q9" ), input_error );
    EXPECT_THROW( (void)parse_history( m, "q0 -(L,n)-> q1" ), input_error );
    EXPECT_THROW( (void)parse_history( m, "" ), input_error );
}

TEST( History, ShellGameClasses )
{
    auto m = builtin( "M1" ).model;
    auto h = parse_history( m, "q0 -(L,n,n)-> q1" );
    auto g1 = *m.find_agent( "g1" ), g2 = *m.find_agent( "g2" );
    EXPECT_EQ( equiv_class( m, h, Coalition::of( { g2.value } ) ).members.size(), 2u );
    EXPECT_EQ( equiv_class( m, h, Coalition::of( { g1.value } ) ).members.size(), 1u );
    EXPECT_EQ( equiv_class( m, h, Coalition::of( { g1.value, g2.value } ) ).members.size(), 1u );
}

TEST( History, EnumerationCounts )
{
    auto m = builtin( "M3" ).model;
    EXPECT_EQ( histories_of_length( m, 0 ).size(), 5u );
    EXPECT_EQ( histories_of_length( m, 1 ).size(), 6u );
    EXPECT_EQ( histories_up_to( m, 1 ).size(), 11u );
}

// Classes from the synchronized walk match a scan of every history, and the
// relation is an equivalence.
TEST( History, ClassesMatchBruteForce )
{
    for ( std::size_t t = 0; t < 60; ++t )
    {
        auto m = random_model( trial_params( 5, t ) );
        ClassCache cache{ m };
        for ( std::size_t len = 0; len <= 2; ++len )
        {
            auto all = oracle::all_histories( m, len );
            ASSERT_EQ( all, histories_of_length( m, len ) );
            for ( std::uint64_t bits = 1; bits < ( 1ULL << m.agent_count() ); ++bits )
            {
                Coalition G{ bits };
                for ( std::size_t k = 0; k < all.size(); k += 3 )
                {
                    const auto& h = all[ k ];
                    auto cls = equiv_class( m, h, G );
                    ASSERT_EQ( cls.members, oracle::brute_class( m, h, G ) ) << format_history( m, h );
                    EXPECT_TRUE( cls.contains( h ) );
                    EXPECT_EQ( cache.get( h, G )->members, cls.members );
                    for ( const auto& g : cls.members )
                    {
                        EXPECT_TRUE( equiv_coalition( m, g, h, G ) );
                        EXPECT_EQ( cache.get( g, G )->representative(), cls.representative() );
                    }
                }
            }
        }
    }
}

TEST( History, LargerCoalitionsRefineClasses )
{
    for ( std::size_t t = 0; t < 40; ++t )
    {
        auto m = random_model( trial_params( 6, t, 2 ) );
        auto all = Coalition::all( m.agent_count() );
        for ( const auto& h : histories_up_to( m, 2 ) )
        {
            auto big = equiv_class( m, h, all );
            auto small = equiv_class( m, h, Coalition::of( { 0 } ) );
            for ( const auto& g : big.members )
                EXPECT_TRUE( small.contains( g ) );
        }
    }
}
