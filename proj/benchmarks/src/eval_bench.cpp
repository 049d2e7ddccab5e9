#include "dkatl/harness.hpp"
#include "dkatl/model_format.hpp"
#include "dkatl/semantics.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dkatl;

namespace
{

void BM_BuiltinRegression( benchmark::State& state )
{
    for ( auto _ : state )
        benchmark::DoNotOptimize( builtin_regression() );
}
BENCHMARK( BM_BuiltinRegression );

// M1 eventually-win from the root at growing horizons, fresh evaluator each time.
void BM_ShellGameEventually( benchmark::State& state )
{
    auto m = builtin( "M1" ).model;
    auto h = parse_history( m, "q0" );
    auto f = parse( "<<g1,g2>> F win" );
    const Horizon H{ static_cast< int >( state.range( 0 ) ) };
    for ( auto _ : state )
        benchmark::DoNotOptimize( eval( m, h, f, H ).verdict );
}
BENCHMARK( BM_ShellGameEventually )->DenseRange( 1, 6 );

// Every evaluation point of a random model against one always/until query.
void BM_RandomModelPoints( benchmark::State& state )
{
    GenParams p;
    p.agents = 2;
    p.states = static_cast< std::size_t >( state.range( 0 ) );
    p.max_actions = 2;
    p.props = 3;
    p.density = 0.5;
    p.seed = 42;
    auto m = random_model( p );
    auto points = evaluation_points( m );
    auto always = parse( "<<ag0>> G (p0 | p1)" );
    auto until = parse( "<<ag0,ag1>> p0 U p2" );
    const Horizon H{ static_cast< int >( state.range( 1 ) ) };
    for ( auto _ : state )
    {
        Evaluator ev{ m };
        auto a = resolve( always, m );
        auto u = resolve( until, m );
        std::size_t yes = 0;
        for ( const auto& h : points )
            yes += ev.holds( h, a, H ) + ev.holds( h, u, H );
        benchmark::DoNotOptimize( yes );
    }
    state.counters[ "points" ] = static_cast< double >( points.size() );
}
BENCHMARK( BM_RandomModelPoints )->ArgsProduct( { { 3, 6 }, { 1, 2, 3, 4 } } );

void BM_FixedPointRandomModel( benchmark::State& state )
{
    GenParams p;
    p.agents = 2;
    p.states = 6;
    p.max_actions = 2;
    p.props = 3;
    p.density = 0.5;
    p.seed = 42;
    auto m = random_model( p );
    auto points = evaluation_points( m );
    auto f = parse( "<<ag0,ag1>> p0 U p2" );
    const Horizon H{ static_cast< int >( state.range( 0 ) ) };
    for ( auto _ : state )
    {
        FixedPointEvaluator ev{ m };
        auto r = resolve( f, m );
        std::size_t yes = 0;
        for ( const auto& h : points )
            yes += ev.holds( h, r, H );
        benchmark::DoNotOptimize( yes );
    }
}
BENCHMARK( BM_FixedPointRandomModel )->DenseRange( 1, 4 );

void BM_SchemaCampaign( benchmark::State& state )
{
    CampaignOptions o;
    o.trials = 20;
    for ( auto _ : state )
        benchmark::DoNotOptimize( check_schema( find_schema( "cor1.always" ), o ).checks );
}
BENCHMARK( BM_SchemaCampaign )->Unit( benchmark::kMillisecond );

} // namespace

BENCHMARK_MAIN();
