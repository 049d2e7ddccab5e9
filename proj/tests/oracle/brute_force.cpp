#include "brute_force.hpp"

#include "dkatl/errors.hpp"

#include <algorithm>

namespace dkatl::oracle
{

std::vector< std::vector< ActionId > > joint_menu( const Model& m, StateId s )
{
    std::vector< std::vector< ActionId > > out{ {} };
    for ( std::uint32_t a = 0; a < m.agent_count(); ++a )
    {
        std::vector< std::vector< ActionId > > next;
        for ( const auto& prefix : out )
            for ( auto act : m.available( AgentId{ a }, s ) )
            {
                auto row = prefix;
                row.push_back( act );
                next.push_back( std::move( row ) );
            }
        out = std::move( next );
    }
    return out;
}

std::vector< History > all_histories( const Model& m, std::size_t length )
{
    std::vector< History > layer;
    for ( std::uint32_t s = 0; s < m.state_count(); ++s )
        layer.emplace_back( StateId{ s }, m.agent_count() );
    for ( std::size_t k = 0; k < length; ++k )
    {
        std::vector< History > next;
        for ( const auto& h : layer )
            for ( const auto& act : joint_menu( m, h.last() ) )
                next.push_back( h.extended( act, *m.transition( h.last(), act ) ) );
        layer = std::move( next );
    }
    std::sort( layer.begin(), layer.end() );
    return layer;
}

bool same_view( const Model& m, const History& h, const History& g, Coalition G )
{
    if ( h.length() != g.length() )
        return false;
    for ( auto i : G.members() )
    {
        for ( std::size_t k = 0; k <= h.length(); ++k )
            if ( m.block( i, h.state( k ) ) != m.block( i, g.state( k ) ) )
                return false;
        for ( std::size_t k = 0; k < h.length(); ++k )
            if ( h.action( k )[ i.value ] != g.action( k )[ i.value ] )
                return false;
    }
    return true;
}

std::vector< History > brute_class( const Model& m, const History& h, Coalition G )
{
    std::vector< History > out;
    for ( auto& g : all_histories( m, h.length() ) )
        if ( same_view( m, h, g, G ) )
            out.push_back( std::move( g ) );
    return out;
}

Coalition BruteForce::coalition_of( const Formula& f ) const
{
    Coalition G;
    for ( const auto& name : f.coalition() )
        G.insert( *_m.find_agent( name ) );
    return G;
}

const History& BruteForce::rep( const History& h, Coalition G )
{
    auto key = std::make_pair( h, G.bits() );
    auto it = _reps.find( key );
    if ( it == _reps.end() )
        it = _reps.emplace( key, brute_class( _m, h, G ).front() ).first;
    return it->second;
}

bool BruteForce::holds( const History& h, const Formula& f, int r )
{
    switch ( f.op() )
    {
    case Op::top: return true;
    case Op::bot: return false;
    case Op::prop: return _m.holds( *_m.find_prop( f.name() ), h.last() );
    case Op::negation: return !holds( h, f.lhs(), r );
    case Op::conjunction: return holds( h, f.lhs(), r ) && holds( h, f.rhs(), r );
    default: break;
    }
    auto key = std::make_tuple( h, print( f ), r );
    if ( auto it = _memo.find( key ); it != _memo.end() )
        return it->second;
    bool v = coalition_holds( h, f, r );
    _memo.emplace( std::move( key ), v );
    return v;
}

bool BruteForce::coalition_holds( const History& h, const Formula& f, int r )
{
    if ( f.op() == Op::next && r < 1 )
        throw unsupported_query( "next at budget 0" );
    const auto G = coalition_of( f );
    Strategy F;
    return search( brute_class( _m, h, G ), f, G, r, F );
}

bool BruteForce::search( const std::vector< History >& start, const Formula& f, Coalition G, int r, Strategy& F )
{
    std::optional< History > need;
    for ( const auto& h : start )
    {
        auto w = walk( h, 0, f, G, r, F );
        if ( !w.ok )
            return false;
        if ( w.need && !need )
            need = w.need;
    }
    if ( !need )
    {
        ++_tried;
        return true;
    }

    // Branch on every uniform choice for the blocking class.
    const auto s = need->last();
    std::vector< std::vector< ActionId > > choices{ {} };
    for ( auto i : G.members() )
    {
        std::vector< std::vector< ActionId > > next;
        for ( const auto& prefix : choices )
            for ( auto act : _m.available( i, s ) )
            {
                auto row = prefix;
                row.push_back( act );
                next.push_back( std::move( row ) );
            }
        choices = std::move( next );
    }
    for ( const auto& c : choices )
    {
        F[ *need ] = c;
        if ( search( start, f, G, r, F ) )
            return true;
    }
    F.erase( *need );
    return false;
}

BruteForce::Walk BruteForce::walk( const History& h, int d, const Formula& f, Coalition G, int r, const Strategy& F )
{
    const int left = r - d;
    bool stop = false;
    switch ( f.op() )
    {
    case Op::next:
        if ( d == 1 )
            return { holds( h, f.lhs(), r - 1 ), std::nullopt };
        break;
    case Op::always:
        if ( !holds( h, f.lhs(), left ) )
            return { false, std::nullopt };
        stop = left == 0;
        break;
    case Op::until:
        if ( holds( h, f.rhs(), left ) )
            return { true, std::nullopt };
        if ( left == 0 || !holds( h, f.lhs(), left ) )
            return { false, std::nullopt };
        break;
    default: return { false, std::nullopt };
    }
    if ( stop )
        return { true, std::nullopt };

    const auto& key = rep( h, G );
    auto it = F.find( key );
    if ( it == F.end() )
        return { true, key };

    const auto members = G.members();
    Walk out;
    for ( const auto& act : joint_menu( _m, h.last() ) )
    {
        bool follows = true;
        for ( std::size_t k = 0; k < members.size(); ++k )
            follows = follows && act[ members[ k ].value ] == it->second[ k ];
        if ( !follows )
            continue;
        auto w = walk( h.extended( act, *_m.transition( h.last(), act ) ), d + 1, f, G, r, F );
        if ( !w.ok )
            return w;
        if ( w.need && !out.need )
            out.need = w.need;
    }
    return out;
}

} // namespace dkatl::oracle
