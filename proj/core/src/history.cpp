#include "dkatl/history.hpp"

#include <algorithm>
#include <cctype>

namespace dkatl
{

History History::prefix( std::size_t len ) const
{
    History out;
    out._agents = _agents;
    out._states.assign( _states.begin(), _states.begin() + static_cast< std::ptrdiff_t >( len + 1 ) );
    out._moves.assign( _moves.begin(), _moves.begin() + static_cast< std::ptrdiff_t >( len * _agents ) );
    return out;
}

History History::extended( std::span< const ActionId > action, StateId next ) const
{
    History out = *this;
    out.push( action, next );
    return out;
}

void History::push( std::span< const ActionId > action, StateId next )
{
    _moves.insert( _moves.end(), action.begin(), action.end() );
    _states.push_back( next );
}

std::size_t History::hash() const
{
    std::size_t seed = _states.size();
    for ( auto s : _states )
        seed = hash_combine( seed, s.value );
    for ( auto a : _moves )
        seed = hash_combine( seed, a.value );
    return seed;
}

bool InfoClass::contains( const History& h ) const
{
    return std::binary_search( members.begin(), members.end(), h );
}

History extend( const Model& m, const History& h, const JointAction& action )
{
    return h.extended( action.span(), successor( m, h.last(), action ) );
}

bool equiv_agent( const Model& m, const History& h, const History& g, AgentId i )
{
    if ( h.length() != g.length() )
        return false;
    for ( std::size_t k = 0; k <= h.length(); ++k )
        if ( !m.related( i, h.state( k ), g.state( k ) ) )
            return false;
    for ( std::size_t k = 0; k < h.length(); ++k )
        if ( h.action( k )[ i.value ] != g.action( k )[ i.value ] )
            return false;
    return true;
}

bool equiv_coalition( const Model& m, const History& h, const History& g, Coalition G )
{
    for ( auto i : G.members() )
        if ( !equiv_agent( m, h, g, i ) )
            return false;
    return true;
}

InfoClass equiv_class( const Model& m, const History& h, Coalition G )
{
    std::vector< History > frontier;
    for ( std::uint32_t s = 0; s < m.state_count(); ++s )
        if ( m.related( G, StateId{ s }, h.first() ) )
            frontier.emplace_back( StateId{ s }, m.agent_count() );

    for ( std::size_t k = 0; k < h.length(); ++k )
    {
        std::vector< History > next;
        const auto target = h.state( k + 1 );
        const auto move = h.action( k );
        for ( const auto& p : frontier )
        {
            const auto u = p.last();
            m.for_each_completion( u, G, move, [ & ]( std::span< const ActionId > act ) {
                auto v = m.transition( u, act );
                if ( v && m.related( G, *v, target ) )
                    next.push_back( p.extended( act, *v ) );
            } );
        }
        frontier = std::move( next );
    }
    std::sort( frontier.begin(), frontier.end() );
    return InfoClass{ G, std::move( frontier ) };
}

std::vector< History > histories_of_length( const Model& m, std::size_t length )
{
    std::vector< History > frontier;
    for ( std::uint32_t s = 0; s < m.state_count(); ++s )
        frontier.emplace_back( StateId{ s }, m.agent_count() );
    for ( std::size_t k = 0; k < length; ++k )
    {
        std::vector< History > next;
        for ( const auto& p : frontier )
            m.for_each_joint_action( p.last(), [ & ]( std::span< const ActionId > act ) {
                if ( auto v = m.transition( p.last(), act ) )
                    next.push_back( p.extended( act, *v ) );
            } );
        frontier = std::move( next );
    }
    std::sort( frontier.begin(), frontier.end() );
    return frontier;
}

std::vector< History > histories_up_to( const Model& m, std::size_t length )
{
    std::vector< History > out;
    for ( std::size_t k = 0; k <= length; ++k )
    {
        auto layer = histories_of_length( m, k );
        out.insert( out.end(), layer.begin(), layer.end() );
    }
    return out;
}

namespace
{

bool is_name_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '\'';
}

class history_reader
{
    std::string_view _text;
    std::size_t _pos = 0;

public:
    explicit history_reader( std::string_view text ) : _text{ text } {}

    void skip_ws()
    {
        while ( _pos < _text.size() && std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
            ++_pos;
    }

    [[nodiscard]] bool done()
    {
        skip_ws();
        return _pos >= _text.size();
    }

    [[noreturn]] void fail( const std::string& message ) const { throw parse_error( 1, _pos + 1, message ); }

    std::string name( const char* what )
    {
        skip_ws();
        auto start = _pos;
        while ( _pos < _text.size() && is_name_char( _text[ _pos ] ) )
            ++_pos;
        if ( start == _pos )
            fail( std::string( "expected " ) + what );
        return std::string( _text.substr( start, _pos - start ) );
    }

    void expect( std::string_view token )
    {
        skip_ws();
        if ( _text.substr( _pos, token.size() ) != token )
            fail( "expected '" + std::string( token ) + "'" );
        _pos += token.size();
    }

    bool accept( std::string_view token )
    {
        skip_ws();
        if ( _text.substr( _pos, token.size() ) != token )
            return false;
        _pos += token.size();
        return true;
    }

    [[nodiscard]] std::size_t column() const { return _pos + 1; }
};

} // namespace

History parse_history( const Model& m, std::string_view text )
{
    history_reader in{ text };
    auto state_id = [ & ]( const std::string& name, std::size_t col ) {
        auto s = m.find_state( name );
        if ( !s )
            throw parse_error( 1, col, "unknown state '" + name + "'" );
        return *s;
    };

    in.skip_ws();
    auto col = in.column();
    History h{ state_id( in.name( "state name" ), col ), m.agent_count() };
    while ( !in.done() )
    {
        in.expect( "-(" );
        std::vector< ActionId > act;
        do
        {
            in.skip_ws();
            auto acol = in.column();
            auto name = in.name( "action name" );
            auto a = m.find_action( name );
            if ( !a )
                throw parse_error( 1, acol, "unknown action '" + name + "'" );
            act.push_back( *a );
        } while ( in.accept( "," ) );
        in.expect( ")->" );
        if ( act.size() != m.agent_count() )
            in.fail( "joint action has " + std::to_string( act.size() ) + " components, expected " +
                     std::to_string( m.agent_count() ) );
        in.skip_ws();
        col = in.column();
        auto next = state_id( in.name( "state name" ), col );
        auto actual = successor( m, h.last(), JointAction{ act } );
        if ( actual != next )
            throw input_error( "history is not transition-consistent: " + m.state_name( h.last() ) + " " +
                               format_joint_action( m, act ) + " leads to " + m.state_name( actual ) + ", not " +
                               m.state_name( next ) );
        h.push( act, next );
    }
    return h;
}

std::string format_history( const Model& m, const History& h )
{
    std::string out = m.state_name( h.first() );
    for ( std::size_t k = 0; k < h.length(); ++k )
    {
        out += " -";
        out += format_joint_action( m, h.action( k ) );
        out += "-> ";
        out += m.state_name( h.state( k + 1 ) );
    }
    return out;
}

std::shared_ptr< const InfoClass > ClassCache::get( const History& h, Coalition G )
{
    {
        std::lock_guard lock{ _mutex };
        auto it = _classes.find( Key{ h, G } );
        if ( it != _classes.end() )
            return it->second;
    }
    auto cls = std::make_shared< const InfoClass >( equiv_class( *_model, h, G ) );
    std::lock_guard lock{ _mutex };
    auto [ it, inserted ] = _classes.try_emplace( Key{ h, G }, cls );
    if ( !inserted )
        return it->second;
    ++_built;
    for ( const auto& member : cls->members )
        _classes.try_emplace( Key{ member, G }, cls );
    return cls;
}

std::size_t ClassCache::classes_built() const
{
    std::lock_guard lock{ _mutex };
    return _built;
}

} // namespace dkatl
