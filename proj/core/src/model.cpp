#include "dkatl/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace dkatl
{

namespace
{

template < class IdT >
std::optional< IdT > find_in( const std::vector< std::string >& names, std::string_view name )
{
    auto it = std::find( names.begin(), names.end(), name );
    if ( it == names.end() )
        return std::nullopt;
    return IdT{ static_cast< std::uint32_t >( it - names.begin() ) };
}

void check_unique( const std::vector< std::string >& names, const char* what )
{
    std::unordered_set< std::string > seen;
    for ( const auto& n : names )
    {
        if ( n.empty() )
            throw input_error( std::string( "empty " ) + what + " name" );
        if ( !seen.insert( n ).second )
            throw input_error( std::string( "duplicate " ) + what + " '" + n + "'" );
    }
}

struct union_find
{
    std::vector< std::uint32_t > parent;

    explicit union_find( std::size_t n ) : parent( n ) { std::iota( parent.begin(), parent.end(), 0U ); }

    std::uint32_t find( std::uint32_t x )
    {
        while ( parent[ x ] != x )
        {
            parent[ x ] = parent[ parent[ x ] ];
            x = parent[ x ];
        }
        return x;
    }

    void unite( std::uint32_t a, std::uint32_t b ) { parent[ find( a ) ] = find( b ); }
};

} // namespace

std::optional< AgentId > Model::find_agent( std::string_view name ) const { return find_in< AgentId >( _agents, name ); }
std::optional< StateId > Model::find_state( std::string_view name ) const { return find_in< StateId >( _states, name ); }
std::optional< ActionId > Model::find_action( std::string_view name ) const { return find_in< ActionId >( _actions, name ); }
std::optional< PropId > Model::find_prop( std::string_view name ) const { return find_in< PropId >( _props, name ); }

bool Model::is_available( AgentId a, StateId s, ActionId act ) const
{
    const auto& menu = available( a, s );
    return std::binary_search( menu.begin(), menu.end(), act );
}

bool Model::related( Coalition g, StateId s, StateId t ) const
{
    for ( auto b = g.bits(); b != 0; b &= b - 1 )
    {
        auto a = static_cast< std::uint32_t >( std::countr_zero( b ) );
        if ( _blocks[ a ][ s.value ] != _blocks[ a ][ t.value ] )
            return false;
    }
    return true;
}

std::optional< std::size_t > Model::table_index( StateId s, std::span< const ActionId > action ) const
{
    if ( s.value >= _states.size() || action.size() != _agents.size() )
        return std::nullopt;
    std::size_t index = 0;
    for ( std::size_t a = 0; a < _agents.size(); ++a )
    {
        const auto& menu = _menus[ a ][ s.value ];
        auto it = std::lower_bound( menu.begin(), menu.end(), action[ a ] );
        if ( it == menu.end() || *it != action[ a ] )
            return std::nullopt;
        index = index * menu.size() + static_cast< std::size_t >( it - menu.begin() );
    }
    return index;
}

bool Model::is_legal( StateId s, std::span< const ActionId > action ) const
{
    return table_index( s, action ).has_value();
}

std::optional< StateId > Model::transition( StateId s, std::span< const ActionId > action ) const
{
    auto index = table_index( s, action );
    if ( !index )
        return std::nullopt;
    auto target = _table[ s.value ][ *index ];
    if ( target == no_state )
        return std::nullopt;
    return StateId{ target };
}

void Model::for_each_joint_action( StateId s, const std::function< void( std::span< const ActionId > ) >& fn ) const
{
    for_each_completion( s, Coalition{}, {}, fn );
}

void Model::for_each_completion( StateId s, Coalition fixed, std::span< const ActionId > partial,
                                 const std::function< void( std::span< const ActionId > ) >& fn ) const
{
    const auto k = _agents.size();
    std::vector< ActionId > current( k );
    std::vector< std::size_t > free_agents;
    for ( std::size_t a = 0; a < k; ++a )
    {
        if ( fixed.contains( AgentId{ static_cast< std::uint32_t >( a ) } ) )
        {
            current[ a ] = partial[ a ];
            continue;
        }
        const auto& menu = _menus[ a ][ s.value ];
        if ( menu.empty() )
            return;
        current[ a ] = menu[ 0 ];
        free_agents.push_back( a );
    }

    // Odometer over the free agents, last agent fastest.
    std::vector< std::size_t > pos( free_agents.size(), 0 );
    while ( true )
    {
        fn( current );
        std::size_t i = free_agents.size();
        while ( i > 0 )
        {
            --i;
            const auto a = free_agents[ i ];
            const auto& menu = _menus[ a ][ s.value ];
            if ( ++pos[ i ] < menu.size() )
            {
                current[ a ] = menu[ pos[ i ] ];
                break;
            }
            pos[ i ] = 0;
            current[ a ] = menu[ 0 ];
            if ( i == 0 )
                return;
        }
        if ( free_agents.empty() )
            return;
    }
}

bool operator==( const Model& a, const Model& b )
{
    if ( a._agents != b._agents || a._states != b._states || a._actions != b._actions || a._props != b._props ||
         a._valuation != b._valuation || a._menus != b._menus || a._blocks != b._blocks || a._table != b._table ||
         a._strays.size() != b._strays.size() )
        return false;
    for ( std::size_t i = 0; i < a._strays.size(); ++i )
    {
        const auto& x = a._strays[ i ];
        const auto& y = b._strays[ i ];
        if ( x.from != y.from || x.action != y.action || x.to != y.to )
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- builder

Model::Builder& Model::Builder::agents( std::vector< std::string > names )
{
    _agents = std::move( names );
    return *this;
}

Model::Builder& Model::Builder::states( std::vector< std::string > names )
{
    _states = std::move( names );
    return *this;
}

Model::Builder& Model::Builder::actions( std::vector< std::string > names )
{
    _actions = std::move( names );
    return *this;
}

Model::Builder& Model::Builder::propositions( std::vector< std::string > names )
{
    _props = std::move( names );
    return *this;
}

Model::Builder& Model::Builder::menu( AgentId a, StateId s, std::vector< ActionId > acts )
{
    _menu_keys.emplace_back( a, s );
    _menu_values.push_back( std::move( acts ) );
    return *this;
}

Model::Builder& Model::Builder::label( PropId p, StateId s )
{
    _labels.emplace_back( p, s );
    return *this;
}

Model::Builder& Model::Builder::transition( StateId from, JointAction action, StateId to )
{
    _transitions.push_back( { from, std::move( action ), to } );
    return *this;
}

Model::Builder& Model::Builder::indistinguishable( AgentId a, const std::vector< StateId >& group )
{
    _groups.emplace_back( a, group );
    return *this;
}

std::uint32_t Model::Builder::lookup( const std::vector< std::string >& table, std::string_view name,
                                      const char* what ) const
{
    auto it = std::find( table.begin(), table.end(), name );
    if ( it == table.end() )
        throw name_error( std::string( "unknown " ) + what + " '" + std::string( name ) + "'" );
    return static_cast< std::uint32_t >( it - table.begin() );
}

Model::Builder& Model::Builder::menu( std::string_view agent, std::string_view state,
                                      const std::vector< std::string >& acts )
{
    std::vector< ActionId > ids;
    for ( const auto& a : acts )
        ids.emplace_back( lookup( _actions, a, "action" ) );
    return menu( AgentId{ lookup( _agents, agent, "agent" ) }, StateId{ lookup( _states, state, "state" ) },
                 std::move( ids ) );
}

Model::Builder& Model::Builder::label( std::string_view prop, std::string_view state )
{
    return label( PropId{ lookup( _props, prop, "proposition" ) }, StateId{ lookup( _states, state, "state" ) } );
}

Model::Builder& Model::Builder::transition( std::string_view from, const std::vector< std::string >& action,
                                            std::string_view to )
{
    std::vector< ActionId > ids;
    for ( const auto& a : action )
        ids.emplace_back( lookup( _actions, a, "action" ) );
    return transition( StateId{ lookup( _states, from, "state" ) }, JointAction{ std::move( ids ) },
                       StateId{ lookup( _states, to, "state" ) } );
}

Model::Builder& Model::Builder::indistinguishable( std::string_view agent, const std::vector< std::string >& group )
{
    std::vector< StateId > ids;
    for ( const auto& s : group )
        ids.emplace_back( lookup( _states, s, "state" ) );
    return indistinguishable( AgentId{ lookup( _agents, agent, "agent" ) }, ids );
}

Model Model::Builder::build() const
{
    check_unique( _agents, "agent" );
    check_unique( _states, "state" );
    check_unique( _actions, "action" );
    check_unique( _props, "proposition" );
    if ( _agents.empty() )
        throw input_error( "model has no agents" );
    if ( _agents.size() > max_agents )
        throw input_error( "too many agents (limit " + std::to_string( max_agents ) + ")" );
    if ( _states.empty() )
        throw input_error( "model has no states" );

    const auto n_agents = _agents.size();
    const auto n_states = _states.size();
    auto check_agent = [ & ]( AgentId a ) {
        if ( a.value >= n_agents )
            throw input_error( "agent id " + std::to_string( a.value ) + " out of range" );
    };
    auto check_state = [ & ]( StateId s ) {
        if ( s.value >= n_states )
            throw input_error( "state id " + std::to_string( s.value ) + " out of range" );
    };

    Model m;
    m._agents = _agents;
    m._states = _states;
    m._actions = _actions;
    m._props = _props;

    m._valuation.assign( _props.size(), std::vector< char >( n_states, 0 ) );
    for ( auto [ p, s ] : _labels )
    {
        if ( p.value >= _props.size() )
            throw input_error( "proposition id " + std::to_string( p.value ) + " out of range" );
        check_state( s );
        m._valuation[ p.value ][ s.value ] = 1;
    }

    m._menus.assign( n_agents, std::vector< std::vector< ActionId > >( n_states ) );
    for ( std::size_t i = 0; i < _menu_keys.size(); ++i )
    {
        auto [ a, s ] = _menu_keys[ i ];
        check_agent( a );
        check_state( s );
        std::set< ActionId > acts;
        for ( auto act : _menu_values[ i ] )
        {
            if ( act.value >= _actions.size() )
                throw input_error( "action id " + std::to_string( act.value ) + " out of range" );
            acts.insert( act );
        }
        auto& menu = m._menus[ a.value ][ s.value ];
        acts.insert( menu.begin(), menu.end() );
        menu.assign( acts.begin(), acts.end() );
    }

    std::vector< union_find > partitions( n_agents, union_find( n_states ) );
    for ( const auto& [ a, group ] : _groups )
    {
        check_agent( a );
        for ( auto s : group )
            check_state( s );
        for ( std::size_t i = 1; i < group.size(); ++i )
            partitions[ a.value ].unite( group[ 0 ].value, group[ i ].value );
    }
    m._blocks.assign( n_agents, std::vector< std::uint32_t >( n_states ) );
    for ( std::size_t a = 0; a < n_agents; ++a )
    {
        std::vector< std::uint32_t > root_block( n_states, no_state );
        std::uint32_t next = 0;
        for ( std::uint32_t s = 0; s < n_states; ++s )
        {
            auto r = partitions[ a ].find( s );
            if ( root_block[ r ] == no_state )
                root_block[ r ] = next++;
            m._blocks[ a ][ s ] = root_block[ r ];
        }
    }

    m._table.resize( n_states );
    for ( std::size_t s = 0; s < n_states; ++s )
    {
        std::size_t size = 1;
        for ( std::size_t a = 0; a < n_agents; ++a )
            size *= m._menus[ a ][ s ].size();
        m._table[ s ].assign( size, no_state );
    }

    for ( const auto& t : _transitions )
    {
        check_state( t.from );
        check_state( t.to );
        if ( t.action.size() != n_agents )
            throw input_error( "joint action at state '" + _states[ t.from.value ] + "' has " +
                               std::to_string( t.action.size() ) + " components, expected " +
                               std::to_string( n_agents ) );
        for ( auto act : t.action )
            if ( act.value >= _actions.size() )
                throw input_error( "action id " + std::to_string( act.value ) + " out of range" );
        auto index = m.table_index( t.from, t.action.span() );
        if ( !index )
        {
            m._strays.push_back( { t.from, t.action, t.to } );
            continue;
        }
        auto& slot = m._table[ t.from.value ][ *index ];
        if ( slot != no_state && slot != t.to.value )
            throw input_error( "conflicting transitions at (" + _states[ t.from.value ] + ", " +
                               format_joint_action( m, t.action.span() ) + ")" );
        slot = t.to.value;
    }
    return m;
}

// ---------------------------------------------------------------- operations

ValidationResult validate_model( const Model& m )
{
    ValidationResult result;
    auto agent = []( std::size_t a ) { return AgentId{ static_cast< std::uint32_t >( a ) }; };
    auto state = []( std::size_t s ) { return StateId{ static_cast< std::uint32_t >( s ) }; };

    std::vector< char > menus_ok( m.state_count(), 1 );
    for ( std::size_t a = 0; a < m.agent_count(); ++a )
        for ( std::size_t s = 0; s < m.state_count(); ++s )
            if ( m.available( agent( a ), state( s ) ).empty() )
            {
                menus_ok[ s ] = 0;
                result.violations.push_back( { Violation::Kind::empty_menu,
                                               "empty action menu for agent " + m.agent_name( agent( a ) ) +
                                                   " at " + m.state_name( state( s ) ) } );
            }

    for ( std::size_t s = 0; s < m.state_count(); ++s )
        if ( menus_ok[ s ] )
            m.for_each_joint_action( state( s ), [ & ]( std::span< const ActionId > act ) {
                if ( !m.transition( state( s ), act ) )
                    result.violations.push_back( { Violation::Kind::transition_missing,
                                                   "transition not total at (" + m.state_name( state( s ) ) + ", " +
                                                       format_joint_action( m, act ) + ")" } );
            } );

    for ( const auto& stray : m.stray_transitions() )
        result.violations.push_back( { Violation::Kind::transition_outside_menu,
                                       "transition defined outside D(w) at (" + m.state_name( stray.from ) + ", " +
                                           format_joint_action( m, stray.action.span() ) + ")" } );

    for ( std::size_t a = 0; a < m.agent_count(); ++a )
        for ( std::size_t s = 0; s < m.state_count(); ++s )
            for ( std::size_t t = s + 1; t < m.state_count(); ++t )
                if ( m.related( agent( a ), state( s ), state( t ) ) &&
                     m.available( agent( a ), state( s ) ) != m.available( agent( a ), state( t ) ) )
                    result.violations.push_back(
                        { Violation::Kind::action_knowledge_coherence,
                          "action-knowledge coherence: agent " + m.agent_name( agent( a ) ) + " cannot distinguish " +
                              m.state_name( state( s ) ) + " and " + m.state_name( state( t ) ) +
                              " but has different actions available" } );
    return result;
}

std::vector< JointAction > joint_actions( const Model& m, StateId w )
{
    if ( w.value >= m.state_count() )
        throw input_error( "state id " + std::to_string( w.value ) + " out of range" );
    std::vector< JointAction > out;
    m.for_each_joint_action( w, [ & ]( std::span< const ActionId > act ) { out.emplace_back( act ); } );
    return out;
}

StateId successor( const Model& m, StateId w, const JointAction& action )
{
    if ( w.value >= m.state_count() )
        throw input_error( "state id " + std::to_string( w.value ) + " out of range" );
    if ( !m.is_legal( w, action.span() ) )
        throw illegal_action( "joint action " + ( action.size() == m.agent_count() ? format_joint_action( m, action.span() )
                                                                                   : std::string( "(arity mismatch)" ) ) +
                              " is not available at " + m.state_name( w ) );
    auto next = m.transition( w, action.span() );
    if ( !next )
        throw input_error( "no transition at (" + m.state_name( w ) + ", " + format_joint_action( m, action.span() ) +
                           ")" );
    return *next;
}

std::vector< std::string > props_at( const Model& m, StateId w )
{
    if ( w.value >= m.state_count() )
        throw input_error( "state id " + std::to_string( w.value ) + " out of range" );
    std::vector< std::string > out;
    for ( std::uint32_t p = 0; p < m.prop_count(); ++p )
        if ( m.holds( PropId{ p }, w ) )
            out.push_back( m.prop_name( PropId{ p } ) );
    return out;
}

std::string format_joint_action( const Model& m, std::span< const ActionId > action )
{
    std::string out = "(";
    for ( std::size_t i = 0; i < action.size(); ++i )
    {
        if ( i > 0 )
            out += ',';
        out += action[ i ].value < m.action_count() ? m.action_name( action[ i ] ) : "?";
    }
    out += ')';
    return out;
}

} // namespace dkatl
