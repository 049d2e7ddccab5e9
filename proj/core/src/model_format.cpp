#include "dkatl/model_format.hpp"

#include "dkatl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace dkatl
{

namespace
{

std::string join_violations( const std::vector< Violation >& vs )
{
    std::string out = "invalid model:";
    for ( const auto& v : vs )
        out += "\n  " + v.message;
    return out;
}

struct Name
{
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

// Cursor over one line of the document.
class line_reader
{
    std::string_view _text;
    std::size_t _line;
    std::size_t _pos;

public:
    line_reader( std::string_view text, std::size_t line, std::size_t pos = 0 )
        : _text{ text }, _line{ line }, _pos{ pos } {}

    void skip_ws()
    {
        while ( _pos < _text.size() && std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
            ++_pos;
    }

    [[nodiscard]] bool at_end()
    {
        skip_ws();
        return _pos >= _text.size();
    }

    [[noreturn]] void fail( const std::string& message ) const { throw parse_error( _line, _pos + 1, message ); }

    [[nodiscard]] bool peek( char c )
    {
        skip_ws();
        return _pos < _text.size() && _text[ _pos ] == c;
    }

    bool accept( std::string_view token )
    {
        skip_ws();
        if ( _text.substr( _pos, token.size() ) != token )
            return false;
        _pos += token.size();
        return true;
    }

    void expect( std::string_view token )
    {
        if ( !accept( token ) )
            fail( "expected '" + std::string( token ) + "'" );
    }

    Name name( const char* what )
    {
        skip_ws();
        auto start = _pos;
        while ( _pos < _text.size() &&
                ( std::isalnum( static_cast< unsigned char >( _text[ _pos ] ) ) || _text[ _pos ] == '_' ||
                  _text[ _pos ] == '\'' ) )
            ++_pos;
        if ( start == _pos )
            fail( std::string( "expected " ) + what );
        return { std::string( _text.substr( start, _pos - start ) ), _line, start + 1 };
    }

    // Comma-separated names up to the end of the line or a stop character.
    std::vector< Name > names( const char* what, char stop = '\0' )
    {
        std::vector< Name > out;
        if ( at_end() || ( stop != '\0' && peek( stop ) ) )
            return out;
        // A trailing comma is allowed when the list continues on the next line.
        do
            out.push_back( name( what ) );
        while ( accept( "," ) && !at_end() );
        return out;
    }

    void finish()
    {
        if ( !at_end() )
            fail( "unexpected text" );
    }
};

struct MenuItem
{
    Name agent;
    std::optional< std::vector< Name > > states; // nullopt for '*'
    std::vector< Name > actions;
};

struct TransitionItem
{
    Name from;
    std::optional< std::vector< std::optional< Name > > > action; // nullopt for '*'; nullopt entries are wildcards
    Name to;
    std::size_t line = 0;
};

struct Document
{
    std::optional< std::vector< Name > > agents, states, alphabet;
    std::vector< std::pair< Name, std::vector< Name > > > props;
    std::vector< MenuItem > menus;
    std::vector< TransitionItem > transitions;
    std::vector< std::pair< Name, std::vector< std::vector< Name > > > > groups;
};

const std::set< std::string, std::less<> > section_names{ "agents", "states", "alphabet", "props",
                                                          "actions", "transitions", "indist" };

Document read_document( std::string_view text )
{
    Document doc;
    std::set< std::string, std::less<> > seen;
    std::string section;
    std::size_t line_no = 0;

    std::size_t start = 0;
    while ( start <= text.size() )
    {
        ++line_no;
        auto eol = text.find( '\n', start );
        if ( eol == std::string_view::npos )
            eol = text.size();
        auto raw = text.substr( start, eol - start );
        start = eol + 1;
        if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
            raw = raw.substr( 0, hash );
        if ( !raw.empty() && raw.back() == '\r' )
            raw.remove_suffix( 1 );

        line_reader in{ raw, line_no };
        if ( in.at_end() )
            continue;

        if ( !std::isspace( static_cast< unsigned char >( raw.front() ) ) )
        {
            auto header = in.name( "section name" );
            if ( !section_names.contains( header.text ) )
                throw parse_error( line_no, 1, "unknown section '" + header.text + "'" );
            if ( !seen.insert( header.text ).second )
                throw parse_error( line_no, 1, "section '" + header.text + "' given twice" );
            in.expect( ":" );
            section = header.text;
            if ( section == "agents" || section == "states" || section == "alphabet" )
            {
                auto list = in.names( "name" );
                auto& target = section == "agents" ? doc.agents : section == "states" ? doc.states : doc.alphabet;
                target = std::move( list );
            }
            in.finish();
            continue;
        }

        if ( section.empty() )
            in.fail( "item outside any section" );

        if ( section == "agents" || section == "states" || section == "alphabet" )
        {
            auto& target = section == "agents" ? doc.agents : section == "states" ? doc.states : doc.alphabet;
            auto more = in.names( "name" );
            target->insert( target->end(), more.begin(), more.end() );
        }
        else if ( section == "props" )
        {
            auto p = in.name( "proposition name" );
            in.expect( ":" );
            doc.props.emplace_back( p, in.names( "state name" ) );
        }
        else if ( section == "actions" )
        {
            MenuItem item;
            item.agent = in.name( "agent name" );
            in.expect( "@" );
            if ( !in.accept( "*" ) )
                item.states = in.names( "state name", ':' );
            if ( item.states && item.states->empty() )
                in.fail( "expected state name or '*'" );
            in.expect( ":" );
            item.actions = in.names( "action name" );
            if ( item.actions.empty() )
                in.fail( "expected action name" );
            doc.menus.push_back( std::move( item ) );
        }
        else if ( section == "transitions" )
        {
            TransitionItem item;
            item.line = line_no;
            item.from = in.name( "state name" );
            if ( !in.accept( "*" ) )
            {
                in.expect( "(" );
                std::vector< std::optional< Name > > act;
                do
                {
                    if ( in.accept( "*" ) )
                        act.emplace_back();
                    else
                        act.emplace_back( in.name( "action name or '*'" ) );
                } while ( in.accept( "," ) );
                in.expect( ")" );
                item.action = std::move( act );
            }
            in.expect( "->" );
            item.to = in.name( "state name" );
            doc.transitions.push_back( std::move( item ) );
        }
        else
        {
            auto agent = in.name( "agent name" );
            in.expect( ":" );
            std::vector< std::vector< Name > > groups;
            do
            {
                in.expect( "{" );
                groups.push_back( in.names( "state name", '}' ) );
                in.expect( "}" );
            } while ( in.accept( "," ) );
            doc.groups.emplace_back( agent, std::move( groups ) );
        }
        in.finish();
    }

    if ( !doc.agents || doc.agents->empty() )
        throw parse_error( line_no, 1, "missing 'agents:' section" );
    if ( !doc.states || doc.states->empty() )
        throw parse_error( line_no, 1, "missing 'states:' section" );
    return doc;
}

// Interns names in order, rejecting duplicates.
class name_table
{
    std::vector< std::string > _names;
    std::map< std::string, std::uint32_t, std::less<> > _index;
    const char* _what;

public:
    explicit name_table( const char* what ) : _what{ what } {}

    void add( const Name& n )
    {
        if ( !_index.emplace( n.text, static_cast< std::uint32_t >( _names.size() ) ).second )
            throw parse_error( n.line, n.column, std::string( "duplicate " ) + _what + " '" + n.text + "'" );
        _names.push_back( n.text );
    }

    bool add_if_new( const Name& n )
    {
        if ( _index.contains( n.text ) )
            return false;
        add( n );
        return true;
    }

    [[nodiscard]] std::uint32_t at( const Name& n ) const
    {
        auto it = _index.find( n.text );
        if ( it == _index.end() )
            throw parse_error( n.line, n.column, std::string( "unknown " ) + _what + " '" + n.text + "'" );
        return it->second;
    }

    [[nodiscard]] const std::vector< std::string >& names() const { return _names; }
};

Model assemble( const Document& doc )
{
    name_table agents{ "agent" }, states{ "state" }, actions{ "action" }, props{ "proposition" };
    for ( const auto& n : *doc.agents )
        agents.add( n );
    for ( const auto& n : *doc.states )
        states.add( n );
    if ( doc.alphabet )
        for ( const auto& n : *doc.alphabet )
            actions.add( n );
    else
    {
        for ( const auto& item : doc.menus )
            for ( const auto& a : item.actions )
                actions.add_if_new( a );
        for ( const auto& t : doc.transitions )
            if ( t.action )
                for ( const auto& a : *t.action )
                    if ( a )
                        actions.add_if_new( *a );
    }
    for ( const auto& [ p, where ] : doc.props )
        props.add( p );

    const auto n_agents = agents.names().size();
    const auto n_states = states.names().size();

    Model::Builder b;
    b.agents( agents.names() ).states( states.names() ).actions( actions.names() ).propositions( props.names() );

    for ( const auto& [ p, where ] : doc.props )
        for ( const auto& s : where )
            b.label( PropId{ props.at( p ) }, StateId{ states.at( s ) } );

    // Menus: '*' entries give an agent's default, per-state entries override it.
    std::vector< std::vector< std::optional< std::vector< ActionId > > > > menus(
        n_agents, std::vector< std::optional< std::vector< ActionId > > >( n_states ) );
    std::vector< std::optional< std::vector< ActionId > > > defaults( n_agents );
    for ( const auto& item : doc.menus )
    {
        auto a = agents.at( item.agent );
        std::vector< ActionId > acts;
        for ( const auto& n : item.actions )
            acts.emplace_back( actions.at( n ) );
        std::sort( acts.begin(), acts.end() );
        acts.erase( std::unique( acts.begin(), acts.end() ), acts.end() );
        if ( !item.states )
        {
            if ( defaults[ a ] )
                throw parse_error( item.agent.line, item.agent.column,
                                   "default menu for agent '" + item.agent.text + "' given twice" );
            defaults[ a ] = acts;
            continue;
        }
        for ( const auto& s : *item.states )
        {
            auto& slot = menus[ a ][ states.at( s ) ];
            if ( slot )
                throw parse_error( s.line, s.column,
                                   "menu for agent '" + item.agent.text + "' at '" + s.text + "' given twice" );
            slot = acts;
        }
    }
    for ( std::uint32_t a = 0; a < n_agents; ++a )
        for ( std::uint32_t s = 0; s < n_states; ++s )
        {
            auto& slot = menus[ a ][ s ];
            if ( !slot )
                slot = defaults[ a ];
            if ( slot )
                b.menu( AgentId{ a }, StateId{ s }, *slot );
        }

    // Transitions: explicit entries win over wildcard expansions; entries of
    // the same kind must agree.
    struct Target
    {
        std::uint32_t to;
        bool exact;
    };
    std::map< std::pair< std::uint32_t, std::vector< ActionId > >, Target > table;
    for ( const auto& t : doc.transitions )
    {
        auto from = states.at( t.from );
        auto to = states.at( t.to );
        if ( t.action && t.action->size() != n_agents )
            throw parse_error( t.from.line, t.from.column,
                               "joint action has " + std::to_string( t.action->size() ) + " components, expected " +
                                   std::to_string( n_agents ) );

        std::vector< std::vector< ActionId > > options( n_agents );
        bool exact = true;
        for ( std::uint32_t a = 0; a < n_agents; ++a )
        {
            if ( t.action && ( *t.action )[ a ] )
            {
                options[ a ] = { ActionId{ actions.at( *( *t.action )[ a ] ) } };
                continue;
            }
            exact = false;
            if ( menus[ a ][ from ] )
                options[ a ] = *menus[ a ][ from ];
        }

        std::vector< std::size_t > digit( n_agents, 0 );
        bool empty = std::any_of( options.begin(), options.end(), []( const auto& o ) { return o.empty(); } );
        while ( !empty )
        {
            std::vector< ActionId > act( n_agents );
            for ( std::size_t a = 0; a < n_agents; ++a )
                act[ a ] = options[ a ][ digit[ a ] ];
            auto [ it, fresh ] = table.try_emplace( { from, act }, Target{ to, exact } );
            if ( !fresh )
            {
                if ( exact && !it->second.exact )
                    it->second = Target{ to, true };
                else if ( exact == it->second.exact && it->second.to != to )
                    throw parse_error( t.line, t.from.column,
                                       "conflicting transitions for state '" + t.from.text + "'" );
            }
            std::size_t k = n_agents;
            while ( k > 0 && ++digit[ k - 1 ] == options[ k - 1 ].size() )
                digit[ --k ] = 0;
            if ( k == 0 )
                break;
        }
    }
    for ( const auto& [ key, target ] : table )
        b.transition( StateId{ key.first }, JointAction{ key.second }, StateId{ target.to } );

    for ( const auto& [ agent, groups ] : doc.groups )
    {
        auto a = agents.at( agent );
        for ( const auto& g : groups )
        {
            std::vector< StateId > ids;
            for ( const auto& s : g )
                ids.emplace_back( states.at( s ) );
            b.indistinguishable( AgentId{ a }, ids );
        }
    }
    return b.build();
}

std::string join( const std::vector< std::string >& xs )
{
    std::string out;
    for ( std::size_t i = 0; i < xs.size(); ++i )
        out += ( i ? ", " : "" ) + xs[ i ];
    return out;
}

} // namespace

invalid_model::invalid_model( std::vector< Violation > violations )
    : input_error{ join_violations( violations ) }, _violations{ std::move( violations ) }
{
}

Model parse_model( std::string_view text )
{
    return assemble( read_document( text ) );
}

Model load_model( std::string_view text )
{
    auto m = parse_model( text );
    auto result = validate_model( m );
    if ( !result.ok() )
        throw invalid_model( std::move( result.violations ) );
    return m;
}

std::string save_model( const Model& m )
{
    std::string out;
    out += "agents: " + join( m.agent_names() ) + "\n";
    out += "states: " + join( m.state_names() ) + "\n";
    out += "alphabet: " + join( m.action_names() ) + "\n";

    out += "\nprops:\n";
    for ( std::uint32_t p = 0; p < m.prop_count(); ++p )
    {
        std::vector< std::string > where;
        for ( std::uint32_t s = 0; s < m.state_count(); ++s )
            if ( m.holds( PropId{ p }, StateId{ s } ) )
                where.push_back( m.state_name( StateId{ s } ) );
        out += "  " + m.prop_name( PropId{ p } ) + ":" + ( where.empty() ? "" : " " + join( where ) ) + "\n";
    }

    out += "\nactions:\n";
    for ( std::uint32_t a = 0; a < m.agent_count(); ++a )
        for ( std::uint32_t s = 0; s < m.state_count(); ++s )
        {
            const auto& menu = m.available( AgentId{ a }, StateId{ s } );
            if ( menu.empty() )
                continue;
            std::vector< std::string > names;
            for ( auto act : menu )
                names.push_back( m.action_name( act ) );
            out += "  " + m.agent_name( AgentId{ a } ) + " @ " + m.state_name( StateId{ s } ) + ": " + join( names ) +
                   "\n";
        }

    out += "\ntransitions:\n";
    for ( std::uint32_t s = 0; s < m.state_count(); ++s )
        m.for_each_joint_action( StateId{ s }, [ & ]( std::span< const ActionId > act ) {
            if ( auto v = m.transition( StateId{ s }, act ) )
                out += "  " + m.state_name( StateId{ s } ) + " " + format_joint_action( m, act ) + " -> " +
                       m.state_name( *v ) + "\n";
        } );
    for ( const auto& stray : m.stray_transitions() )
        out += "  " + m.state_name( stray.from ) + " " + format_joint_action( m, stray.action.span() ) + " -> " +
               m.state_name( stray.to ) + "\n";

    out += "\nindist:\n";
    for ( std::uint32_t a = 0; a < m.agent_count(); ++a )
    {
        std::map< std::uint32_t, std::vector< std::string > > blocks;
        for ( std::uint32_t s = 0; s < m.state_count(); ++s )
            blocks[ m.block( AgentId{ a }, StateId{ s } ) ].push_back( m.state_name( StateId{ s } ) );
        std::string line;
        for ( const auto& [ id, members ] : blocks )
            if ( members.size() > 1 )
                line += std::string( line.empty() ? "" : ", " ) + "{" + join( members ) + "}";
        if ( !line.empty() )
            out += "  " + m.agent_name( AgentId{ a } ) + ": " + line + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- built-ins

namespace
{

struct EmbeddedModel
{
    const char* name;
    const char* text;
};

const EmbeddedModel embedded[] = {
#include "builtin_models.inc"
};

std::vector< BuiltinCheck > checks_for( std::string_view name )
{
    if ( name == "M1" )
        return {
            { "q0 -(L,n,n)-> q1", "<<g1>> X win", 1, false },
            { "q0 -(L,n,n)-> q1", "<<g2>> X win", 1, false },
            { "q0 -(L,n,n)-> q1", "<<g1,g2>> X win", 1, true },
            { "q0", "<<g1,g2>> F win", 2, true },
        };
    if ( name == "M2" )
        return {
            { "q0 -(L,n,n)-> q1", "<<g1>> X win", 1, true },
            { "q0 -(L,n,n)-> q1", "<<g1,g2>> X win", 1, true },
        };
    if ( name == "M3" )
        return {
            { "q0 -(n,l)-> q1", "<<1>> p U q", 2, true },
            { "q0 -(n,l)-> q1", "<<1>> (K{1} p) U (K{1} q)", 2, false },
        };
    if ( name == "M4" )
        return {
            { "q0 -(n,l)-> q1", "p", 3, true },
            { "q0 -(n,l)-> q1", "<<1>> X <<1>> G p", 3, true },
            { "q0 -(n,l)-> q1", "p & <<1>> X <<1>> G p", 3, true },
            { "q0 -(n,l)-> q1", "<<1>> G p", 3, false },
            { "q0 -(n,l)-> q1", "p & <<1>> X <<1>> G p -> <<1>> G p", 3, false },
        };
    return {};
}

} // namespace

std::vector< std::string > builtin_names()
{
    std::vector< std::string > out;
    for ( const auto& e : embedded )
        out.emplace_back( e.name );
    return out;
}

BuiltinSuite builtin( std::string_view name )
{
    for ( const auto& e : embedded )
        if ( name == e.name )
            return { e.name, e.text, load_model( e.text ), checks_for( name ) };
    throw input_error( "unknown built-in model '" + std::string( name ) + "' (expected one of M1, M2, M3, M4)" );
}

} // namespace dkatl
