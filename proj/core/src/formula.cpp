#include "dkatl/formula.hpp"

#include "dkatl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

namespace dkatl
{

namespace
{

std::vector< std::string > canonical( std::vector< std::string > g )
{
    if ( g.empty() )
        throw input_error( "empty coalition" );
    std::sort( g.begin(), g.end() );
    g.erase( std::unique( g.begin(), g.end() ), g.end() );
    return g;
}

} // namespace

Formula Formula::top() { return Formula{ std::make_shared< const Node >( Node{ Op::top, {}, {}, {}, {} } ) }; }
Formula Formula::bot() { return Formula{ std::make_shared< const Node >( Node{ Op::bot, {}, {}, {}, {} } ) }; }

Formula Formula::prop( std::string name )
{
    return Formula{ std::make_shared< const Node >( Node{ Op::prop, std::move( name ), {}, {}, {} } ) };
}

Formula Formula::negation( Formula f )
{
    return Formula{ std::make_shared< const Node >( Node{ Op::negation, {}, {}, std::move( f._node ), {} } ) };
}

Formula Formula::conjunction( Formula l, Formula r )
{
    return Formula{
        std::make_shared< const Node >( Node{ Op::conjunction, {}, {}, std::move( l._node ), std::move( r._node ) } ) };
}

Formula Formula::next( std::vector< std::string > coalition, Formula f )
{
    return Formula{
        std::make_shared< const Node >( Node{ Op::next, {}, canonical( std::move( coalition ) ), std::move( f._node ), {} } ) };
}

Formula Formula::always( std::vector< std::string > coalition, Formula f )
{
    return Formula{ std::make_shared< const Node >(
        Node{ Op::always, {}, canonical( std::move( coalition ) ), std::move( f._node ), {} } ) };
}

Formula Formula::until( std::vector< std::string > coalition, Formula l, Formula r )
{
    return Formula{ std::make_shared< const Node >(
        Node{ Op::until, {}, canonical( std::move( coalition ) ), std::move( l._node ), std::move( r._node ) } ) };
}

bool Formula::propositional() const
{
    switch ( op() )
    {
    case Op::top:
    case Op::bot:
    case Op::prop:
        return true;
    case Op::negation:
        return lhs().propositional();
    case Op::conjunction:
        return lhs().propositional() && rhs().propositional();
    default:
        return false;
    }
}

bool operator==( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return true;
    if ( a.op() != b.op() || a.name() != b.name() || a.coalition() != b.coalition() )
        return false;
    if ( static_cast< bool >( a._node->lhs ) != static_cast< bool >( b._node->lhs ) ||
         static_cast< bool >( a._node->rhs ) != static_cast< bool >( b._node->rhs ) )
        return false;
    if ( a._node->lhs && !( a.lhs() == b.lhs() ) )
        return false;
    if ( a._node->rhs && !( a.rhs() == b.rhs() ) )
        return false;
    return true;
}

namespace ast
{

Formula top() { return Formula::top(); }
Formula bot() { return Formula::bot(); }
Formula prop( std::string name ) { return Formula::prop( std::move( name ) ); }
Formula neg( Formula f ) { return Formula::negation( std::move( f ) ); }
Formula conj( Formula l, Formula r ) { return Formula::conjunction( std::move( l ), std::move( r ) ); }
Formula disj( Formula l, Formula r ) { return neg( conj( neg( std::move( l ) ), neg( std::move( r ) ) ) ); }
Formula implies( Formula l, Formula r ) { return neg( conj( std::move( l ), neg( std::move( r ) ) ) ); }
Formula iff( Formula l, Formula r ) { return conj( implies( l, r ), implies( r, l ) ); }
Formula next( Agents g, Formula f ) { return Formula::next( std::move( g ), std::move( f ) ); }
Formula always( Agents g, Formula f ) { return Formula::always( std::move( g ), std::move( f ) ); }
Formula eventually( Agents g, Formula f ) { return Formula::until( std::move( g ), top(), std::move( f ) ); }
Formula until( Agents g, Formula l, Formula r ) { return Formula::until( std::move( g ), std::move( l ), std::move( r ) ); }
Formula know( std::string agent, Formula f ) { return Formula::until( { std::move( agent ) }, f, f ); }
Formula dist( Agents g, Formula f ) { return Formula::until( std::move( g ), f, f ); }
Formula know_dual( std::string agent, Formula f ) { return neg( know( std::move( agent ), neg( std::move( f ) ) ) ); }
Formula dist_dual( Agents g, Formula f ) { return neg( dist( std::move( g ), neg( std::move( f ) ) ) ); }

} // namespace ast

// ---------------------------------------------------------------- sugar

Formula desugar( const SugarForm& s )
{
    auto child = [ & ]( std::size_t i ) { return desugar( s.children.at( i ) ); };
    switch ( s.op )
    {
    case SugarOp::top: return ast::top();
    case SugarOp::bot: return ast::bot();
    case SugarOp::prop: return ast::prop( s.name );
    case SugarOp::negation: return ast::neg( child( 0 ) );
    case SugarOp::conjunction: return ast::conj( child( 0 ), child( 1 ) );
    case SugarOp::disjunction: return ast::disj( child( 0 ), child( 1 ) );
    case SugarOp::implication: return ast::implies( child( 0 ), child( 1 ) );
    case SugarOp::equivalence: return ast::iff( child( 0 ), child( 1 ) );
    case SugarOp::next: return ast::next( s.coalition, child( 0 ) );
    case SugarOp::always: return ast::always( s.coalition, child( 0 ) );
    case SugarOp::eventually: return ast::eventually( s.coalition, child( 0 ) );
    case SugarOp::until: return ast::until( s.coalition, child( 0 ), child( 1 ) );
    case SugarOp::know: return ast::know( s.coalition.at( 0 ), child( 0 ) );
    case SugarOp::dist_know: return ast::dist( s.coalition, child( 0 ) );
    case SugarOp::know_dual: return ast::know_dual( s.coalition.at( 0 ), child( 0 ) );
    case SugarOp::dist_know_dual: return ast::dist_dual( s.coalition, child( 0 ) );
    }
    throw input_error( "unknown surface operator" );
}

SugarForm lift( const Formula& f )
{
    SugarForm s;
    s.name = f.name();
    s.coalition = f.coalition();
    switch ( f.op() )
    {
    case Op::top: s.op = SugarOp::top; break;
    case Op::bot: s.op = SugarOp::bot; break;
    case Op::prop: s.op = SugarOp::prop; break;
    case Op::negation:
        s.op = SugarOp::negation;
        s.children.push_back( lift( f.lhs() ) );
        break;
    case Op::conjunction:
        s.op = SugarOp::conjunction;
        s.children = { lift( f.lhs() ), lift( f.rhs() ) };
        break;
    case Op::next:
        s.op = SugarOp::next;
        s.children.push_back( lift( f.lhs() ) );
        break;
    case Op::always:
        s.op = SugarOp::always;
        s.children.push_back( lift( f.lhs() ) );
        break;
    case Op::until:
        s.op = SugarOp::until;
        s.children = { lift( f.lhs() ), lift( f.rhs() ) };
        break;
    }
    return s;
}

// ---------------------------------------------------------------- parser

namespace
{

enum class Tok
{
    name,
    lcoal,
    rcoal,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    tilde,
    amp,
    bar,
    arrow,
    iff,
    end,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t column;
};

bool name_char( char c )
{
    return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '\'';
}

std::vector< Token > lex( std::string_view text )
{
    std::vector< Token > out;
    std::size_t i = 0;
    while ( true )
    {
        while ( i < text.size() && std::isspace( static_cast< unsigned char >( text[ i ] ) ) )
            ++i;
        if ( i >= text.size() )
            break;
        const auto col = i + 1;
        auto rest = text.substr( i );
        auto emit = [ & ]( Tok k, std::size_t len ) {
            out.push_back( { k, std::string( rest.substr( 0, len ) ), col } );
            i += len;
        };
        if ( rest.starts_with( "<->" ) )
            emit( Tok::iff, 3 );
        else if ( rest.starts_with( "<<" ) )
            emit( Tok::lcoal, 2 );
        else if ( rest.starts_with( ">>" ) )
            emit( Tok::rcoal, 2 );
        else if ( rest.starts_with( "->" ) )
            emit( Tok::arrow, 2 );
        else if ( rest[ 0 ] == '(' )
            emit( Tok::lparen, 1 );
        else if ( rest[ 0 ] == ')' )
            emit( Tok::rparen, 1 );
        else if ( rest[ 0 ] == '{' )
            emit( Tok::lbrace, 1 );
        else if ( rest[ 0 ] == '}' )
            emit( Tok::rbrace, 1 );
        else if ( rest[ 0 ] == ',' )
            emit( Tok::comma, 1 );
        else if ( rest[ 0 ] == '~' || rest[ 0 ] == '!' )
            emit( Tok::tilde, 1 );
        else if ( rest[ 0 ] == '&' )
            emit( Tok::amp, 1 );
        else if ( rest[ 0 ] == '|' )
            emit( Tok::bar, 1 );
        else if ( name_char( rest[ 0 ] ) )
        {
            std::size_t len = 0;
            while ( len < rest.size() && name_char( rest[ len ] ) )
                ++len;
            emit( Tok::name, len );
        }
        else
            throw parse_error( 1, col, std::string( "unexpected character '" ) + rest[ 0 ] + "'" );
    }
    out.push_back( { Tok::end, "", text.size() + 1 } );
    return out;
}

bool reserved( const std::string& word )
{
    static const char* const words[] = { "X", "G", "F", "U", "K", "D", "Khat", "Dhat", "true", "false" };
    return std::any_of( std::begin( words ), std::end( words ), [ & ]( const char* w ) { return word == w; } );
}

class parser
{
    std::vector< Token > _toks;
    std::size_t _at = 0;

    [[nodiscard]] const Token& peek() const { return _toks[ _at ]; }
    const Token& take() { return _toks[ _at++ ]; }

    [[noreturn]] void fail( const Token& t, const std::string& message ) const
    {
        throw parse_error( 1, t.column, message );
    }

    const Token& expect( Tok kind, const char* what )
    {
        if ( peek().kind != kind )
            fail( peek(), std::string( "expected " ) + what +
                              ( peek().kind == Tok::end ? " at end of input" : ", found '" + peek().text + "'" ) );
        return take();
    }

    [[nodiscard]] bool is_keyword( const char* word ) const
    {
        return peek().kind == Tok::name && peek().text == word;
    }

    static SugarForm node( SugarOp op, std::vector< SugarForm > children = {}, std::vector< std::string > g = {} )
    {
        SugarForm s;
        s.op = op;
        s.children = std::move( children );
        s.coalition = std::move( g );
        return s;
    }

    // Agent names up to the closing token; at least one required.
    std::vector< std::string > agents( Tok close, const char* closing )
    {
        std::vector< std::string > g;
        if ( peek().kind == close )
            fail( peek(), "empty coalition" );
        while ( true )
        {
            g.push_back( expect( Tok::name, "agent name" ).text );
            if ( peek().kind == Tok::comma )
            {
                take();
                continue;
            }
            expect( close, closing );
            return g;
        }
    }

public:
    explicit parser( std::string_view text ) : _toks{ lex( text ) } {}

    SugarForm whole()
    {
        auto f = equivalence();
        if ( peek().kind != Tok::end )
            fail( peek(), "unexpected '" + peek().text + "'" );
        return f;
    }

    SugarForm equivalence()
    {
        auto l = implication();
        if ( peek().kind == Tok::iff )
        {
            take();
            auto r = implication();
            return node( SugarOp::equivalence, { std::move( l ), std::move( r ) } );
        }
        return l;
    }

    SugarForm implication()
    {
        auto l = disjunction();
        if ( peek().kind == Tok::arrow )
        {
            take();
            auto r = implication();
            return node( SugarOp::implication, { std::move( l ), std::move( r ) } );
        }
        return l;
    }

    SugarForm disjunction()
    {
        auto l = conjunction();
        while ( peek().kind == Tok::bar )
        {
            take();
            auto r = conjunction();
            l = node( SugarOp::disjunction, { std::move( l ), std::move( r ) } );
        }
        return l;
    }

    SugarForm conjunction()
    {
        auto l = unary();
        while ( peek().kind == Tok::amp )
        {
            take();
            auto r = unary();
            l = node( SugarOp::conjunction, { std::move( l ), std::move( r ) } );
        }
        return l;
    }

    SugarForm unary()
    {
        const auto& t = peek();
        switch ( t.kind )
        {
        case Tok::tilde:
            take();
            return node( SugarOp::negation, { unary() } );
        case Tok::lparen:
        {
            take();
            auto f = equivalence();
            expect( Tok::rparen, "')'" );
            return f;
        }
        case Tok::lcoal:
        {
            take();
            auto g = agents( Tok::rcoal, "'>>'" );
            return coalition_body( std::move( g ) );
        }
        case Tok::name:
            break;
        default:
            fail( t, t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'" );
        }

        auto word = take().text;
        if ( word == "true" )
            return node( SugarOp::top );
        if ( word == "false" )
            return node( SugarOp::bot );
        if ( word == "K" || word == "Khat" )
        {
            expect( Tok::lbrace, "'{'" );
            const auto& who = expect( Tok::name, "agent name" );
            expect( Tok::rbrace, "'}'" );
            return node( word == "K" ? SugarOp::know : SugarOp::know_dual, { unary() }, { who.text } );
        }
        if ( word == "D" || word == "Dhat" )
        {
            expect( Tok::lbrace, "'{'" );
            auto g = agents( Tok::rbrace, "'}'" );
            return node( word == "D" ? SugarOp::dist_know : SugarOp::dist_know_dual, { unary() }, std::move( g ) );
        }
        if ( reserved( word ) )
            fail( t, "reserved word '" + word + "' cannot be used here" );
        auto p = node( SugarOp::prop );
        p.name = word;
        return p;
    }

    SugarForm coalition_body( std::vector< std::string > g )
    {
        if ( is_keyword( "X" ) || is_keyword( "G" ) || is_keyword( "F" ) )
        {
            auto word = take().text;
            auto op = word == "X" ? SugarOp::next : word == "G" ? SugarOp::always : SugarOp::eventually;
            return node( op, { unary() }, std::move( g ) );
        }
        auto l = unary();
        if ( !is_keyword( "U" ) )
            fail( peek(), "expected 'X', 'G', 'F' or an until formula after coalition" );
        take();
        auto r = unary();
        return node( SugarOp::until, { std::move( l ), std::move( r ) }, std::move( g ) );
    }
};

bool unary_level( const Formula& f )
{
    return f.op() != Op::conjunction;
}

std::string coalition_text( const std::vector< std::string >& g )
{
    std::string out = "<<";
    for ( std::size_t i = 0; i < g.size(); ++i )
    {
        if ( i > 0 )
            out += ',';
        out += g[ i ];
    }
    return out + ">>";
}

std::string operand( const Formula& f )
{
    return unary_level( f ) ? print( f ) : "(" + print( f ) + ")";
}

// Operands of U are parenthesized when they are themselves until formulas.
std::string until_operand( const Formula& f )
{
    return unary_level( f ) && f.op() != Op::until ? print( f ) : "(" + print( f ) + ")";
}

} // namespace

SugarForm parse_sugar( std::string_view text )
{
    try
    {
        return parser{ text }.whole();
    }
    catch ( const parse_error& )
    {
        throw;
    }
    catch ( const input_error& e )
    {
        throw parse_error( 1, 1, e.what() );
    }
}

Formula parse( std::string_view text )
{
    return desugar( parse_sugar( text ) );
}

std::string print( const Formula& f )
{
    switch ( f.op() )
    {
    case Op::top: return "true";
    case Op::bot: return "false";
    case Op::prop: return f.name();
    case Op::negation: return "~" + operand( f.lhs() );
    case Op::conjunction: return operand( f.lhs() ) + " & " + operand( f.rhs() );
    case Op::next: return coalition_text( f.coalition() ) + " X " + operand( f.lhs() );
    case Op::always: return coalition_text( f.coalition() ) + " G " + operand( f.lhs() );
    case Op::until:
        return coalition_text( f.coalition() ) + " " + until_operand( f.lhs() ) + " U " + until_operand( f.rhs() );
    }
    return {};
}

// ---------------------------------------------------------------- resolve

namespace
{

class resolver
{
    const Model& _model;
    std::shared_ptr< std::deque< ResolvedNode > > _arena = std::make_shared< std::deque< ResolvedNode > >();
    std::map< std::tuple< Op, std::uint32_t, std::uint64_t, const ResolvedNode*, const ResolvedNode* >,
              const ResolvedNode* >
        _interned;

    const ResolvedNode* intern( ResolvedNode n )
    {
        auto key = std::make_tuple( n.op, n.prop.value, n.coalition.bits(), n.lhs, n.rhs );
        auto it = _interned.find( key );
        if ( it != _interned.end() )
            return it->second;
        n.id = static_cast< std::uint32_t >( _arena->size() );
        _arena->push_back( n );
        const ResolvedNode* ptr = &_arena->back();
        _interned.emplace( key, ptr );
        return ptr;
    }

    Coalition coalition( const std::vector< std::string >& names )
    {
        Coalition g;
        for ( const auto& n : names )
        {
            auto a = _model.find_agent( n );
            if ( !a )
                throw name_error( "unknown agent " + n );
            g.insert( *a );
        }
        return g;
    }

public:
    explicit resolver( const Model& m ) : _model{ m } {}

    const ResolvedNode* visit( const Formula& f )
    {
        ResolvedNode n{};
        n.op = f.op();
        switch ( f.op() )
        {
        case Op::top:
        case Op::bot:
            break;
        case Op::prop:
        {
            auto p = _model.find_prop( f.name() );
            if ( !p )
                throw name_error( "unknown proposition " + f.name() );
            n.prop = *p;
            break;
        }
        case Op::negation:
            n.lhs = visit( f.lhs() );
            n.temporal_depth = n.lhs->temporal_depth;
            n.propositional = n.lhs->propositional;
            break;
        case Op::conjunction:
            n.lhs = visit( f.lhs() );
            n.rhs = visit( f.rhs() );
            n.temporal_depth = std::max( n.lhs->temporal_depth, n.rhs->temporal_depth );
            n.propositional = n.lhs->propositional && n.rhs->propositional;
            break;
        case Op::next:
        case Op::always:
            n.coalition = coalition( f.coalition() );
            n.lhs = visit( f.lhs() );
            n.temporal_depth = 1 + n.lhs->temporal_depth;
            n.propositional = false;
            break;
        case Op::until:
            n.coalition = coalition( f.coalition() );
            n.lhs = visit( f.lhs() );
            n.rhs = visit( f.rhs() );
            n.temporal_depth = 1 + std::max( n.lhs->temporal_depth, n.rhs->temporal_depth );
            n.propositional = false;
            break;
        }
        return intern( n );
    }

    ResolvedFormula finish( const ResolvedNode* root ) { return ResolvedFormula{ _arena, root }; }
};

} // namespace

ResolvedFormula resolve( const Formula& f, const Model& m )
{
    resolver r{ m };
    auto root = r.visit( f );
    return r.finish( root );
}

} // namespace dkatl
