#include "dkatl/harness.hpp"

#include "dkatl/errors.hpp"
#include "dkatl/model_format.hpp"
#include "dkatl/semantics.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace dkatl
{

namespace
{

std::size_t pick( std::mt19937_64& rng, std::size_t n )
{
    return static_cast< std::size_t >( rng() % n );
}

bool chance( std::mt19937_64& rng, double p )
{
    return static_cast< double >( rng() >> 11 ) * 0x1.0p-53 < p;
}

// Stable across platforms and runs, unlike std::hash on strings.
std::uint64_t fnv1a( std::string_view s )
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for ( unsigned char c : s )
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t mix( std::uint64_t a, std::uint64_t b )
{
    return hash_combine( a, b );
}

std::vector< std::string > names_of( const Model& m, Coalition c )
{
    std::vector< std::string > out;
    for ( auto a : c.members() )
        out.push_back( m.agent_name( a ) );
    return out;
}

std::string braces( const std::vector< std::string >& xs )
{
    std::string out = "{";
    for ( std::size_t i = 0; i < xs.size(); ++i )
        out += ( i ? "," : "" ) + xs[ i ];
    return out + "}";
}

using Clock = std::chrono::steady_clock;

double seconds_since( Clock::time_point start )
{
    return std::chrono::duration< double >( Clock::now() - start ).count();
}

} // namespace

// ---------------------------------------------------------------- generation

Model random_model( const GenParams& p )
{
    if ( p.agents == 0 || p.states == 0 || p.max_actions == 0 || p.props == 0 )
        throw input_error( "generator counts must be positive" );
    std::mt19937_64 rng{ p.seed };
    auto numbered = []( const char* prefix, std::size_t n ) {
        std::vector< std::string > out;
        for ( std::size_t i = 0; i < n; ++i )
            out.push_back( prefix + std::to_string( i ) );
        return out;
    };

    Model::Builder b;
    b.agents( numbered( "ag", p.agents ) )
        .states( numbered( "s", p.states ) )
        .actions( numbered( "a", p.max_actions ) )
        .propositions( numbered( "p", p.props ) );

    for ( std::uint32_t a = 0; a < p.agents; ++a )
    {
        std::vector< std::uint32_t > block( p.states );
        std::vector< std::vector< StateId > > members;
        for ( std::uint32_t s = 0; s < p.states; ++s )
        {
            if ( s > 0 && chance( rng, p.density ) )
                block[ s ] = block[ pick( rng, s ) ];
            else
            {
                block[ s ] = static_cast< std::uint32_t >( members.size() );
                members.emplace_back();
            }
            members[ block[ s ] ].emplace_back( s );
        }
        for ( const auto& group : members )
        {
            std::vector< std::uint32_t > pool( p.max_actions );
            for ( std::uint32_t i = 0; i < pool.size(); ++i )
                pool[ i ] = i;
            std::shuffle( pool.begin(), pool.end(), rng );
            pool.resize( 1 + pick( rng, p.max_actions ) );
            std::sort( pool.begin(), pool.end() );
            std::vector< ActionId > menu;
            for ( auto i : pool )
                menu.emplace_back( i );
            for ( auto s : group )
                b.menu( AgentId{ a }, s, menu );
            if ( group.size() > 1 )
                b.indistinguishable( AgentId{ a }, group );
        }
    }

    for ( std::uint32_t q = 0; q < p.props; ++q )
        for ( std::uint32_t s = 0; s < p.states; ++s )
            if ( chance( rng, 0.5 ) )
                b.label( PropId{ q }, StateId{ s } );

    // Transitions need the final menus, so draw them from a menu-only build.
    auto frame = b.build();
    for ( std::uint32_t s = 0; s < p.states; ++s )
        frame.for_each_joint_action( StateId{ s }, [ & ]( std::span< const ActionId > act ) {
            b.transition( StateId{ s }, JointAction{ act }, StateId{ static_cast< std::uint32_t >( pick( rng, p.states ) ) } );
        } );
    return b.build();
}

GenParams trial_params( std::uint64_t campaign_seed, std::size_t trial, std::size_t min_agents )
{
    std::mt19937_64 rng{ mix( campaign_seed, trial ) };
    GenParams p;
    p.agents = std::max< std::size_t >( min_agents, 1 + pick( rng, 3 ) );
    p.states = 2 + pick( rng, 5 );
    p.max_actions = p.agents >= 3 ? 2 : 2 + pick( rng, 2 );
    p.props = 3;
    static constexpr double densities[] = { 0.0, 0.25, 0.5, 0.75 };
    p.density = densities[ pick( rng, 4 ) ];
    p.seed = rng();
    return p;
}

std::vector< History > evaluation_points( const Model& m )
{
    return histories_up_to( m, 2 );
}

Formula random_propositional( const Model& m, std::mt19937_64& rng, int depth )
{
    if ( depth == 0 || chance( rng, 0.4 ) )
    {
        if ( chance( rng, 0.1 ) )
            return chance( rng, 0.5 ) ? Formula::top() : Formula::bot();
        return Formula::prop( m.prop_name( PropId{ static_cast< std::uint32_t >( pick( rng, m.prop_count() ) ) } ) );
    }
    switch ( pick( rng, 3 ) )
    {
    case 0: return ast::neg( random_propositional( m, rng, depth - 1 ) );
    case 1: return ast::conj( random_propositional( m, rng, depth - 1 ), random_propositional( m, rng, depth - 1 ) );
    default: return ast::disj( random_propositional( m, rng, depth - 1 ), random_propositional( m, rng, depth - 1 ) );
    }
}

// ---------------------------------------------------------------- schemata

std::vector< std::string > Binding::complement() const
{
    std::vector< std::string > out;
    for ( const auto& a : N )
        if ( std::find( G.begin(), G.end(), a ) == G.end() )
            out.push_back( a );
    return out;
}

std::vector< std::string > Binding::merged() const
{
    std::vector< std::string > out;
    for ( const auto& a : N )
        if ( std::find( G1.begin(), G1.end(), a ) != G1.end() || std::find( G2.begin(), G2.end(), a ) != G2.end() )
            out.push_back( a );
    return out;
}

std::string Binding::describe() const
{
    std::string out = "phi := " + print( phi ) + "; psi := " + print( psi );
    if ( !G.empty() )
        out += "; G := " + braces( G );
    if ( !G1.empty() )
        out += "; G1 := " + braces( G1 ) + "; G2 := " + braces( G2 );
    return out + "; H := " + std::to_string( horizon );
}

std::size_t Schema::min_agents() const
{
    return shape == CoalitionShape::disjoint || shape == CoalitionShape::proper ? 2 : 1;
}

namespace
{

std::vector< Schema > build_corpus()
{
    using namespace ast;
    using B = const Binding&;
    using Sides = std::pair< Formula, Formula >;
    std::vector< Schema > out;
    auto add = [ & ]( std::string name, std::string pattern, Polarity pol, CoalitionShape shape, Connective conn,
                      int min_h, bool uses_psi, std::function< Sides( B ) > sides ) {
        out.push_back( { std::move( name ), std::move( pattern ), pol, shape, conn, min_h, uses_psi, std::move( sides ) } );
    };
    const auto V = Polarity::valid;
    const auto NV = Polarity::falsifiable;
    const auto any = CoalitionShape::any;
    const auto imp = Connective::implies;
    const auto eq = Connective::iff;

    // Coalition logic, for next and the bounded always/until forms.
    add( "prop2.1-next", "~<<G>> X false", V, any, imp, 1, false,
         []( B b ) { return Sides{ top(), neg( next( b.G, bot() ) ) }; } );
    add( "prop2.1-always", "~<<G>> G false", V, any, imp, 0, false,
         []( B b ) { return Sides{ top(), neg( always( b.G, bot() ) ) }; } );
    add( "prop2.1-until", "~<<G>> phi U false", V, any, imp, 0, false,
         []( B b ) { return Sides{ top(), neg( until( b.G, b.phi, bot() ) ) }; } );
    add( "prop2.2-next", "<<G>> X true", V, any, imp, 1, false,
         []( B b ) { return Sides{ top(), next( b.G, top() ) }; } );
    add( "prop2.2-always", "<<G>> G true", V, any, imp, 0, false,
         []( B b ) { return Sides{ top(), always( b.G, top() ) }; } );
    add( "prop2.2-until", "<<G>> phi U true", V, any, imp, 0, false,
         []( B b ) { return Sides{ top(), until( b.G, b.phi, top() ) }; } );
    add( "prop2.3-next", "<<G>> X (phi & psi) -> <<G>> X phi", V, any, imp, 1, true,
         []( B b ) { return Sides{ next( b.G, conj( b.phi, b.psi ) ), next( b.G, b.phi ) }; } );
    add( "prop2.3-always", "<<G>> G (phi & psi) -> <<G>> G phi", V, any, imp, 0, true,
         []( B b ) { return Sides{ always( b.G, conj( b.phi, b.psi ) ), always( b.G, b.phi ) }; } );
    add( "prop2.3-until", "<<G>> phi U (phi & psi) -> <<G>> phi U psi", V, any, imp, 0, true,
         []( B b ) { return Sides{ until( b.G, b.phi, conj( b.phi, b.psi ) ), until( b.G, b.phi, b.psi ) }; } );
    add( "prop2.4-next", "<<G1>> X phi -> <<G2>> X phi, G1 <= G2", V, CoalitionShape::nested, imp, 1, false,
         []( B b ) { return Sides{ next( b.G1, b.phi ), next( b.G2, b.phi ) }; } );
    add( "prop2.4-always", "<<G1>> G phi -> <<G2>> G phi, G1 <= G2", V, CoalitionShape::nested, imp, 0, false,
         []( B b ) { return Sides{ always( b.G1, b.phi ), always( b.G2, b.phi ) }; } );
    add( "prop2.4-until", "<<G1>> phi U psi -> <<G2>> phi U psi, G1 <= G2", V, CoalitionShape::nested, imp, 0, true,
         []( B b ) { return Sides{ until( b.G1, b.phi, b.psi ), until( b.G2, b.phi, b.psi ) }; } );
    add( "prop2.5-next", "<<G1>> X phi & <<G2>> X psi -> <<G1+G2>> X (phi & psi), G1 # G2", V,
         CoalitionShape::disjoint, imp, 1, true, []( B b ) {
             return Sides{ conj( next( b.G1, b.phi ), next( b.G2, b.psi ) ), next( b.merged(), conj( b.phi, b.psi ) ) };
         } );
    add( "prop2.5-always", "<<G1>> G phi & <<G2>> G psi -> <<G1+G2>> G (phi & psi), G1 # G2", V,
         CoalitionShape::disjoint, imp, 0, true, []( B b ) {
             return Sides{ conj( always( b.G1, b.phi ), always( b.G2, b.psi ) ),
                           always( b.merged(), conj( b.phi, b.psi ) ) };
         } );
    add( "prop2.5-until", "<<G1>> F phi & <<G2>> G psi -> <<G1+G2>> psi U (phi & psi), G1 # G2", V,
         CoalitionShape::disjoint, imp, 0, true, []( B b ) {
             return Sides{ conj( eventually( b.G1, b.phi ), always( b.G2, b.psi ) ),
                           until( b.merged(), b.psi, conj( b.phi, b.psi ) ) };
         } );
    add( "prop2.6-next", "<<G>> X phi -> ~<<N-G>> X ~phi", V, CoalitionShape::proper, imp, 1, false,
         []( B b ) { return Sides{ next( b.G, b.phi ), neg( next( b.complement(), neg( b.phi ) ) ) }; } );
    add( "prop2.6-always", "<<G>> G phi -> ~<<N-G>> F ~phi", V, CoalitionShape::proper, imp, 0, false,
         []( B b ) { return Sides{ always( b.G, b.phi ), neg( eventually( b.complement(), neg( b.phi ) ) ) }; } );
    add( "prop2.6-until", "<<G>> phi U psi -> ~<<N-G>> G ~psi", V, CoalitionShape::proper, imp, 0, true,
         []( B b ) { return Sides{ until( b.G, b.phi, b.psi ), neg( always( b.complement(), neg( b.psi ) ) ) }; } );

    // Knowledge and ability.
    add( "prop3.1", "<<G>> X phi <-> <<G>> X D{G} phi", V, any, eq, 1, false,
         []( B b ) { return Sides{ next( b.G, b.phi ), next( b.G, dist( b.G, b.phi ) ) }; } );
    add( "prop3.2", "<<G>> X phi <-> D{G} <<G>> X phi", V, any, eq, 1, false,
         []( B b ) { return Sides{ next( b.G, b.phi ), dist( b.G, next( b.G, b.phi ) ) }; } );
    add( "prop3.3", "<<G>> G phi <-> <<G>> G D{G} phi", V, any, eq, 0, false,
         []( B b ) { return Sides{ always( b.G, b.phi ), always( b.G, dist( b.G, b.phi ) ) }; } );
    add( "prop3.4", "<<G>> G phi <-> D{G} <<G>> G phi", V, any, eq, 0, false,
         []( B b ) { return Sides{ always( b.G, b.phi ), dist( b.G, always( b.G, b.phi ) ) }; } );
    add( "prop3.5", "<<G>> (D{G} phi) U (D{G} psi) -> <<G>> phi U psi", V, any, imp, 0, true,
         []( B b ) { return Sides{ until( b.G, dist( b.G, b.phi ), dist( b.G, b.psi ) ), until( b.G, b.phi, b.psi ) }; } );
    add( "prop3.6", "<<G>> phi U psi <-> D{G} <<G>> phi U psi", V, any, eq, 0, true,
         []( B b ) { return Sides{ until( b.G, b.phi, b.psi ), dist( b.G, until( b.G, b.phi, b.psi ) ) }; } );
    add( "cor1.next", "<<G>> X D{G} phi <-> D{G} <<G>> X phi", V, any, eq, 1, false,
         []( B b ) { return Sides{ next( b.G, dist( b.G, b.phi ) ), dist( b.G, next( b.G, b.phi ) ) }; } );
    add( "cor1.always", "<<G>> G D{G} phi <-> D{G} <<G>> G phi", V, any, eq, 0, false,
         []( B b ) { return Sides{ always( b.G, dist( b.G, b.phi ) ), dist( b.G, always( b.G, b.phi ) ) }; } );

    // Fixed-point laws.
    add( "prop5", "<<G>> G phi -> phi & <<G>> X <<G>> G phi", V, any, imp, 1, false,
         []( B b ) { return Sides{ always( b.G, b.phi ), conj( b.phi, next( b.G, always( b.G, b.phi ) ) ) }; } );
    add( "thm1.1", "<<G>> G phi <-> D{G} phi & <<G>> X <<G>> G phi", V, any, eq, 1, false, []( B b ) {
        return Sides{ always( b.G, b.phi ), conj( dist( b.G, b.phi ), next( b.G, always( b.G, b.phi ) ) ) };
    } );
    add( "thm1.2", "<<G>> F phi -> Dhat{G} phi | <<G>> X <<G>> F phi", V, any, imp, 1, false, []( B b ) {
        return Sides{ eventually( b.G, b.phi ), disj( dist_dual( b.G, b.phi ), next( b.G, eventually( b.G, b.phi ) ) ) };
    } );
    add( "thm1.3", "D{G} phi | <<G>> X <<G>> F phi -> <<G>> F phi", V, any, imp, 1, false, []( B b ) {
        return Sides{ disj( dist( b.G, b.phi ), next( b.G, eventually( b.G, b.phi ) ) ), eventually( b.G, b.phi ) };
    } );
    add( "thm1.4", "<<G>> phi U psi -> Dhat{G} psi | (D{G} phi & <<G>> X <<G>> phi U psi)", V, any, imp, 1, true,
         []( B b ) {
             return Sides{ until( b.G, b.phi, b.psi ),
                           disj( dist_dual( b.G, b.psi ),
                                 conj( dist( b.G, b.phi ), next( b.G, until( b.G, b.phi, b.psi ) ) ) ) };
         } );
    add( "thm1.5", "D{G} psi | (D{G} phi & <<G>> X <<G>> phi U psi) -> <<G>> phi U psi", V, any, imp, 1, true,
         []( B b ) {
             return Sides{ disj( dist( b.G, b.psi ), conj( dist( b.G, b.phi ), next( b.G, until( b.G, b.phi, b.psi ) ) ) ),
                           until( b.G, b.phi, b.psi ) };
         } );

    // Single-agent forms with K.
    const auto one = CoalitionShape::agent;
    add( "cor2.1", "<<i>> G phi <-> K{i} phi & <<i>> X <<i>> G phi", V, one, eq, 1, false, []( B b ) {
        return Sides{ always( b.G, b.phi ), conj( know( b.G[ 0 ], b.phi ), next( b.G, always( b.G, b.phi ) ) ) };
    } );
    add( "cor2.2", "<<i>> F phi -> Khat{i} phi | <<i>> X <<i>> F phi", V, one, imp, 1, false, []( B b ) {
        return Sides{ eventually( b.G, b.phi ),
                      disj( know_dual( b.G[ 0 ], b.phi ), next( b.G, eventually( b.G, b.phi ) ) ) };
    } );
    add( "cor2.3", "K{i} phi | <<i>> X <<i>> F phi -> <<i>> F phi", V, one, imp, 1, false, []( B b ) {
        return Sides{ disj( know( b.G[ 0 ], b.phi ), next( b.G, eventually( b.G, b.phi ) ) ), eventually( b.G, b.phi ) };
    } );
    add( "cor2.4", "<<i>> phi U psi -> Khat{i} psi | (K{i} phi & <<i>> X <<i>> phi U psi)", V, one, imp, 1, true,
         []( B b ) {
             return Sides{ until( b.G, b.phi, b.psi ),
                           disj( know_dual( b.G[ 0 ], b.psi ),
                                 conj( know( b.G[ 0 ], b.phi ), next( b.G, until( b.G, b.phi, b.psi ) ) ) ) };
         } );
    add( "cor2.5", "K{i} psi | (K{i} phi & <<i>> X <<i>> phi U psi) -> <<i>> phi U psi", V, one, imp, 1, true,
         []( B b ) {
             return Sides{ disj( know( b.G[ 0 ], b.psi ),
                                 conj( know( b.G[ 0 ], b.phi ), next( b.G, until( b.G, b.phi, b.psi ) ) ) ),
                           until( b.G, b.phi, b.psi ) };
         } );

    // The classical unfoldings without group knowledge, which fail.
    add( "prop4.1", "phi & <<G>> X <<G>> G phi -> <<G>> G phi", NV, any, imp, 1, false,
         []( B b ) { return Sides{ conj( b.phi, next( b.G, always( b.G, b.phi ) ) ), always( b.G, b.phi ) }; } );
    add( "prop4.2", "phi | <<G>> X <<G>> F phi -> <<G>> F phi", NV, any, imp, 1, false,
         []( B b ) { return Sides{ disj( b.phi, next( b.G, eventually( b.G, b.phi ) ) ), eventually( b.G, b.phi ) }; } );
    add( "prop4.3", "<<G>> F phi -> phi | <<G>> X <<G>> F phi", NV, any, imp, 1, false,
         []( B b ) { return Sides{ eventually( b.G, b.phi ), disj( b.phi, next( b.G, eventually( b.G, b.phi ) ) ) }; } );
    add( "prop4.4", "psi | (phi & <<G>> X <<G>> phi U psi) -> <<G>> phi U psi", NV, any, imp, 1, true, []( B b ) {
        return Sides{ disj( b.psi, conj( b.phi, next( b.G, until( b.G, b.phi, b.psi ) ) ) ), until( b.G, b.phi, b.psi ) };
    } );
    add( "prop4.5", "<<G>> phi U psi -> psi | (phi & <<G>> X <<G>> phi U psi)", NV, any, imp, 1, true, []( B b ) {
        return Sides{ until( b.G, b.phi, b.psi ), disj( b.psi, conj( b.phi, next( b.G, until( b.G, b.phi, b.psi ) ) ) ) };
    } );
    add( "prop3.5-converse", "<<G>> phi U psi -> <<G>> (D{G} phi) U (D{G} psi)", NV, any, imp, 0, true,
         []( B b ) { return Sides{ until( b.G, b.phi, b.psi ), until( b.G, dist( b.G, b.phi ), dist( b.G, b.psi ) ) }; } );
    return out;
}

// Coalition bindings of a shape over n agents, as (G or G1, G2) bitmasks.
std::vector< std::pair< std::uint64_t, std::uint64_t > > all_coalitions( CoalitionShape shape, std::size_t n )
{
    std::vector< std::pair< std::uint64_t, std::uint64_t > > out;
    const std::uint64_t full = ( std::uint64_t{ 1 } << n ) - 1;
    for ( std::uint64_t a = 1; a <= full; ++a )
        switch ( shape )
        {
        case CoalitionShape::any: out.emplace_back( a, 0 ); break;
        case CoalitionShape::proper:
            if ( a != full )
                out.emplace_back( a, 0 );
            break;
        case CoalitionShape::agent:
            if ( std::has_single_bit( a ) )
                out.emplace_back( a, 0 );
            break;
        case CoalitionShape::nested:
        case CoalitionShape::disjoint:
            for ( std::uint64_t b = 1; b <= full; ++b )
                if ( shape == CoalitionShape::nested ? ( a & ~b ) == 0 : ( a & b ) == 0 )
                    out.emplace_back( a, b );
            break;
        }
    return out;
}

std::pair< std::uint64_t, std::uint64_t > sample_coalitions( CoalitionShape shape, std::size_t n,
                                                             std::mt19937_64& rng )
{
    auto options = all_coalitions( shape, n );
    return options[ pick( rng, options.size() ) ];
}

void bind_coalitions( Binding& b, const Model& m, CoalitionShape shape, std::pair< std::uint64_t, std::uint64_t > c )
{
    b.N = m.agent_names();
    if ( shape == CoalitionShape::nested || shape == CoalitionShape::disjoint )
    {
        b.G1 = names_of( m, Coalition{ c.first } );
        b.G2 = names_of( m, Coalition{ c.second } );
    }
    else
        b.G = names_of( m, Coalition{ c.first } );
}

// Literals over the model's propositions, positive first.
std::vector< Formula > literals( const Model& m )
{
    std::vector< Formula > out;
    for ( const auto& p : m.prop_names() )
        out.push_back( Formula::prop( p ) );
    for ( const auto& p : m.prop_names() )
        out.push_back( Formula::negation( Formula::prop( p ) ) );
    return out;
}

std::vector< Binding > exhaustive_bindings( const Schema& s, const Model& m )
{
    std::vector< Binding > out;
    auto lits = literals( m );
    for ( int h = s.min_horizon; h <= 3; ++h )
        for ( const auto& phi : lits )
            for ( std::size_t j = 0; j < ( s.uses_psi ? lits.size() : 1 ); ++j )
                for ( auto c : all_coalitions( s.shape, m.agent_count() ) )
                {
                    Binding b;
                    b.phi = phi;
                    b.psi = s.uses_psi ? lits[ j ] : Formula::top();
                    b.horizon = h;
                    bind_coalitions( b, m, s.shape, c );
                    out.push_back( std::move( b ) );
                }
    return out;
}

Binding sample_binding( const Schema& s, const Model& m, std::mt19937_64& rng )
{
    Binding b;
    b.phi = random_propositional( m, rng );
    b.psi = s.uses_psi ? random_propositional( m, rng ) : Formula::top();
    b.horizon = s.min_horizon + static_cast< int >( pick( rng, static_cast< std::size_t >( 4 - s.min_horizon ) ) );
    bind_coalitions( b, m, s.shape, sample_coalitions( s.shape, m.agent_count(), rng ) );
    return b;
}

// Evaluates one instantiated schema at every point and records failures.
void run_instance( const Schema& s, const Binding& b, const Model& m, const ModelSource& source,
                   const std::vector< History >& points, Evaluator& ev, CampaignReport& report, std::size_t cap )
{
    auto [ l, r ] = s.sides( b );
    auto rl = resolve( l, m );
    auto rr = resolve( r, m );
    const Horizon h{ b.horizon };
    for ( const auto& p : points )
    {
        ++report.checks;
        bool lv = ev.holds( p, rl, h );
        if ( s.connective == Connective::implies && !lv )
            continue;
        bool rv = ev.holds( p, rr, h );
        bool failed = s.connective == Connective::implies ? !rv : lv != rv;
        if ( !failed || report.counterexamples.size() >= cap )
            continue;
        report.counterexamples.push_back(
            { s.name, source, format_history( m, p ), b.describe(), print( l ), print( r ), s.connective, b.horizon, lv, rv, "" } );
    }
}

struct TrialModel
{
    ModelSource source;
    Model model;
    std::vector< History > points;
};

TrialModel trial_model( std::uint64_t seed, std::size_t trial, std::size_t min_agents )
{
    ModelSource src{ "", trial_params( seed, trial, min_agents ) };
    auto m = src.load();
    auto points = evaluation_points( m );
    return { std::move( src ), std::move( m ), std::move( points ) };
}

TrialModel builtin_model( const std::string& name )
{
    ModelSource src{ name, std::nullopt };
    auto m = src.load();
    auto points = evaluation_points( m );
    return { std::move( src ), std::move( m ), std::move( points ) };
}

const std::size_t unlimited = static_cast< std::size_t >( -1 );

} // namespace

const std::vector< Schema >& schema_corpus()
{
    static const std::vector< Schema > corpus = build_corpus();
    return corpus;
}

const Schema& find_schema( std::string_view name )
{
    for ( const auto& s : schema_corpus() )
        if ( s.name == name )
            return s;
    throw input_error( "unknown schema '" + std::string( name ) + "'" );
}

// ---------------------------------------------------------------- campaigns

Model ModelSource::load() const
{
    if ( params )
        return random_model( *params );
    return dkatl::builtin( builtin ).model;
}

std::string ModelSource::describe() const
{
    if ( !params )
        return builtin;
    const auto& p = *params;
    return "random(agents=" + std::to_string( p.agents ) + ", states=" + std::to_string( p.states ) +
           ", actions=" + std::to_string( p.max_actions ) + ", props=" + std::to_string( p.props ) +
           ", density=" + std::to_string( p.density ).substr( 0, 4 ) + ", seed=" + std::to_string( p.seed ) + ")";
}

bool CampaignReport::passed() const
{
    return polarity == Polarity::valid ? counterexamples.empty() : !counterexamples.empty();
}

CampaignReport check_schema( const Schema& s, const CampaignOptions& options )
{
    auto start = Clock::now();
    CampaignReport report;
    report.name = s.name;
    report.polarity = s.polarity;
    report.trials = options.trials;
    const auto seed = mix( options.seed, fnv1a( s.name ) );

    for ( const auto& name : options.builtins )
    {
        auto t = builtin_model( name );
        if ( t.model.agent_count() < s.min_agents() )
            continue;
        Evaluator ev{ t.model };
        if ( s.polarity == Polarity::falsifiable )
            for ( const auto& b : exhaustive_bindings( s, t.model ) )
                run_instance( s, b, t.model, t.source, t.points, ev, report, unlimited );
        else
        {
            std::mt19937_64 rng{ mix( seed, fnv1a( name ) ) };
            for ( int k = 0; k < 4; ++k )
                run_instance( s, sample_binding( s, t.model, rng ), t.model, t.source, t.points, ev, report, unlimited );
        }
    }

    const auto cap = s.polarity == Polarity::falsifiable
                         ? report.counterexamples.size() + options.random_counterexample_cap
                         : unlimited;
    for ( std::size_t trial = 0; trial < options.trials; ++trial )
    {
        if ( report.counterexamples.size() >= cap )
            break;
        auto t = trial_model( seed, trial, s.min_agents() );
        std::mt19937_64 rng{ mix( t.source.params->seed, 0xb1d ) };
        Evaluator ev{ t.model };
        run_instance( s, sample_binding( s, t.model, rng ), t.model, t.source, t.points, ev, report, cap );
    }
    report.wall_seconds = seconds_since( start );
    return report;
}

namespace
{

bool evaluate_side( const Model& m, const History& at, const Formula& f, int horizon, const std::string& mode )
{
    if ( mode == "fixedpoint" )
        return eval_fixedpoint( m, at, f, Horizon{ horizon } ).verdict;
    if ( mode == "direct-epistemic" )
    {
        EvalOptions o;
        o.direct_epistemic = true;
        return eval( m, at, f, Horizon{ horizon }, o ).verdict;
    }
    if ( mode == "witness" )
    {
        auto w = synthesize_strategy( m, at, resolve( f, m ).root().coalition, f, Horizon{ horizon } );
        return w && check_witness( m, at, f, Horizon{ horizon }, *w ).ok();
    }
    return eval( m, at, f, Horizon{ horizon } ).verdict;
}

// Records a disagreement between two evaluations of the same formula.
Counterexample disagreement( std::string name, const ModelSource& src, const Model& m, const History& p,
                             const Formula& f, int horizon, bool lv, bool rv, std::string mode )
{
    return { std::move( name ), src, format_history( m, p ), "", print( f ), print( f ), Connective::iff, horizon, lv, rv,
             std::move( mode ) };
}

} // namespace

bool replay( const Counterexample& c )
{
    auto m = c.source.load();
    auto at = parse_history( m, c.history );
    bool lv = evaluate_side( m, at, parse( c.lhs ), c.horizon, "" );
    bool rv = evaluate_side( m, at, parse( c.rhs ), c.horizon, c.rhs_mode );
    if ( lv != c.lhs_verdict || rv != c.rhs_verdict )
        return false;
    return c.connective == Connective::implies ? lv && !rv : lv != rv;
}

namespace
{

void crosscheck_model( const TrialModel& t, std::mt19937_64& rng, bool exhaustive, CampaignReport& report )
{
    const auto& m = t.model;
    Evaluator ev{ m };
    FixedPointEvaluator fp{ m };
    auto check = [ & ]( const Formula& f, int h ) {
        auto resolved = resolve( f, m );
        for ( const auto& p : t.points )
        {
            ++report.checks;
            bool lv = ev.holds( p, resolved, Horizon{ h } );
            bool rv = fp.holds( p, resolved, Horizon{ h } );
            if ( lv != rv )
                report.counterexamples.push_back(
                    disagreement( report.name, t.source, m, p, f, h, lv, rv, "fixedpoint" ) );
        }
    };
    auto queries = [ & ]( const std::vector< std::string >& G, const Formula& phi, const Formula& psi, int h ) {
        check( ast::always( G, phi ), h );
        check( ast::eventually( G, phi ), h );
        check( ast::until( G, phi, psi ), h );
    };

    auto coalitions = all_coalitions( CoalitionShape::any, m.agent_count() );
    if ( exhaustive )
    {
        auto lits = literals( m );
        for ( int h = 0; h <= 3; ++h )
            for ( auto [ g, unused ] : coalitions )
                for ( const auto& phi : lits )
                    for ( const auto& psi : lits )
                        queries( names_of( m, Coalition{ g } ), phi, psi, h );
        return;
    }
    for ( int h = 0; h <= 3; ++h )
    {
        auto G = names_of( m, Coalition{ coalitions[ pick( rng, coalitions.size() ) ].first } );
        queries( G, random_propositional( m, rng ), random_propositional( m, rng ), h );
    }
}

} // namespace

CampaignReport oracle_crosscheck( const CampaignOptions& options )
{
    auto start = Clock::now();
    CampaignReport report;
    report.name = "oracle-fixedpoint";
    report.trials = options.trials;
    const auto seed = mix( options.seed, fnv1a( report.name ) );
    std::mt19937_64 unused_rng{ seed };
    for ( const auto& name : builtin_names() )
        crosscheck_model( builtin_model( name ), unused_rng, true, report );
    for ( std::size_t trial = 0; trial < options.trials; ++trial )
    {
        auto t = trial_model( seed, trial, 1 );
        std::mt19937_64 rng{ mix( t.source.params->seed, 0x0c1e ) };
        crosscheck_model( t, rng, false, report );
    }
    report.wall_seconds = seconds_since( start );
    return report;
}

CampaignReport epistemic_crosscheck( const CampaignOptions& options )
{
    auto start = Clock::now();
    CampaignReport report;
    report.name = "epistemic-direct";
    report.trials = options.trials;
    const auto seed = mix( options.seed, fnv1a( report.name ) );

    auto run = [ & ]( const TrialModel& t, std::mt19937_64& rng ) {
        const auto& m = t.model;
        Evaluator by_until{ m };
        EvalOptions direct_options;
        direct_options.direct_epistemic = true;
        Evaluator direct{ m, direct_options };
        auto coalitions = all_coalitions( CoalitionShape::any, m.agent_count() );
        auto any_coalition = [ & ] { return names_of( m, Coalition{ coalitions[ pick( rng, coalitions.size() ) ].first } ); };
        auto any_agent = [ & ] { return m.agent_name( AgentId{ static_cast< std::uint32_t >( pick( rng, m.agent_count() ) ) } ); };

        std::vector< std::pair< Formula, int > > formulas;
        for ( int k = 0; k < 2; ++k )
        {
            formulas.emplace_back( ast::dist( any_coalition(), random_propositional( m, rng ) ), 0 );
            formulas.emplace_back( ast::know( any_agent(), random_propositional( m, rng ) ), 0 );
        }
        formulas.emplace_back( ast::know( any_agent(), ast::neg( ast::know( any_agent(), random_propositional( m, rng ) ) ) ), 0 );
        formulas.emplace_back( ast::dist( any_coalition(), ast::next( any_coalition(), random_propositional( m, rng ) ) ), 1 );
        formulas.emplace_back(
            ast::know( any_agent(), ast::always( any_coalition(), random_propositional( m, rng ) ) ), 2 );

        for ( const auto& [ f, h ] : formulas )
        {
            auto resolved = resolve( f, m );
            for ( const auto& p : t.points )
            {
                ++report.checks;
                bool lv = by_until.holds( p, resolved, Horizon{ h } );
                bool rv = direct.holds( p, resolved, Horizon{ h } );
                if ( lv != rv )
                    report.counterexamples.push_back(
                        disagreement( report.name, t.source, m, p, f, h, lv, rv, "direct-epistemic" ) );
            }
        }
    };

    for ( const auto& name : builtin_names() )
    {
        std::mt19937_64 rng{ mix( seed, fnv1a( name ) ) };
        run( builtin_model( name ), rng );
    }
    for ( std::size_t trial = 0; trial < options.trials; ++trial )
    {
        auto t = trial_model( seed, trial, 1 );
        std::mt19937_64 rng{ mix( t.source.params->seed, 0xe9 ) };
        run( t, rng );
    }
    report.wall_seconds = seconds_since( start );
    return report;
}

CampaignReport witness_crosscheck( const CampaignOptions& options )
{
    auto start = Clock::now();
    CampaignReport report;
    report.name = "witness-replay";
    report.trials = options.trials;
    const auto seed = mix( options.seed, fnv1a( report.name ) );

    auto run = [ & ]( const TrialModel& t, std::mt19937_64& rng ) {
        const auto& m = t.model;
        auto coalitions = all_coalitions( CoalitionShape::any, m.agent_count() );
        auto any_coalition = [ & ] { return names_of( m, Coalition{ coalitions[ pick( rng, coalitions.size() ) ].first } ); };
        std::vector< std::pair< Formula, int > > goals;
        goals.emplace_back( ast::next( any_coalition(), random_propositional( m, rng ) ), 1 );
        goals.emplace_back( ast::always( any_coalition(), random_propositional( m, rng ) ), 2 );
        goals.emplace_back( ast::until( any_coalition(), random_propositional( m, rng ), random_propositional( m, rng ) ), 2 );
        goals.emplace_back( ast::eventually( any_coalition(), random_propositional( m, rng ) ), 3 );
        goals.emplace_back( ast::next( any_coalition(), ast::always( any_coalition(), random_propositional( m, rng ) ) ), 2 );

        Evaluator ev{ m };
        for ( const auto& [ f, h ] : goals )
        {
            auto resolved = resolve( f, m );
            for ( const auto& p : t.points )
            {
                auto w = ev.witness( p, resolved, Horizon{ h } );
                if ( !w )
                    continue;
                ++report.checks;
                if ( !check_witness( m, p, f, Horizon{ h }, *w ).ok() )
                    report.counterexamples.push_back(
                        disagreement( report.name, t.source, m, p, f, h, true, false, "witness" ) );
            }
        }
    };

    for ( const auto& name : builtin_names() )
    {
        std::mt19937_64 rng{ mix( seed, fnv1a( name ) ) };
        run( builtin_model( name ), rng );
    }
    for ( std::size_t trial = 0; trial < options.trials; ++trial )
    {
        auto t = trial_model( seed, trial, 1 );
        std::mt19937_64 rng{ mix( t.source.params->seed, 0x3a ) };
        run( t, rng );
    }
    report.wall_seconds = seconds_since( start );
    return report;
}

CampaignReport builtin_regression()
{
    auto start = Clock::now();
    CampaignReport report;
    report.name = "builtin-regression";
    for ( const auto& name : builtin_names() )
    {
        auto suite = builtin( name );
        ++report.trials;
        for ( const auto& check : suite.checks )
        {
            ++report.checks;
            auto at = parse_history( suite.model, check.history );
            auto f = parse( check.formula );
            bool v = eval( suite.model, at, f, Horizon{ check.horizon } ).verdict;
            if ( v != check.expected )
                report.counterexamples.push_back( { report.name, ModelSource{ name, std::nullopt }, check.history,
                                                    "expected verdict", check.formula,
                                                    check.expected ? "true" : "false", Connective::iff, check.horizon,
                                                    v, check.expected, "" } );
        }
    }
    report.wall_seconds = seconds_since( start );
    return report;
}

std::vector< CampaignReport > run_suite( const SuiteOptions& options )
{
    std::vector< CampaignReport > out;
    auto done = [ & ]( CampaignReport r ) {
        if ( options.progress )
            options.progress( r );
        out.push_back( std::move( r ) );
    };

    done( builtin_regression() );
    for ( const auto& s : schema_corpus() )
    {
        CampaignOptions o;
        o.seed = options.seed;
        if ( s.polarity == Polarity::valid )
        {
            o.trials = options.valid_trials;
            o.builtins = builtin_names();
        }
        else
            o.trials = options.falsify_trials;
        done( check_schema( s, o ) );
    }
    CampaignOptions o;
    o.seed = options.seed;
    o.trials = options.oracle_trials;
    done( oracle_crosscheck( o ) );
    o.trials = options.epistemic_trials;
    done( epistemic_crosscheck( o ) );
    o.trials = options.witness_trials;
    done( witness_crosscheck( o ) );
    return out;
}

std::string_view to_string( Polarity p )
{
    return p == Polarity::valid ? "valid" : "falsifiable";
}

std::string_view to_string( Connective c )
{
    return c == Connective::implies ? "implies" : "iff";
}

} // namespace dkatl
