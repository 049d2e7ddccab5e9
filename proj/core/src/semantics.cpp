#include "dkatl/semantics.hpp"

#include "dkatl/errors.hpp"

#include <algorithm>
#include <functional>

namespace dkatl
{

namespace
{

struct SatKey
{
    const ResolvedNode* node;
    int budget;
    History history;

    friend bool operator==( const SatKey&, const SatKey& ) = default;
};

struct SatKeyHash
{
    std::size_t operator()( const SatKey& k ) const noexcept
    {
        auto seed = hash_combine( std::hash< const void* >{}( k.node ), static_cast< std::size_t >( k.budget ) );
        return hash_combine( seed, k.history.hash() );
    }
};

struct SetKey
{
    const ResolvedNode* node;
    int budget;
    std::vector< History > members;

    friend bool operator==( const SetKey&, const SetKey& ) = default;
};

struct SetKeyHash
{
    std::size_t operator()( const SetKey& k ) const noexcept
    {
        auto seed = hash_combine( std::hash< const void* >{}( k.node ), static_cast< std::size_t >( k.budget ) );
        for ( const auto& h : k.members )
            seed = hash_combine( seed, h.hash() );
        return seed;
    }
};

void check_budget( int budget )
{
    if ( budget < 0 )
        throw input_error( "horizon must be nonnegative" );
}

[[noreturn]] void insufficient_budget()
{
    throw unsupported_query( "insufficient budget: next-step obligation pending at budget 0" );
}

// Rejects a query before evaluation when the budget accounting could reach a
// next operator at budget 0, so the error never depends on search order. An
// always target is checked at every stage down to budget 0; an until goal at
// every stage, its side condition only at stages with budget left; the
// knowledge form <<G>> f U f only at stage 0.
void require_budget( const ResolvedNode& f, int r )
{
    switch ( f.op )
    {
    case Op::top:
    case Op::bot:
    case Op::prop: return;
    case Op::negation: require_budget( *f.lhs, r ); return;
    case Op::conjunction:
        require_budget( *f.lhs, r );
        require_budget( *f.rhs, r );
        return;
    case Op::next:
        if ( r == 0 )
            insufficient_budget();
        require_budget( *f.lhs, r - 1 );
        return;
    case Op::always: require_budget( *f.lhs, 0 ); return;
    case Op::until:
        if ( f.is_dist_knowledge() )
        {
            require_budget( *f.lhs, r );
            return;
        }
        require_budget( *f.rhs, 0 );
        if ( r > 0 )
            require_budget( *f.lhs, 1 );
        return;
    }
}

// Canonical block ids of the coalition partition ⋂_{i∈G} R_i, per coalition.
class coalition_blocks
{
    const Model& _model;
    std::unordered_map< std::uint64_t, std::vector< std::uint32_t > > _blocks;

public:
    explicit coalition_blocks( const Model& m ) : _model{ m } {}

    std::uint32_t of( Coalition G, StateId s )
    {
        auto it = _blocks.find( G.bits() );
        if ( it == _blocks.end() )
        {
            std::vector< std::uint32_t > ids( _model.state_count() );
            std::map< std::vector< std::uint32_t >, std::uint32_t > seen;
            for ( std::uint32_t w = 0; w < _model.state_count(); ++w )
            {
                std::vector< std::uint32_t > sig;
                for ( auto a : G.members() )
                    sig.push_back( _model.block( a, StateId{ w } ) );
                auto [ pos, fresh ] = seen.try_emplace( sig, static_cast< std::uint32_t >( seen.size() ) );
                ids[ w ] = pos->second;
            }
            it = _blocks.emplace( G.bits(), std::move( ids ) ).first;
        }
        return it->second[ s.value ];
    }
};

// Enumerates the coalition's joint choices at s in lexicographic order; the
// callback sees a full-length vector whose non-member entries are meaningless.
// Stops early when the callback returns true.
bool any_choice( const Model& m, StateId s, Coalition G, const std::function< bool( std::span< const ActionId > ) >& fn )
{
    std::vector< ActionId > filler( m.agent_count() );
    bool found = false;
    // Fixing the complement turns completion enumeration into choice enumeration.
    auto others = G.complement( m.agent_count() );
    for ( auto a : others.members() )
        filler[ a.value ] = ActionId{ 0 };
    // for_each_completion cannot stop early; skip the work once found.
    m.for_each_completion( s, others, filler, [ & ]( std::span< const ActionId > c ) {
        if ( !found )
            found = fn( c );
    } );
    return found;
}

std::vector< ActionId > member_actions( Coalition G, std::span< const ActionId > full )
{
    std::vector< ActionId > out;
    for ( auto a : G.members() )
        out.push_back( full[ a.value ] );
    return out;
}

std::vector< ActionId > expand_choice( const Model& m, Coalition G, const std::vector< ActionId >& members )
{
    std::vector< ActionId > full( m.agent_count() );
    auto ids = G.members();
    for ( std::size_t i = 0; i < ids.size(); ++i )
        full[ ids[ i ].value ] = members[ i ];
    return full;
}

StateId step( const Model& m, StateId from, std::span< const ActionId > act )
{
    auto v = m.transition( from, act );
    if ( !v )
        throw input_error( "model has no transition at (" + m.state_name( from ) + ", " +
                           format_joint_action( m, act ) + "); validate the model first" );
    return *v;
}

bool prop_holds( const Model& m, const ResolvedNode& f, StateId s )
{
    switch ( f.op )
    {
    case Op::top: return true;
    case Op::bot: return false;
    case Op::prop: return m.holds( f.prop, s );
    case Op::negation: return !prop_holds( m, *f.lhs, s );
    case Op::conjunction: return prop_holds( m, *f.lhs, s ) && prop_holds( m, *f.rhs, s );
    default: throw unsupported_query( "temporal target must be propositional" );
    }
}

} // namespace

// ================================================================ Evaluator

struct Evaluator::impl
{
    struct WinEntry
    {
        bool value = false;
        std::vector< ActionId > choice; // full length; empty when no move was needed
    };

    const Model& model;
    EvalOptions options;
    ClassCache classes;
    coalition_blocks blocks;
    std::unordered_map< SatKey, bool, SatKeyHash > sat_memo;
    std::unordered_map< SetKey, WinEntry, SetKeyHash > win_memo;
    std::unordered_map< SatKey, std::vector< ActionId >, SatKeyHash > next_choice;
    std::vector< ResolvedFormula > keep_alive;
    std::size_t nodes = 0;

    impl( const Model& m, EvalOptions o ) : model{ m }, options{ o }, classes{ m }, blocks{ m } {}

    bool sat( const History& h, const ResolvedNode& f, int r )
    {
        switch ( f.op )
        {
        case Op::top: return true;
        case Op::bot: return false;
        case Op::prop: return model.holds( f.prop, h.last() );
        case Op::negation: return !sat( h, *f.lhs, r );
        case Op::conjunction: return sat( h, *f.lhs, r ) && sat( h, *f.rhs, r );
        default: break;
        }

        if ( auto it = sat_memo.find( SatKey{ &f, r, h } ); it != sat_memo.end() )
            return it->second;

        auto cls = classes.get( h, f.coalition );
        bool value = false;
        if ( f.op == Op::next )
            value = next_step( *cls, f, r );
        else if ( options.direct_epistemic && f.is_dist_knowledge() )
            value = std::all_of( cls->members.begin(), cls->members.end(),
                                 [ & ]( const History& g ) { return sat( g, *f.lhs, r ); } );
        else
            value = win( cls->members, f, r ).value;

        // The verdict is a property of the whole class.
        for ( const auto& member : cls->members )
            sat_memo.emplace( SatKey{ &f, r, member }, value );
        return value;
    }

    bool next_step( const InfoClass& cls, const ResolvedNode& f, int r )
    {
        if ( r == 0 )
            insufficient_budget();
        ++nodes;
        const auto G = f.coalition;
        std::vector< ActionId > chosen;
        bool value = any_choice( model, cls.representative().last(), G, [ & ]( std::span< const ActionId > c ) {
            for ( const auto& h : cls.members )
            {
                bool ok = true;
                model.for_each_completion( h.last(), G, c, [ & ]( std::span< const ActionId > act ) {
                    if ( ok && !sat( h.extended( act, step( model, h.last(), act ) ), *f.lhs, r - 1 ) )
                        ok = false;
                } );
                if ( !ok )
                    return false;
            }
            chosen.assign( c.begin(), c.end() );
            return true;
        } );
        if ( value )
            next_choice.emplace( SatKey{ &f, r, cls.representative() }, std::move( chosen ) );
        return value;
    }

    // Histories in `open` that still carry the obligation at this stage, or
    // nullopt when some play has already failed it.
    std::optional< std::vector< History > > open_obligations( const std::vector< History >& pending,
                                                              const ResolvedNode& f, int r )
    {
        std::vector< History > open;
        for ( const auto& h : pending )
        {
            if ( f.op == Op::always )
            {
                if ( !sat( h, *f.lhs, r ) )
                    return std::nullopt;
                open.push_back( h );
                continue;
            }
            if ( sat( h, *f.rhs, r ) )
                continue;
            if ( !sat( h, *f.lhs, r ) )
                return std::nullopt;
            open.push_back( h );
        }
        return open;
    }

    // Successors of `from` under coalition choice c, grouped by the coalition
    // block of the new last state. Members of `from` are pairwise ≈_G, so each
    // group is (a subset of) one ≈_G class.
    std::map< std::uint32_t, std::vector< History > > successors( const std::vector< History >& from, Coalition G,
                                                                  std::span< const ActionId > c )
    {
        std::map< std::uint32_t, std::vector< History > > groups;
        for ( const auto& h : from )
            model.for_each_completion( h.last(), G, c, [ & ]( std::span< const ActionId > act ) {
                auto v = step( model, h.last(), act );
                groups[ blocks.of( G, v ) ].push_back( h.extended( act, v ) );
            } );
        for ( auto& [ id, members ] : groups )
            std::sort( members.begin(), members.end() );
        return groups;
    }

    // `pending` is a sorted subset of one ≈_G class whose plays still owe the
    // always/until obligation of f; r is the remaining budget.
    const WinEntry& win( const std::vector< History >& pending, const ResolvedNode& f, int r )
    {
        SetKey key{ &f, r, pending };
        if ( auto it = win_memo.find( key ); it != win_memo.end() )
            return it->second;
        ++nodes;

        WinEntry entry;
        auto open = open_obligations( pending, f, r );
        if ( !open )
            entry.value = false;
        else if ( open->empty() )
            entry.value = true;
        else if ( r == 0 )
            entry.value = f.op == Op::always;
        else
        {
            const auto G = f.coalition;
            entry.value = any_choice( model, open->front().last(), G, [ & ]( std::span< const ActionId > c ) {
                for ( const auto& [ id, group ] : successors( *open, G, c ) )
                    if ( !win( group, f, r - 1 ).value )
                        return false;
                entry.choice.assign( c.begin(), c.end() );
                return true;
            } );
        }
        return win_memo.insert_or_assign( std::move( key ), std::move( entry ) ).first->second;
    }

    std::vector< ActionId > least_choice( StateId s, Coalition G )
    {
        std::vector< ActionId > out;
        any_choice( model, s, G, [ & ]( std::span< const ActionId > c ) {
            out.assign( c.begin(), c.end() );
            return true;
        } );
        return out;
    }

    // Fills F on every class reachable within r moves from the class `full`,
    // following the choices the search recorded for pending plays and the
    // least legal choice elsewhere.
    void build( const std::vector< History >& full, const std::vector< History >& pending, const ResolvedNode& f,
                int r, StrategyProfile& F )
    {
        if ( r == 0 )
            return;
        const auto G = f.coalition;
        std::vector< History > open;
        std::vector< ActionId > c;
        if ( !pending.empty() )
        {
            open = open_obligations( pending, f, r ).value();
            if ( !open.empty() )
            {
                c = win( pending, f, r ).choice;
                if ( c.empty() )
                    throw std::logic_error( "witness requested for a failing obligation" );
            }
        }
        if ( c.empty() )
            c = least_choice( full.front().last(), G );
        F.choice.emplace( full.front(), member_actions( G, c ) );

        auto full_next = successors( full, G, c );
        auto open_next = successors( open, G, c );
        for ( const auto& [ id, group ] : full_next )
        {
            auto it = open_next.find( id );
            build( group, it == open_next.end() ? std::vector< History >{} : it->second, f, r - 1, F );
        }
    }

    std::optional< StrategyProfile > witness( const History& at, const ResolvedNode& f, int r )
    {
        if ( f.op != Op::next && f.op != Op::always && f.op != Op::until )
            throw input_error( "witness requires a coalition-operator formula" );
        if ( !sat( at, f, r ) )
            return std::nullopt;
        auto cls = classes.get( at, f.coalition );
        StrategyProfile F;
        F.coalition = f.coalition;
        if ( f.op == Op::next )
        {
            auto it = next_choice.find( SatKey{ &f, r, cls->representative() } );
            if ( it == next_choice.end() )
            {
                // The verdict was answered from a class member's memo entry.
                next_step( *cls, f, r );
                it = next_choice.find( SatKey{ &f, r, cls->representative() } );
            }
            F.choice.emplace( cls->representative(), member_actions( f.coalition, it->second ) );
            return F;
        }
        if ( options.direct_epistemic && f.is_dist_knowledge() )
            win( cls->members, f, r );
        build( cls->members, cls->members, f, r, F );
        return F;
    }
};

Evaluator::Evaluator( const Model& m, EvalOptions options ) : _impl{ std::make_unique< impl >( m, options ) } {}
Evaluator::~Evaluator() = default;

bool Evaluator::holds( const History& at, const ResolvedFormula& f, Horizon h )
{
    check_budget( h.budget );
    require_budget( f.root(), h.budget );
    _impl->keep_alive.push_back( f );
    return _impl->sat( at, f.root(), h.budget );
}

std::optional< StrategyProfile > Evaluator::witness( const History& at, const ResolvedFormula& f, Horizon h )
{
    check_budget( h.budget );
    require_budget( f.root(), h.budget );
    _impl->keep_alive.push_back( f );
    return _impl->witness( at, f.root(), h.budget );
}

EvalStats Evaluator::stats() const
{
    return { _impl->nodes, _impl->classes.classes_built() };
}

// ================================================================ fixed point

struct FixedPointEvaluator::impl
{
    struct UntilKey
    {
        const ResolvedNode* node;
        int budget;
        std::size_t start;
        History history;

        friend bool operator==( const UntilKey&, const UntilKey& ) = default;
    };
    struct UntilKeyHash
    {
        std::size_t operator()( const UntilKey& k ) const noexcept
        {
            return hash_combine( SatKeyHash{}( SatKey{ k.node, k.budget, k.history } ), k.start );
        }
    };

    const Model& model;
    std::unordered_map< SatKey, bool, SatKeyHash > sat_memo;
    std::unordered_map< SatKey, bool, SatKeyHash > box_memo;
    std::unordered_map< UntilKey, bool, UntilKeyHash > until_memo;
    std::vector< ResolvedFormula > keep_alive;
    ClassCache classes;
    std::size_t nodes = 0;

    explicit impl( const Model& m ) : model{ m }, classes{ m } {}

    // D_G pred at h.
    bool group_knows( const History& h, Coalition G, const std::function< bool( const History& ) >& pred )
    {
        auto cls = classes.get( h, G );
        return std::all_of( cls->members.begin(), cls->members.end(), pred );
    }

    // <<G>>X pred at h.
    bool one_step( const History& h, Coalition G, const std::function< bool( const History& ) >& pred )
    {
        ++nodes;
        auto cls = classes.get( h, G );
        return any_choice( model, h.last(), G, [ & ]( std::span< const ActionId > c ) {
            for ( const auto& g : cls->members )
            {
                bool ok = true;
                model.for_each_completion( g.last(), G, c, [ & ]( std::span< const ActionId > act ) {
                    if ( ok && !pred( g.extended( act, step( model, g.last(), act ) ) ) )
                        ok = false;
                } );
                if ( !ok )
                    return false;
            }
            return true;
        } );
    }

    bool sat( const History& h, const ResolvedNode& f, int r )
    {
        switch ( f.op )
        {
        case Op::top: return true;
        case Op::bot: return false;
        case Op::prop: return model.holds( f.prop, h.last() );
        case Op::negation: return !sat( h, *f.lhs, r );
        case Op::conjunction: return sat( h, *f.lhs, r ) && sat( h, *f.rhs, r );
        default: break;
        }
        if ( auto it = sat_memo.find( SatKey{ &f, r, h } ); it != sat_memo.end() )
            return it->second;

        bool value = false;
        if ( f.op == Op::next )
        {
            if ( r == 0 )
                insufficient_budget();
            value = one_step( h, f.coalition, [ & ]( const History& s ) { return sat( s, *f.lhs, r - 1 ); } );
        }
        else
        {
            if ( !f.lhs->propositional || ( f.rhs && !f.rhs->propositional ) )
                throw unsupported_query( "fixed-point evaluation needs propositional temporal targets" );
            value = f.op == Op::always ? box( h, f, r ) : until( h, f, r, h.length() );
        }
        sat_memo.emplace( SatKey{ &f, r, h }, value );
        return value;
    }

    bool box( const History& h, const ResolvedNode& f, int r )
    {
        if ( auto it = box_memo.find( SatKey{ &f, r, h } ); it != box_memo.end() )
            return it->second;
        const auto G = f.coalition;
        bool value = group_knows( h, G, [ & ]( const History& g ) { return prop_holds( model, *f.lhs, g.last() ); } );
        if ( value && r > 0 )
            value = one_step( h, G, [ & ]( const History& s ) { return box( s, f, r - 1 ); } );
        box_memo.emplace( SatKey{ &f, r, h }, value );
        return value;
    }

    // The obligation of f, started at stage `start`, was met at some earlier
    // stage of g.
    bool discharged( const History& g, const ResolvedNode& f, std::size_t start )
    {
        for ( std::size_t t = start; t < g.length(); ++t )
        {
            if ( prop_holds( model, *f.rhs, g.state( t ) ) )
                return true;
            if ( !prop_holds( model, *f.lhs, g.state( t ) ) )
                return false;
        }
        return false;
    }

    bool until( const History& h, const ResolvedNode& f, int r, std::size_t start )
    {
        UntilKey key{ &f, r, start, h };
        if ( auto it = until_memo.find( key ); it != until_memo.end() )
            return it->second;
        const auto G = f.coalition;
        auto goal = [ & ]( const History& g ) {
            return discharged( g, f, start ) || prop_holds( model, *f.rhs, g.last() );
        };
        bool value = group_knows( h, G, goal );
        if ( !value && r > 0 &&
             group_knows( h, G, [ & ]( const History& g ) { return goal( g ) || prop_holds( model, *f.lhs, g.last() ); } ) )
            value = one_step( h, G, [ & ]( const History& s ) { return until( s, f, r - 1, start ); } );
        until_memo.emplace( std::move( key ), value );
        return value;
    }
};

FixedPointEvaluator::FixedPointEvaluator( const Model& m ) : _impl{ std::make_unique< impl >( m ) } {}
FixedPointEvaluator::~FixedPointEvaluator() = default;

bool FixedPointEvaluator::holds( const History& at, const ResolvedFormula& f, Horizon h )
{
    check_budget( h.budget );
    require_budget( f.root(), h.budget );
    _impl->keep_alive.push_back( f );
    return _impl->sat( at, f.root(), h.budget );
}

EvalStats FixedPointEvaluator::stats() const
{
    return { _impl->nodes, _impl->classes.classes_built() };
}

// ================================================================ free functions

VerdictReport eval( const Model& m, const History& at, const Formula& f, Horizon h, EvalOptions options )
{
    check_budget( h.budget );
    auto resolved = resolve( f, m );
    Evaluator ev{ m, options };
    VerdictReport report;
    report.verdict = ev.holds( at, resolved, h );
    if ( options.witness && report.verdict && f.is_coalition() )
        report.witness = ev.witness( at, resolved, h );
    if ( options.stable_check )
    {
        Evaluator next{ m, options };
        report.horizon_stable = next.holds( at, resolved, Horizon{ h.budget + 1 } ) == report.verdict;
    }
    report.stats = ev.stats();
    return report;
}

VerdictReport eval_fixedpoint( const Model& m, const History& at, const Formula& f, Horizon h )
{
    check_budget( h.budget );
    auto resolved = resolve( f, m );
    FixedPointEvaluator ev{ m };
    VerdictReport report;
    report.verdict = ev.holds( at, resolved, h );
    report.stats = ev.stats();
    return report;
}

std::optional< StrategyProfile > synthesize_strategy( const Model& m, const History& at, Coalition G,
                                                      const Formula& goal, Horizon h )
{
    auto resolved = resolve( goal, m );
    if ( !goal.is_coalition() || resolved.root().coalition != G )
        throw input_error( "goal must be a single coalition-operator formula for the given coalition" );
    Evaluator ev{ m };
    return ev.witness( at, resolved, h );
}

std::vector< History > outcomes( const Model& m, const History& h, const StrategyProfile& F, int steps )
{
    if ( steps < 0 )
        throw input_error( "steps must be nonnegative" );
    const auto G = F.coalition;
    std::vector< History > frontier{ h };
    for ( int k = 0; k < steps; ++k )
    {
        std::vector< History > next;
        for ( const auto& p : frontier )
        {
            auto cls = equiv_class( m, p, G );
            const auto* acts = F.find( cls.representative() );
            if ( acts == nullptr )
                throw incomplete_strategy( "strategy undefined on the class of " + format_history( m, p ) );
            auto c = expand_choice( m, G, *acts );
            for ( auto a : G.members() )
                if ( !m.is_available( a, p.last(), c[ a.value ] ) )
                    throw illegal_action( "strategy action of " + m.agent_name( a ) + " not available at " +
                                          m.state_name( p.last() ) );
            m.for_each_completion( p.last(), G, c, [ & ]( std::span< const ActionId > act ) {
                next.push_back( p.extended( act, step( m, p.last(), act ) ) );
            } );
        }
        frontier = std::move( next );
    }
    std::sort( frontier.begin(), frontier.end() );
    return frontier;
}

WitnessCheck check_witness( const Model& m, const History& at, const Formula& goal, Horizon h,
                            const StrategyProfile& F )
{
    WitnessCheck result;
    auto resolved = resolve( goal, m );
    const auto& root = resolved.root();
    if ( !goal.is_coalition() || root.coalition != F.coalition )
    {
        result.replays = false;
        result.detail = "goal is not a coalition formula for the strategy's coalition";
        return result;
    }
    const auto G = F.coalition;

    for ( const auto& [ rep, acts ] : F.choice )
    {
        auto cls = equiv_class( m, rep, G );
        if ( !( cls.representative() == rep ) )
        {
            result.canonical = false;
            result.detail = "key " + format_history( m, rep ) + " is not the least member of its class";
        }
        if ( acts.size() != G.size() )
        {
            result.legal = false;
            result.detail = "wrong number of member actions at " + format_history( m, rep );
            continue;
        }
        auto c = expand_choice( m, G, acts );
        for ( const auto& member : cls.members )
            for ( auto a : G.members() )
                if ( !m.is_available( a, member.last(), c[ a.value ] ) )
                {
                    result.legal = false;
                    result.detail = "illegal action for " + m.agent_name( a ) + " at " + format_history( m, member );
                }
    }
    if ( !result.legal || !result.canonical )
        return result;

    // Subformula truth comes from the reference evaluator; the temporal
    // quantification over plays is done here, path by path.
    Evaluator ev{ m };
    auto sub = [ & ]( const ResolvedNode& n, const History& x, int budget ) {
        return ev.holds( x, resolved.at( n ), Horizon{ budget } );
    };
    const int r = h.budget;
    const auto base = at.length();
    try
    {
        for ( const auto& start : equiv_class( m, at, G ).members )
        {
            const int steps = root.op == Op::next ? 1 : r;
            for ( const auto& play : outcomes( m, start, F, steps ) )
            {
                bool ok = false;
                if ( root.op == Op::next )
                    ok = sub( *root.lhs, play, r - 1 );
                else if ( root.op == Op::always )
                {
                    ok = true;
                    for ( int d = 0; d <= r && ok; ++d )
                        ok = sub( *root.lhs, play.prefix( base + d ), r - d );
                }
                else
                {
                    for ( int d = 0; d <= r; ++d )
                    {
                        auto stage = play.prefix( base + d );
                        if ( sub( *root.rhs, stage, r - d ) )
                        {
                            ok = true;
                            break;
                        }
                        if ( !sub( *root.lhs, stage, r - d ) )
                            break;
                    }
                }
                if ( !ok )
                {
                    result.replays = false;
                    result.detail = "play " + format_history( m, play ) + " violates the goal";
                    return result;
                }
            }
        }
    }
    catch ( const incomplete_strategy& e )
    {
        result.replays = false;
        result.detail = e.what();
    }
    return result;
}

std::string format_strategy( const Model& m, const StrategyProfile& F )
{
    std::string out;
    auto members = F.coalition.members();
    for ( const auto& [ rep, acts ] : F.choice )
    {
        out += "[" + format_history( m, rep ) + "] ->";
        for ( std::size_t i = 0; i < members.size(); ++i )
            out += " " + m.agent_name( members[ i ] ) + "=" + m.action_name( acts[ i ] );
        out += "\n";
    }
    return out;
}

} // namespace dkatl
