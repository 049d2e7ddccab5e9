#pragma once

#include "dkatl/ids.hpp"
#include "dkatl/model.hpp"

#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dkatl
{

enum class Op
{
    top,
    bot,
    prop,
    negation,
    conjunction,
    next,   // <<G>> X phi
    always, // <<G>> G phi
    until,  // <<G>> phi U psi
};

// Core formula over names. Immutable and freely shareable; coalitions are
// kept sorted and deduplicated so equality is syntactic.
class Formula
{
    struct Node
    {
        Op op;
        std::string name;
        std::vector< std::string > coalition;
        std::shared_ptr< const Node > lhs, rhs;
    };

    std::shared_ptr< const Node > _node;

    explicit Formula( std::shared_ptr< const Node > n ) : _node{ std::move( n ) } {}

public:
    static Formula top();
    static Formula bot();
    static Formula prop( std::string name );
    static Formula negation( Formula f );
    static Formula conjunction( Formula l, Formula r );
    // Throws input_error on an empty coalition.
    static Formula next( std::vector< std::string > coalition, Formula f );
    static Formula always( std::vector< std::string > coalition, Formula f );
    static Formula until( std::vector< std::string > coalition, Formula l, Formula r );

    [[nodiscard]] Op op() const { return _node->op; }
    [[nodiscard]] const std::string& name() const { return _node->name; }
    [[nodiscard]] const std::vector< std::string >& coalition() const { return _node->coalition; }
    [[nodiscard]] Formula lhs() const { return Formula{ _node->lhs }; }
    [[nodiscard]] Formula rhs() const { return Formula{ _node->rhs }; }

    [[nodiscard]] bool is_coalition() const { return op() == Op::next || op() == Op::always || op() == Op::until; }
    // No coalition operators anywhere below.
    [[nodiscard]] bool propositional() const;

    friend bool operator==( const Formula& a, const Formula& b );
};

// Convenience constructors; derived connectives expand to core forms.
namespace ast
{

using Agents = std::vector< std::string >;

Formula top();
Formula bot();
Formula prop( std::string name );
Formula neg( Formula f );
Formula conj( Formula l, Formula r );
Formula disj( Formula l, Formula r );     // ~(~l & ~r)
Formula implies( Formula l, Formula r );  // ~(l & ~r)
Formula iff( Formula l, Formula r );      // (l -> r) & (r -> l)
Formula next( Agents g, Formula f );
Formula always( Agents g, Formula f );
Formula eventually( Agents g, Formula f ); // <<G>> true U f
Formula until( Agents g, Formula l, Formula r );
Formula know( std::string agent, Formula f );  // <<i>> f U f
Formula dist( Agents g, Formula f );           // <<G>> f U f
Formula know_dual( std::string agent, Formula f );
Formula dist_dual( Agents g, Formula f );

} // namespace ast

// Surface syntax tree as written, before abbreviations are expanded.
enum class SugarOp
{
    top,
    bot,
    prop,
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    next,
    always,
    eventually,
    until,
    know,
    dist_know,
    know_dual,
    dist_know_dual,
};

struct SugarForm
{
    SugarOp op = SugarOp::top;
    std::string name;
    std::vector< std::string > coalition;
    std::vector< SugarForm > children;
};

[[nodiscard]] Formula desugar( const SugarForm& s );
// Embeds a core formula back into the surface tree (identity on structure).
[[nodiscard]] SugarForm lift( const Formula& f );

[[nodiscard]] SugarForm parse_sugar( std::string_view text );
// parse_sugar followed by desugar. Throws parse_error with a column.
[[nodiscard]] Formula parse( std::string_view text );
// Emits text that parse() maps back to an equal formula.
[[nodiscard]] std::string print( const Formula& f );

// ---------------------------------------------------------------- resolution

// A formula node with names bound to model ids. Structurally equal
// subformulas share one node, so node identity can key memo tables.
struct ResolvedNode
{
    Op op;
    PropId prop;
    Coalition coalition;
    const ResolvedNode* lhs = nullptr;
    const ResolvedNode* rhs = nullptr;
    std::uint32_t id = 0;
    int temporal_depth = 0;
    bool propositional = true;

    // <<G>> f U f, the distributed-knowledge abbreviation.
    [[nodiscard]] bool is_dist_knowledge() const { return op == Op::until && lhs == rhs; }
};

class ResolvedFormula
{
    std::shared_ptr< const std::deque< ResolvedNode > > _arena;
    const ResolvedNode* _root = nullptr;

public:
    ResolvedFormula( std::shared_ptr< const std::deque< ResolvedNode > > arena, const ResolvedNode* root )
        : _arena{ std::move( arena ) }, _root{ root } {}

    [[nodiscard]] const ResolvedNode& root() const { return *_root; }
    // The subformula rooted at n, which must belong to this formula.
    [[nodiscard]] ResolvedFormula at( const ResolvedNode& n ) const { return { _arena, &n }; }
    [[nodiscard]] int temporal_depth() const { return _root->temporal_depth; }
    [[nodiscard]] std::size_t node_count() const { return _arena->size(); }
};

// Binds agent and proposition names; throws name_error on unknown names.
[[nodiscard]] ResolvedFormula resolve( const Formula& f, const Model& m );

} // namespace dkatl
