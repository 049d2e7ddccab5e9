#pragma once

#include "dkatl/errors.hpp"
#include "dkatl/ids.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dkatl
{

// One action per agent, indexed by AgentId.
class JointAction
{
    std::vector< ActionId > _choices;

public:
    JointAction() = default;
    explicit JointAction( std::vector< ActionId > choices ) : _choices{ std::move( choices ) } {}
    JointAction( std::span< const ActionId > choices ) : _choices( choices.begin(), choices.end() ) {}

    [[nodiscard]] std::size_t size() const { return _choices.size(); }
    [[nodiscard]] ActionId operator[]( AgentId a ) const { return _choices[ a.value ]; }
    [[nodiscard]] ActionId& operator[]( AgentId a ) { return _choices[ a.value ]; }
    [[nodiscard]] std::span< const ActionId > span() const { return _choices; }
    [[nodiscard]] auto begin() const { return _choices.begin(); }
    [[nodiscard]] auto end() const { return _choices.end(); }

    friend auto operator<=>( const JointAction&, const JointAction& ) = default;
    friend bool operator==( const JointAction&, const JointAction& ) = default;
};

struct Violation
{
    enum class Kind
    {
        empty_menu,
        transition_missing,
        transition_outside_menu,
        action_knowledge_coherence,
    };

    Kind kind;
    std::string message;
};

struct ValidationResult
{
    std::vector< Violation > violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

// An imperfect-information concurrent game structure. Immutable once built;
// may be structurally complete yet violate the semantic invariants checked by
// validate_model (missing transitions, incoherent menus).
class Model
{
public:
    class Builder;

    static constexpr std::uint32_t no_state = UINT32_MAX;

    struct StrayTransition
    {
        StateId from;
        JointAction action;
        StateId to;
    };

    [[nodiscard]] std::size_t agent_count() const { return _agents.size(); }
    [[nodiscard]] std::size_t state_count() const { return _states.size(); }
    [[nodiscard]] std::size_t action_count() const { return _actions.size(); }
    [[nodiscard]] std::size_t prop_count() const { return _props.size(); }

    [[nodiscard]] const std::string& agent_name( AgentId a ) const { return _agents.at( a.value ); }
    [[nodiscard]] const std::string& state_name( StateId s ) const { return _states.at( s.value ); }
    [[nodiscard]] const std::string& action_name( ActionId a ) const { return _actions.at( a.value ); }
    [[nodiscard]] const std::string& prop_name( PropId p ) const { return _props.at( p.value ); }

    [[nodiscard]] const std::vector< std::string >& agent_names() const { return _agents; }
    [[nodiscard]] const std::vector< std::string >& state_names() const { return _states; }
    [[nodiscard]] const std::vector< std::string >& action_names() const { return _actions; }
    [[nodiscard]] const std::vector< std::string >& prop_names() const { return _props; }

    [[nodiscard]] std::optional< AgentId > find_agent( std::string_view name ) const;
    [[nodiscard]] std::optional< StateId > find_state( std::string_view name ) const;
    [[nodiscard]] std::optional< ActionId > find_action( std::string_view name ) const;
    [[nodiscard]] std::optional< PropId > find_prop( std::string_view name ) const;

    [[nodiscard]] Coalition all_agents() const { return Coalition::all( agent_count() ); }

    // d_i(w), sorted by ActionId.
    [[nodiscard]] const std::vector< ActionId >& available( AgentId a, StateId s ) const
    {
        return _menus[ a.value ][ s.value ];
    }

    [[nodiscard]] bool is_available( AgentId a, StateId s, ActionId act ) const;

    [[nodiscard]] bool holds( PropId p, StateId s ) const { return _valuation[ p.value ][ s.value ] != 0; }

    // Block id of s in agent a's indistinguishability partition. Block ids
    // are numbered by first appearance in state order.
    [[nodiscard]] std::uint32_t block( AgentId a, StateId s ) const { return _blocks[ a.value ][ s.value ]; }

    [[nodiscard]] bool related( AgentId a, StateId s, StateId t ) const
    {
        return _blocks[ a.value ][ s.value ] == _blocks[ a.value ][ t.value ];
    }

    // Intersection of the members' relations.
    [[nodiscard]] bool related( Coalition g, StateId s, StateId t ) const;

    // Legal joint action check against D(s).
    [[nodiscard]] bool is_legal( StateId s, std::span< const ActionId > action ) const;

    // delta(s, action) or nullopt when the pair is outside D(s) or the table has a hole.
    [[nodiscard]] std::optional< StateId > transition( StateId s, std::span< const ActionId > action ) const;

    [[nodiscard]] const std::vector< StrayTransition >& stray_transitions() const { return _strays; }

    // Enumerates D(s) in lexicographic order of (agent 0 action, agent 1 action, ...).
    void for_each_joint_action( StateId s, const std::function< void( std::span< const ActionId > ) >& fn ) const;

    // Enumerates the members of D(s) whose components for agents in `fixed`
    // equal those of `partial` (other components of `partial` are ignored).
    void for_each_completion( StateId s, Coalition fixed, std::span< const ActionId > partial,
                              const std::function< void( std::span< const ActionId > ) >& fn ) const;

    friend bool operator==( const Model&, const Model& );

private:
    std::vector< std::string > _agents;
    std::vector< std::string > _states;
    std::vector< std::string > _actions;
    std::vector< std::string > _props;
    std::vector< std::vector< char > > _valuation;                     // [prop][state]
    std::vector< std::vector< std::vector< ActionId > > > _menus;       // [agent][state]
    std::vector< std::vector< std::uint32_t > > _blocks;               // [agent][state]
    std::vector< std::vector< std::uint32_t > > _table;                // [state][mixed-radix index]
    std::vector< StrayTransition > _strays;

    [[nodiscard]] std::optional< std::size_t > table_index( StateId s, std::span< const ActionId > action ) const;
};

class Model::Builder
{
public:
    Builder& agents( std::vector< std::string > names );
    Builder& states( std::vector< std::string > names );
    Builder& actions( std::vector< std::string > names );
    Builder& propositions( std::vector< std::string > names );

    Builder& menu( AgentId a, StateId s, std::vector< ActionId > acts );
    Builder& label( PropId p, StateId s );
    Builder& transition( StateId from, JointAction action, StateId to );
    // Declares the given states mutually indistinguishable for agent a;
    // overlapping groups are merged.
    Builder& indistinguishable( AgentId a, const std::vector< StateId >& group );

    // Name-based conveniences; throw name_error on unknown names.
    Builder& menu( std::string_view agent, std::string_view state, const std::vector< std::string >& acts );
    Builder& label( std::string_view prop, std::string_view state );
    Builder& transition( std::string_view from, const std::vector< std::string >& action, std::string_view to );
    Builder& indistinguishable( std::string_view agent, const std::vector< std::string >& group );

    // Throws input_error on structural problems (duplicate names, ids out of
    // range, wrong joint-action arity). Semantic invariants are left to
    // validate_model.
    [[nodiscard]] Model build() const;

private:
    struct PendingTransition
    {
        StateId from;
        JointAction action;
        StateId to;
    };

    std::vector< std::string > _agents, _states, _actions, _props;
    std::vector< std::pair< AgentId, StateId > > _menu_keys;
    std::vector< std::vector< ActionId > > _menu_values;
    std::vector< std::pair< PropId, StateId > > _labels;
    std::vector< PendingTransition > _transitions;
    std::vector< std::pair< AgentId, std::vector< StateId > > > _groups;

    [[nodiscard]] std::uint32_t lookup( const std::vector< std::string >& table, std::string_view name,
                                        const char* what ) const;
};

[[nodiscard]] ValidationResult validate_model( const Model& m );

// D(w) as the Cartesian product of the agents' menus.
[[nodiscard]] std::vector< JointAction > joint_actions( const Model& m, StateId w );

// delta(w, action); throws illegal_action when action is not in D(w) and
// input_error when the table has no entry.
[[nodiscard]] StateId successor( const Model& m, StateId w, const JointAction& action );

[[nodiscard]] std::vector< std::string > props_at( const Model& m, StateId w );

// "(L,n,l)" in the model's agent order.
[[nodiscard]] std::string format_joint_action( const Model& m, std::span< const ActionId > action );

} // namespace dkatl
