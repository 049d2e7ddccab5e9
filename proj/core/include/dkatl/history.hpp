#pragma once

#include "dkatl/model.hpp"

#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dkatl
{

// w0 -a1-> w1 -a2-> ... -am-> wm. Joint actions are stored flat, one row of
// agent_count() entries per step.
class History
{
    std::vector< StateId > _states;
    std::vector< ActionId > _moves;
    std::uint32_t _agents = 0;

public:
    History() = default;
    History( StateId start, std::size_t agent_count )
        : _states{ start }, _agents{ static_cast< std::uint32_t >( agent_count ) } {}

    // Number of actions, |h|.
    [[nodiscard]] std::size_t length() const { return _states.size() - 1; }
    [[nodiscard]] std::size_t agent_count() const { return _agents; }

    [[nodiscard]] StateId state( std::size_t k ) const { return _states[ k ]; }
    [[nodiscard]] StateId first() const { return _states.front(); }
    [[nodiscard]] StateId last() const { return _states.back(); }
    [[nodiscard]] const std::vector< StateId >& states() const { return _states; }

    // The joint action taken at stage k, leading from state(k) to state(k + 1).
    [[nodiscard]] std::span< const ActionId > action( std::size_t k ) const
    {
        return std::span< const ActionId >( _moves ).subspan( k * _agents, _agents );
    }

    [[nodiscard]] History prefix( std::size_t len ) const;

    // Appends without consulting a model; callers guarantee consistency.
    [[nodiscard]] History extended( std::span< const ActionId > action, StateId next ) const;
    void push( std::span< const ActionId > action, StateId next );

    [[nodiscard]] std::size_t hash() const;

    friend auto operator<=>( const History&, const History& ) = default;
    friend bool operator==( const History&, const History& ) = default;
};

struct HistoryHash
{
    std::size_t operator()( const History& h ) const noexcept { return h.hash(); }
};

// An equivalence class of ≈_G over histories of one length, sorted ascending.
struct InfoClass
{
    Coalition coalition;
    std::vector< History > members;

    [[nodiscard]] const History& representative() const { return members.front(); }
    [[nodiscard]] bool contains( const History& h ) const;
};

// Checked append; throws illegal_action when action is not in D(last(h)).
[[nodiscard]] History extend( const Model& m, const History& h, const JointAction& action );

// Equal length, stage-wise R_i-related states, equal own action components.
[[nodiscard]] bool equiv_agent( const Model& m, const History& h, const History& g, AgentId i );

// Intersection of equiv_agent over the members of G.
[[nodiscard]] bool equiv_coalition( const Model& m, const History& h, const History& g, Coalition G );

// All histories of length |h| (from any start state) that are ≈_G-equivalent
// to h, computed by a synchronized forward walk.
[[nodiscard]] InfoClass equiv_class( const Model& m, const History& h, Coalition G );

// Every history of exactly / at most `length` steps, from every state, in
// ascending order.
[[nodiscard]] std::vector< History > histories_of_length( const Model& m, std::size_t length );
[[nodiscard]] std::vector< History > histories_up_to( const Model& m, std::size_t length );

// Textual syntax: `q0 -(L,n,l)-> q1 -(n,n,l)-> q2`.
[[nodiscard]] History parse_history( const Model& m, std::string_view text );
[[nodiscard]] std::string format_history( const Model& m, const History& h );

// Memo of equiv_class results keyed by (history, coalition); every member of
// a computed class is registered so later lookups from any member hit.
// Safe for concurrent use.
class ClassCache
{
public:
    explicit ClassCache( const Model& m ) : _model{ &m } {}

    [[nodiscard]] std::shared_ptr< const InfoClass > get( const History& h, Coalition G );
    [[nodiscard]] std::size_t classes_built() const;

private:
    struct Key
    {
        History history;
        Coalition coalition;
        friend bool operator==( const Key&, const Key& ) = default;
    };
    struct KeyHash
    {
        std::size_t operator()( const Key& k ) const noexcept
        {
            return hash_combine( k.history.hash(), std::hash< std::uint64_t >{}( k.coalition.bits() ) );
        }
    };

    const Model* _model;
    mutable std::mutex _mutex;
    std::unordered_map< Key, std::shared_ptr< const InfoClass >, KeyHash > _classes;
    std::size_t _built = 0;
};

} // namespace dkatl
