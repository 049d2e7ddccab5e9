#pragma once

// Test-only reference semantics. Everything here is computed from the
// definitions by exhaustive enumeration: classes by comparing against every
// history of the same length, strategies by trying every uniform choice for
// every class a play reaches. Exponential; meant for models of a few states.

#include "dkatl/formula.hpp"
#include "dkatl/history.hpp"
#include "dkatl/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace dkatl::oracle
{

// Every history with exactly `length` steps, all starts, all legal actions.
std::vector< History > all_histories( const Model& m, std::size_t length );

bool same_view( const Model& m, const History& h, const History& g, Coalition G );

// Sorted members of h's class, found by scanning all_histories.
std::vector< History > brute_class( const Model& m, const History& h, Coalition G );

// Every joint action of D(s), product of the agents' menus.
std::vector< std::vector< ActionId > > joint_menu( const Model& m, StateId s );

class BruteForce
{
public:
    explicit BruteForce( const Model& m ) : _m{ m } {}

    // Bounded satisfaction at budget r. Throws unsupported_query for a next
    // operator at budget 0, like the real evaluator.
    bool holds( const History& h, const Formula& f, int r );

    // Number of complete strategy assignments tried so far.
    std::size_t strategies_tried() const { return _tried; }

private:
    using Strategy = std::map< History, std::vector< ActionId > >;

    struct Walk
    {
        bool ok = true;
        std::optional< History > need; // an unassigned class blocks the walk
    };

    const Model& _m;
    std::map< std::tuple< History, std::string, int >, bool > _memo;
    std::map< std::pair< History, std::uint64_t >, History > _reps;
    std::size_t _tried = 0;

    Coalition coalition_of( const Formula& f ) const;
    const History& rep( const History& h, Coalition G );
    bool coalition_holds( const History& h, const Formula& f, int r );
    bool search( const std::vector< History >& start, const Formula& f, Coalition G, int r, Strategy& F );
    Walk walk( const History& h, int d, const Formula& f, Coalition G, int r, const Strategy& F );
};

} // namespace dkatl::oracle
