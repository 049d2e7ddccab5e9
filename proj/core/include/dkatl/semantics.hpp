#pragma once

#include "dkatl/formula.hpp"
#include "dkatl/history.hpp"
#include "dkatl/model.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dkatl
{

// Transition budget for temporal exploration. Next consumes one unit; each
// stage of an always/until obligation consumes one unit. A query that could
// evaluate a next operator with no budget left (for instance one nested under
// an always target) throws unsupported_query before any search starts.
struct Horizon
{
    int budget = 0;

    constexpr explicit Horizon( int b ) : budget{ b } {}
};

// A joint uniform strategy for a coalition, keyed by the canonical (least)
// member of each ≈_G class it is defined on. Values hold one action per
// coalition member, in increasing agent order.
struct StrategyProfile
{
    Coalition coalition;
    std::map< History, std::vector< ActionId > > choice;

    // The choice for the class of h, or nullptr. `rep` must be canonical.
    [[nodiscard]] const std::vector< ActionId >* find( const History& rep ) const
    {
        auto it = choice.find( rep );
        return it == choice.end() ? nullptr : &it->second;
    }
};

struct EvalStats
{
    std::size_t nodes_explored = 0;
    std::size_t classes_built = 0;
};

struct VerdictReport
{
    bool verdict = false;
    std::optional< StrategyProfile > witness;
    std::optional< bool > horizon_stable;
    EvalStats stats;
};

struct EvalOptions
{
    bool witness = false;
    bool stable_check = false;
    // Evaluate <<G>> f U f by quantifying over the ≈_G class directly instead
    // of through the until search.
    bool direct_epistemic = false;
};

// Bounded satisfaction by AND-OR search over the coalition's knowledge tree.
// One instance may answer many queries on one model and reuses its memo
// tables between them; not thread-safe.
class Evaluator
{
public:
    explicit Evaluator( const Model& m, EvalOptions options = {} );
    ~Evaluator();
    Evaluator( const Evaluator& ) = delete;
    Evaluator& operator=( const Evaluator& ) = delete;

    [[nodiscard]] bool holds( const History& at, const ResolvedFormula& f, Horizon h );

    // Witness for a true coalition-operator formula, nullopt when false.
    [[nodiscard]] std::optional< StrategyProfile > witness( const History& at, const ResolvedFormula& f, Horizon h );

    [[nodiscard]] EvalStats stats() const;

private:
    struct impl;
    std::unique_ptr< impl > _impl;
};

// Bounded satisfaction through the fixed-point recurrences: always unfolds as
// D_G phi & <<G>>X(always at budget - 1), until as
// D_G(done | psi) | (D_G(done | psi | phi) & <<G>>X(until at budget - 1)), where
// `done` marks histories whose obligation was discharged at an earlier stage.
// Temporal targets of always/until must be propositional.
class FixedPointEvaluator
{
public:
    explicit FixedPointEvaluator( const Model& m );
    ~FixedPointEvaluator();
    FixedPointEvaluator( const FixedPointEvaluator& ) = delete;
    FixedPointEvaluator& operator=( const FixedPointEvaluator& ) = delete;

    [[nodiscard]] bool holds( const History& at, const ResolvedFormula& f, Horizon h );
    [[nodiscard]] EvalStats stats() const;

private:
    struct impl;
    std::unique_ptr< impl > _impl;
};

[[nodiscard]] VerdictReport eval( const Model& m, const History& at, const Formula& f, Horizon h,
                                  EvalOptions options = {} );

[[nodiscard]] VerdictReport eval_fixedpoint( const Model& m, const History& at, const Formula& f, Horizon h );

// Requires `goal` to be a next/always/until formula for coalition G.
[[nodiscard]] std::optional< StrategyProfile > synthesize_strategy( const Model& m, const History& at, Coalition G,
                                                                    const Formula& goal, Horizon h );

// All extensions of h by exactly `steps` transitions where coalition members
// follow F and everyone else plays any legal action. Throws
// incomplete_strategy when F has no entry for a reached class.
[[nodiscard]] std::vector< History > outcomes( const Model& m, const History& h, const StrategyProfile& F,
                                               int steps );

struct WitnessCheck
{
    bool legal = true;
    bool canonical = true;
    bool replays = true;
    std::string detail;

    [[nodiscard]] bool ok() const { return legal && canonical && replays; }
};

// Structural legality and canonical class keys of F, then a play-by-play
// replay of the goal's truth condition over outcomes of F from every history
// in the class of `at`.
[[nodiscard]] WitnessCheck check_witness( const Model& m, const History& at, const Formula& goal, Horizon h,
                                          const StrategyProfile& F );

[[nodiscard]] std::string format_strategy( const Model& m, const StrategyProfile& F );

} // namespace dkatl
