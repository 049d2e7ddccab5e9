#pragma once

#include "dkatl/formula.hpp"
#include "dkatl/history.hpp"
#include "dkatl/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dkatl
{

struct GenParams
{
    std::size_t agents = 2;
    std::size_t states = 4;
    std::size_t max_actions = 2;
    std::size_t props = 2;
    // Probability that a state joins an earlier state's block, per agent.
    double density = 0.3;
    std::uint64_t seed = 0;

    friend bool operator==( const GenParams&, const GenParams& ) = default;
};

// Agents ag0.., states s0.., actions a0.., propositions p0... Partitions are
// drawn first and menus assigned per block, so the result always validates.
[[nodiscard]] Model random_model( const GenParams& p );

// Sizes for trial `trial` of a campaign: 1..3 agents (at least min_agents),
// 2..6 states, at most 3 actions (2 with three agents), 3 propositions.
[[nodiscard]] GenParams trial_params( std::uint64_t campaign_seed, std::size_t trial, std::size_t min_agents = 1 );

// Every history of length at most 2 from every state.
[[nodiscard]] std::vector< History > evaluation_points( const Model& m );

// Propositional formula of depth at most `depth` over the model's propositions.
[[nodiscard]] Formula random_propositional( const Model& m, std::mt19937_64& rng, int depth = 2 );

enum class Polarity
{
    valid,
    falsifiable,
};

// Which coalition metavariables a schema binds and how they relate.
enum class CoalitionShape
{
    any,      // G
    nested,   // G1 ⊆ G2
    disjoint, // G1 ∩ G2 = ∅
    proper,   // G ≠ N, so N \ G is a coalition
    agent,    // G = {i}
};

enum class Connective
{
    implies,
    iff,
};

struct Binding
{
    Formula phi = Formula::top();
    Formula psi = Formula::top();
    std::vector< std::string > G, G1, G2, N;
    int horizon = 0;

    [[nodiscard]] std::vector< std::string > complement() const;
    [[nodiscard]] std::vector< std::string > merged() const; // G1 ∪ G2
    [[nodiscard]] std::string describe() const;
};

struct Schema
{
    std::string name;
    std::string pattern;
    Polarity polarity = Polarity::valid;
    CoalitionShape shape = CoalitionShape::any;
    Connective connective = Connective::implies;
    int min_horizon = 0;
    bool uses_psi = false;
    std::function< std::pair< Formula, Formula >( const Binding& ) > sides;

    [[nodiscard]] std::size_t min_agents() const;
};

[[nodiscard]] const std::vector< Schema >& schema_corpus();
// Throws input_error for an unknown name.
[[nodiscard]] const Schema& find_schema( std::string_view name );

// Where a counterexample's model comes from: a built-in by name or a
// generated model by its parameters.
struct ModelSource
{
    std::string builtin;
    std::optional< GenParams > params;

    [[nodiscard]] Model load() const;
    [[nodiscard]] std::string describe() const;
};

struct Counterexample
{
    std::string schema;
    ModelSource source;
    std::string history;
    std::string binding;
    std::string lhs, rhs;
    Connective connective = Connective::implies;
    int horizon = 0;
    bool lhs_verdict = false;
    bool rhs_verdict = false;
    // How the rhs was evaluated: empty for the reference evaluator, or one of
    // "fixedpoint", "direct-epistemic", "witness" for cross-checks.
    std::string rhs_mode;
};

struct CampaignReport
{
    std::string name;
    Polarity polarity = Polarity::valid;
    std::size_t trials = 0;
    std::size_t checks = 0; // point/instance evaluations performed
    std::vector< Counterexample > counterexamples;
    double wall_seconds = 0;

    // Valid: no counterexample; falsifiable: at least one.
    [[nodiscard]] bool passed() const;
};

struct CampaignOptions
{
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    // Built-in counter-models evaluated before the random corpus.
    std::vector< std::string > builtins = { "M3", "M4" };
    // Stop recording random-model counterexamples after this many.
    std::size_t random_counterexample_cap = 8;
};

[[nodiscard]] CampaignReport check_schema( const Schema& s, const CampaignOptions& options );

// Re-evaluates both sides and reports whether the recorded verdicts and the
// failure reproduce.
[[nodiscard]] bool replay( const Counterexample& c );

// AND-OR evaluator against the fixed-point evaluator on always/eventually/
// until queries with propositional targets, H ∈ {0..3}; every disagreement is
// a counterexample.
[[nodiscard]] CampaignReport oracle_crosscheck( const CampaignOptions& options );

// K/D through their until abbreviations against the direct class check.
[[nodiscard]] CampaignReport epistemic_crosscheck( const CampaignOptions& options );

// Synthesizes witnesses for true coalition formulas and validates each one.
[[nodiscard]] CampaignReport witness_crosscheck( const CampaignOptions& options );

// Built-in regression checks; each failing check is a counterexample whose
// lhs is the formula and whose rhs verdict is the expected one.
[[nodiscard]] CampaignReport builtin_regression();

struct SuiteOptions
{
    std::uint64_t seed = 1;
    std::size_t valid_trials = 200;
    std::size_t falsify_trials = 500;
    std::size_t oracle_trials = 300;
    std::size_t epistemic_trials = 60;
    std::size_t witness_trials = 60;
    // Called after each campaign finishes.
    std::function< void( const CampaignReport& ) > progress;
};

[[nodiscard]] std::vector< CampaignReport > run_suite( const SuiteOptions& options );

[[nodiscard]] std::string_view to_string( Polarity p );
[[nodiscard]] std::string_view to_string( Connective c );

} // namespace dkatl
