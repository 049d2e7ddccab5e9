#pragma once

#include "dkatl/harness.hpp"
#include "dkatl/model.hpp"
#include "dkatl/semantics.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dkatl::cli
{

inline constexpr const char* format_tag = "dkatl-report/1";

nlohmann::ordered_json to_json( const Counterexample& c );
// Wall time is left out so that reports of identical runs are identical.
nlohmann::ordered_json to_json( const CampaignReport& r );
nlohmann::ordered_json to_json( const Model& m, const StrategyProfile& F );

std::string to_text( const CampaignReport& r, std::size_t max_counterexamples = 5 );

} // namespace dkatl::cli
