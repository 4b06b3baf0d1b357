#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "tspfg/instance.hpp"

namespace tspfg {

using Instance = std::variant<OrderedPointSet, SymmetricWeightedGraph>;

// {"type":"points","order_is_given":true,"coords":[[x,y],...]}
// {"type":"graph","n":N,"weights":[row-major upper triangle]}
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& inst, bool pretty = false);

// {"order":[i0,...]}
Tour parse_tour(const std::string& json_text);
std::string serialize_tour(const Tour& t, bool pretty = false);

Instance load_instance(const std::string& path);
Tour load_tour(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace tspfg
