#include "tspfg/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tspfg {

using nlohmann::json;

Instance parse_instance(const std::string& json_text) {
  json j = json::parse(json_text);
  const std::string type = j.at("type").get<std::string>();
  if (type == "points") {
    OrderedPointSet pts;
    for (const auto& c : j.at("coords"))
      pts.points.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    pts.validate();
    return pts;
  }
  if (type == "graph") {
    const int n = j.at("n").get<int>();
    SymmetricWeightedGraph g(n);
    const auto& w = j.at("weights");
    size_t expected = static_cast<size_t>(n) * (n - 1) / 2;
    if (w.size() != expected) throw std::invalid_argument("bad weight count");
    size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) g.set_weight(i, k, w.at(idx++).get<std::int64_t>());
    return g;
  }
  throw std::invalid_argument("unknown instance type: " + type);
}

std::string serialize_instance(const Instance& inst, bool pretty) {
  json j;
  if (const auto* pts = std::get_if<OrderedPointSet>(&inst)) {
    j["type"] = "points";
    j["order_is_given"] = true;
    auto coords = json::array();
    for (const auto& p : pts->points) coords.push_back(json::array({p.x, p.y}));
    j["coords"] = std::move(coords);
  } else {
    const auto& g = std::get<SymmetricWeightedGraph>(inst);
    j["type"] = "graph";
    j["n"] = g.n();
    auto w = json::array();
    for (int i = 0; i < g.n(); ++i)
      for (int k = i + 1; k < g.n(); ++k) w.push_back(g.weight(i, k));
    j["weights"] = std::move(w);
  }
  return pretty ? j.dump(2) : j.dump();
}

Tour parse_tour(const std::string& json_text) {
  json j = json::parse(json_text);
  Tour t;
  for (const auto& v : j.at("order")) t.order.push_back(v.get<int>());
  t.validate();
  return t;
}

std::string serialize_tour(const Tour& t, bool pretty) {
  json j;
  j["order"] = t.order;
  return pretty ? j.dump(2) : j.dump();
}

static std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) { return parse_instance(slurp(path)); }
Tour load_tour(const std::string& path) { return parse_tour(slurp(path)); }

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace tspfg
