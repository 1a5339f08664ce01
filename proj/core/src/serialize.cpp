#include "permsim/serialize.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace permsim {

using nlohmann::json;

std::string permutations_to_text(const std::vector<Permutation>& perms) {
  std::string out;
  for (const auto& p : perms) out += p.to_string() + '\n';
  return out;
}

std::vector<Permutation> permutations_from_text(std::istream& in) {
  std::vector<Permutation> perms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::vector<int> values;
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(token, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used != token.size())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": '" + token +
                                    "' is not an integer");
      values.push_back(v);
    }
    if (values.empty()) continue;
    try {
      perms.emplace_back(std::move(values));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (perms.empty()) throw std::invalid_argument("no permutations in input");
  return perms;
}

std::string permutations_to_json(const std::vector<Permutation>& perms) {
  json arr = json::array();
  for (const auto& p : perms) arr.push_back(std::vector<int>(p.values().begin(), p.values().end()));
  return arr.dump();
}

std::vector<Permutation> permutations_from_json(const std::string& text) {
  try {
    const json arr = json::parse(text);
    if (!arr.is_array() || arr.empty()) throw std::invalid_argument("expected a non-empty JSON array");
    std::vector<Permutation> perms;
    for (const auto& p : arr) perms.emplace_back(p.get<std::vector<int>>());
    return perms;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("permutation JSON: ") + e.what());
  }
}

std::string decomposition_to_json(const Decomposition& d, int indent) {
  json parts = json::array();
  for (const auto& p : d.parts) parts.push_back(p.index_lists);
  return json{{"n", d.n}, {"k", d.k}, {"parts", std::move(parts)}}.dump(indent);
}

Decomposition decomposition_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Decomposition d;
    d.n = j.at("n").get<std::size_t>();
    d.k = j.at("k").get<std::size_t>();
    for (const auto& part : j.at("parts"))
      d.parts.push_back(Part{part.get<std::vector<std::vector<std::size_t>>>()});
    return d;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("decomposition JSON: ") + e.what());
  }
}

std::string run_record_to_json(const RunRecord& r, int indent) {
  return json{{"n", r.n},
              {"k", r.k},
              {"M", r.M},
              {"bottleneck", r.bottlenecks},
              {"label_count", r.label_count},
              {"max_label_degree", r.max_label_degree},
              {"part_count", r.part_count},
              {"wall_time_ms", r.wall_time_ms},
              {"seed", r.seed}}
      .dump(indent);
}

std::string matching_to_json(const BottleneckMatching& m) {
  json pairs = json::array();
  for (const auto& [r, b] : m.pairs) pairs.push_back({r + 1, b + 1});
  return json{{"pairs", std::move(pairs)}, {"bottleneck", m.bottleneck}}.dump();
}

}  // namespace permsim
