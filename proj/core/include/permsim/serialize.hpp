#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "permsim/decomposition.hpp"
#include "permsim/matching.hpp"
#include "permsim/permutation.hpp"
#include "permsim/pipeline.hpp"

namespace permsim {

/// Space-separated values, one permutation per line.
std::string permutations_to_text(const std::vector<Permutation>& perms);
/// Blank lines are skipped. Throws std::invalid_argument on malformed input.
std::vector<Permutation> permutations_from_text(std::istream& in);

/// JSON array of arrays.
std::string permutations_to_json(const std::vector<Permutation>& perms);
std::vector<Permutation> permutations_from_json(const std::string& text);

/// {"n":..,"k":..,"parts":[[[..],..],..]} with 1-indexed positions.
std::string decomposition_to_json(const Decomposition& d, int indent = -1);
Decomposition decomposition_from_json(const std::string& text);

/// {"n","k","M","bottleneck":[..],"label_count","max_label_degree",
///  "part_count","wall_time_ms","seed"}
std::string run_record_to_json(const RunRecord& r, int indent = -1);

/// {"pairs":[[red,blue],..],"bottleneck":..} with 1-indexed points.
std::string matching_to_json(const BottleneckMatching& m);

}  // namespace permsim
