#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "packsolve/geometry.hpp"

namespace packsolve {

struct ItemType {
  std::string id;
  Dims base;
  int quantity = 0;
  std::vector<int> allowed_orientations;  // sorted, non-empty subset of 0..5

  bool orientation_allowed(int o) const;
};

struct SeparationGroups {
  std::set<std::string> group_a;
  std::set<std::string> group_b;
};

// One packing problem: a single container geometry, demanded item types, and
// an optional pair of incompatible type groups.
struct Instance {
  std::string name;
  Dims container;
  std::vector<ItemType> item_types;
  std::optional<SeparationGroups> separation;

  const ItemType* find_type(const std::string& id) const;
  int type_index(const std::string& id) const;  // -1 if unknown
  int total_units() const;
  double total_item_volume() const;

  // Throws ValidationError if any model invariant is broken.
  void validate() const;
};

struct Placement {
  int container_index = 0;
  std::string item_type_id;
  Position pos;
  int orientation = 0;
};

struct Solution {
  std::string instance_name;
  std::vector<Placement> placements;
  int containers_used = 0;
};

struct DatasetSplit {
  std::vector<Instance> train;
  std::vector<Instance> test;
};

inline constexpr int kTrainInstanceCount = 20;

// --- canonical file formats (JSON documents, schema in README) -------------

Instance parse_instance(const std::string& text, const std::string& name_hint = "");
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_text(const Instance& inst);
void write_instance(const Instance& inst, const std::filesystem::path& path);

Solution parse_solution(const std::string& text);
Solution read_solution(const std::filesystem::path& path);
std::string solution_to_text(const Solution& sol);
void write_solution(const Solution& sol, const std::filesystem::path& path);

// Loads every *.json instance in a directory, sorted by filename.
std::vector<Instance> load_instance_dir(const std::filesystem::path& dir);

// First 20 instances become the training set, the rest the test set.
// Throws ValidationError when fewer than 21 instances are supplied.
DatasetSplit split_dataset(std::vector<Instance> instances);

// --- synthetic instances for desk-scale oracles ----------------------------

enum class SynthProfile { tiny, small, medium };

SynthProfile synth_profile_from_name(const std::string& name);
std::string to_string(SynthProfile profile);

// Pure function of (seed, profile). The tiny profile keeps total item volume
// within 3 container volumes and at most 6 units so exhaustive oracles finish
// quickly; small/medium follow the benchmark data ranges.
Instance synth_instance(uint64_t seed, SynthProfile profile);

}  // namespace packsolve
