#include "packsolve/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "packsolve/errors.hpp"
#include "packsolve/rng.hpp"

namespace packsolve {

using nlohmann::json;
using nlohmann::ordered_json;

bool ItemType::orientation_allowed(int o) const {
  return std::find(allowed_orientations.begin(), allowed_orientations.end(), o) !=
         allowed_orientations.end();
}

const ItemType* Instance::find_type(const std::string& id) const {
  for (const ItemType& t : item_types) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

int Instance::type_index(const std::string& id) const {
  for (size_t i = 0; i < item_types.size(); ++i) {
    if (item_types[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

int Instance::total_units() const {
  int total = 0;
  for (const ItemType& t : item_types) total += t.quantity;
  return total;
}

double Instance::total_item_volume() const {
  double total = 0;
  for (const ItemType& t : item_types) total += t.base.volume() * t.quantity;
  return total;
}

namespace {

bool fits_in_some_orientation(const ItemType& type, const Dims& container) {
  for (int o : type.allowed_orientations) {
    const Dims d = orient(type.base, o);
    if (within_bounds({0, 0, 0}, d, container)) return true;
  }
  return false;
}

void require_positive_dims(const Dims& d, const std::string& what) {
  if (!(d.length > 0) || !(d.width > 0) || !(d.height > 0)) {
    throw ValidationError(what + ": dimensions must be strictly positive");
  }
}

}  // namespace

void Instance::validate() const {
  require_positive_dims(container, "instance '" + name + "' container");
  std::set<std::string> seen;
  for (const ItemType& t : item_types) {
    if (t.id.empty()) throw ValidationError("item type with empty id");
    if (!seen.insert(t.id).second) {
      throw ValidationError("duplicate item type id '" + t.id + "'");
    }
    require_positive_dims(t.base, "item type '" + t.id + "'");
    if (t.quantity < 0) {
      throw ValidationError("item type '" + t.id + "': negative quantity");
    }
    if (t.allowed_orientations.empty()) {
      throw ValidationError("item type '" + t.id + "': no allowed orientations");
    }
    for (int o : t.allowed_orientations) {
      if (o < 0 || o >= kOrientationCount) {
        throw ValidationError("item type '" + t.id + "': orientation " +
                              std::to_string(o) + " out of range");
      }
    }
    if (!fits_in_some_orientation(t, container)) {
      throw ValidationError("item type '" + t.id +
                            "' does not fit the container in any allowed orientation");
    }
  }
  if (separation) {
    for (const std::string& id : separation->group_a) {
      if (separation->group_b.count(id)) {
        throw ValidationError("separation groups overlap on '" + id + "'");
      }
    }
    for (const auto& group : {separation->group_a, separation->group_b}) {
      for (const std::string& id : group) {
        if (!find_type(id)) {
          throw ValidationError("separation group references unknown type '" + id + "'");
        }
      }
    }
  }
}

namespace {

json parse_json_or_throw(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

double get_number(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(ctx + ": missing or non-numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

Dims dims_from_json(const json& j, const std::string& ctx) {
  return {get_number(j, "length", ctx), get_number(j, "width", ctx),
          get_number(j, "height", ctx)};
}

std::vector<int> default_orientations() {
  return {0, 1, 2, 3, 4, 5};
}

std::set<std::string> string_set(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected an array of type ids");
  std::set<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ParseError(ctx + ": expected string ids");
    out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& name_hint) {
  const json doc = parse_json_or_throw(text, "instance");
  Instance inst;
  inst.name = doc.value("name", name_hint);
  if (!doc.contains("container")) throw ParseError("instance: missing 'container'");
  inst.container = dims_from_json(doc.at("container"), "container");
  if (!doc.contains("item_types") || !doc.at("item_types").is_array()) {
    throw ParseError("instance: missing 'item_types' array");
  }
  for (const auto& tj : doc.at("item_types")) {
    ItemType type;
    if (!tj.contains("id")) throw ParseError("item type: missing 'id'");
    type.id = tj.at("id").is_string() ? tj.at("id").get<std::string>()
                                      : tj.at("id").dump();
    type.base = dims_from_json(tj, "item type '" + type.id + "'");
    type.quantity = static_cast<int>(get_number(tj, "quantity", "item type '" + type.id + "'"));
    if (tj.contains("allowed_orientations")) {
      for (const auto& o : tj.at("allowed_orientations")) {
        type.allowed_orientations.push_back(o.get<int>());
      }
      std::sort(type.allowed_orientations.begin(), type.allowed_orientations.end());
      type.allowed_orientations.erase(
          std::unique(type.allowed_orientations.begin(), type.allowed_orientations.end()),
          type.allowed_orientations.end());
    } else {
      type.allowed_orientations = default_orientations();
    }
    inst.item_types.push_back(std::move(type));
  }
  if (doc.contains("separation") && !doc.at("separation").is_null()) {
    const json& sj = doc.at("separation");
    SeparationGroups sep;
    if (!sj.contains("group_a") || !sj.contains("group_b")) {
      throw ParseError("separation: needs 'group_a' and 'group_b'");
    }
    sep.group_a = string_set(sj.at("group_a"), "separation.group_a");
    sep.group_b = string_set(sj.at("group_b"), "separation.group_b");
    inst.separation = std::move(sep);
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.stem().string());
}

std::string instance_to_text(const Instance& inst) {
  ordered_json doc;
  doc["name"] = inst.name;
  doc["container"] = {{"length", inst.container.length},
                      {"width", inst.container.width},
                      {"height", inst.container.height}};
  doc["item_types"] = ordered_json::array();
  for (const ItemType& t : inst.item_types) {
    ordered_json tj;
    tj["id"] = t.id;
    tj["length"] = t.base.length;
    tj["width"] = t.base.width;
    tj["height"] = t.base.height;
    tj["quantity"] = t.quantity;
    tj["allowed_orientations"] = t.allowed_orientations;
    doc["item_types"].push_back(std::move(tj));
  }
  if (inst.separation) {
    doc["separation"] = {
        {"group_a", std::vector<std::string>(inst.separation->group_a.begin(),
                                             inst.separation->group_a.end())},
        {"group_b", std::vector<std::string>(inst.separation->group_b.begin(),
                                             inst.separation->group_b.end())}};
  }
  return doc.dump(2) + "\n";
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file: " + path.string());
  out << instance_to_text(inst);
}

Solution parse_solution(const std::string& text) {
  const json doc = parse_json_or_throw(text, "solution");
  Solution sol;
  if (!doc.contains("instance_name") || !doc.at("instance_name").is_string()) {
    throw ParseError("solution: missing 'instance_name'");
  }
  sol.instance_name = doc.at("instance_name").get<std::string>();
  sol.containers_used = static_cast<int>(get_number(doc, "containers_used", "solution"));
  if (!doc.contains("placements") || !doc.at("placements").is_array()) {
    throw ParseError("solution: missing 'placements' array");
  }
  int max_index = -1;
  for (const auto& pj : doc.at("placements")) {
    Placement p;
    p.container_index = static_cast<int>(get_number(pj, "container_index", "placement"));
    if (!pj.contains("item_type_id") || !pj.at("item_type_id").is_string()) {
      throw ParseError("placement: missing 'item_type_id'");
    }
    p.item_type_id = pj.at("item_type_id").get<std::string>();
    p.pos = {get_number(pj, "x", "placement"), get_number(pj, "y", "placement"),
             get_number(pj, "z", "placement")};
    p.orientation = static_cast<int>(get_number(pj, "orientation", "placement"));
    if (p.container_index < 0) {
      throw ParseError("placement: negative container_index");
    }
    max_index = std::max(max_index, p.container_index);
    sol.placements.push_back(std::move(p));
  }
  if (sol.containers_used != max_index + 1) {
    throw ValidationError("solution: containers_used (" +
                          std::to_string(sol.containers_used) +
                          ") != 1 + max container_index (" +
                          std::to_string(max_index) + ")");
  }
  return sol;
}

Solution read_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open solution file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str());
}

std::string solution_to_text(const Solution& sol) {
  ordered_json doc;
  doc["instance_name"] = sol.instance_name;
  doc["containers_used"] = sol.containers_used;
  doc["placements"] = ordered_json::array();
  for (const Placement& p : sol.placements) {
    ordered_json pj;
    pj["container_index"] = p.container_index;
    pj["item_type_id"] = p.item_type_id;
    pj["x"] = p.pos.x;
    pj["y"] = p.pos.y;
    pj["z"] = p.pos.z;
    pj["orientation"] = p.orientation;
    doc["placements"].push_back(std::move(pj));
  }
  return doc.dump(2) + "\n";
}

void write_solution(const Solution& sol, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write solution file: " + path.string());
  out << solution_to_text(sol);
}

std::vector<Instance> load_instance_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Instance> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_instance(f));
  return out;
}

DatasetSplit split_dataset(std::vector<Instance> instances) {
  if (instances.size() < kTrainInstanceCount + 1) {
    throw ValidationError("dataset split needs at least " +
                          std::to_string(kTrainInstanceCount + 1) + " instances, got " +
                          std::to_string(instances.size()));
  }
  DatasetSplit split;
  split.train.assign(std::make_move_iterator(instances.begin()),
                     std::make_move_iterator(instances.begin() + kTrainInstanceCount));
  split.test.assign(std::make_move_iterator(instances.begin() + kTrainInstanceCount),
                    std::make_move_iterator(instances.end()));
  return split;
}

SynthProfile synth_profile_from_name(const std::string& name) {
  if (name == "tiny") return SynthProfile::tiny;
  if (name == "small") return SynthProfile::small;
  if (name == "medium") return SynthProfile::medium;
  throw ValidationError("unknown synth profile '" + name + "'");
}

std::string to_string(SynthProfile profile) {
  switch (profile) {
    case SynthProfile::tiny: return "tiny";
    case SynthProfile::small: return "small";
    case SynthProfile::medium: return "medium";
  }
  return "?";
}

namespace {

ItemType synth_type(Rng& rng, const Dims& container, int index, int max_dim_div) {
  ItemType type;
  type.id = "t" + std::to_string(index + 1);
  const int min_axis = 2;
  // Sampling each axis within the matching container axis guarantees the
  // identity orientation always fits.
  type.base.length = rng.next_int(min_axis, std::max(min_axis, static_cast<int>(container.length) / max_dim_div * 2));
  type.base.width = rng.next_int(min_axis, std::max(min_axis, static_cast<int>(container.width) / max_dim_div * 2));
  type.base.height = rng.next_int(min_axis, std::max(min_axis, static_cast<int>(container.height) / max_dim_div * 2));
  type.base.length = std::min(type.base.length, container.length);
  type.base.width = std::min(type.base.width, container.width);
  type.base.height = std::min(type.base.height, container.height);
  type.allowed_orientations = {0, 1, 2, 3, 4, 5};
  return type;
}

}  // namespace

Instance synth_instance(uint64_t seed, SynthProfile profile) {
  Rng rng(seed ^ (static_cast<uint64_t>(profile) + 1) * 0xa24baed4963ee407ULL);
  Instance inst;
  inst.name = "synth-" + to_string(profile) + "-" + std::to_string(seed);

  switch (profile) {
    case SynthProfile::tiny: {
      inst.container = {static_cast<double>(rng.next_int(4, 6)),
                        static_cast<double>(rng.next_int(4, 6)),
                        static_cast<double>(rng.next_int(4, 6))};
      const int n_types = rng.next_int(1, 3);
      const double volume_cap = 3.0 * inst.container.volume();
      int max_units = 6;
      double used_volume = 0;
      for (int i = 0; i < n_types && max_units > 0; ++i) {
        ItemType type = synth_type(rng, inst.container, i, 2);
        int qty = rng.next_int(1, std::min(3, max_units));
        while (qty > 0 && used_volume + qty * type.base.volume() > volume_cap) --qty;
        if (qty == 0) break;  // volume cap reached; the first type always fits
        type.quantity = qty;
        used_volume += qty * type.base.volume();
        max_units -= qty;
        inst.item_types.push_back(std::move(type));
      }
      break;
    }
    case SynthProfile::small: {
      inst.container = {static_cast<double>(rng.next_int(10, 20)),
                        static_cast<double>(rng.next_int(6, 15)),
                        static_cast<double>(rng.next_int(14, 20))};
      const int n_types = rng.next_int(2, 3);
      for (int i = 0; i < n_types; ++i) {
        ItemType type = synth_type(rng, inst.container, i, 3);
        type.quantity = rng.next_int(3, 10);
        inst.item_types.push_back(std::move(type));
      }
      break;
    }
    case SynthProfile::medium: {
      // Container/item ranges follow the benchmark data distribution summary.
      inst.container = {static_cast<double>(rng.next_int(10, 60)),
                        static_cast<double>(rng.next_int(6, 40)),
                        static_cast<double>(rng.next_int(14, 72))};
      const int n_types = rng.next_int(2, 5);
      for (int i = 0; i < n_types; ++i) {
        ItemType type = synth_type(rng, inst.container, i, 4);
        type.quantity = rng.next_int(12, 60);
        inst.item_types.push_back(std::move(type));
      }
      break;
    }
  }

  // Separation groups follow the benchmark convention: the first two types
  // are mutually incompatible (only meaningful when the profile is used with
  // a separation regime; harmless otherwise).
  if (inst.item_types.size() >= 2) {
    inst.separation = SeparationGroups{{inst.item_types[0].id}, {inst.item_types[1].id}};
  }
  inst.validate();
  return inst;
}

}  // namespace packsolve
