#include "packsolve/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace packsolve {

Dims orient(const Dims& base, int orientation) {
  const double l = base.length, w = base.width, h = base.height;
  switch (orientation) {
    case 0: return {l, w, h};
    case 1: return {l, h, w};
    case 2: return {w, l, h};
    case 3: return {w, h, l};
    case 4: return {h, l, w};
    case 5: return {h, w, l};
    default:
      throw std::invalid_argument("orientation must be in 0..5, got " +
                                  std::to_string(orientation));
  }
}

bool boxes_overlap(const Position& a_pos, const Dims& a_dims,
                   const Position& b_pos, const Dims& b_dims) {
  return a_pos.x < b_pos.x + b_dims.length && a_pos.x + a_dims.length > b_pos.x &&
         a_pos.y < b_pos.y + b_dims.width && a_pos.y + a_dims.width > b_pos.y &&
         a_pos.z < b_pos.z + b_dims.height && a_pos.z + a_dims.height > b_pos.z;
}

bool within_bounds(const Position& pos, const Dims& dims, const Dims& container,
                   const Tolerance& tol) {
  const double eps = tol.epsilon;
  return pos.x >= -eps && pos.x + dims.length <= container.length + eps &&
         pos.y >= -eps && pos.y + dims.width <= container.width + eps &&
         pos.z >= -eps && pos.z + dims.height <= container.height + eps;
}

double overlap_area_xy(const PlacedBox& a, const PlacedBox& b) {
  const double dx = std::min(a.pos.x + a.dims.length, b.pos.x + b.dims.length) -
                    std::max(a.pos.x, b.pos.x);
  const double dy = std::min(a.pos.y + a.dims.width, b.pos.y + b.dims.width) -
                    std::max(a.pos.y, b.pos.y);
  if (dx <= 0 || dy <= 0) return 0;
  return dx * dy;
}

std::vector<const PlacedBox*> support_set(const PlacedBox& item,
                                          std::span<const PlacedBox> others,
                                          const Tolerance& tol) {
  std::vector<const PlacedBox*> supports;
  for (const PlacedBox& other : others) {
    if (std::abs(other.top_z() - item.pos.z) <= tol.epsilon &&
        overlap_area_xy(item, other) > 0) {
      supports.push_back(&other);
    }
  }
  return supports;
}

bool is_stable(const PlacedBox& item, std::span<const PlacedBox> others,
               double alpha, const Tolerance& tol) {
  if (!(alpha > 0) || alpha > 1) {
    throw std::invalid_argument("stability alpha must lie in (0, 1]");
  }
  if (item.pos.z <= tol.epsilon) return true;  // resting on the container floor
  double supported = 0;
  for (const PlacedBox* support : support_set(item, others, tol)) {
    supported += overlap_area_xy(item, *support);
  }
  return supported >= alpha * item.base_area() - tol.epsilon;
}

bool is_valid_placement(const Position& pos, const Dims& dims,
                        const Dims& container, std::span<const PlacedBox> occupied,
                        const Tolerance& tol) {
  if (!within_bounds(pos, dims, container, tol)) return false;
  for (const PlacedBox& box : occupied) {
    if (boxes_overlap(pos, dims, box.pos, box.dims)) return false;
  }
  return true;
}

bool separation_ok(const std::set<std::string>& container_type_ids,
                   const std::set<std::string>& group_a,
                   const std::set<std::string>& group_b) {
  for (const std::string& id : group_a) {
    if (group_b.count(id)) {
      throw std::invalid_argument("separation groups must be disjoint: '" + id +
                                  "' appears in both");
    }
  }
  bool has_a = false, has_b = false;
  for (const std::string& id : container_type_ids) {
    has_a = has_a || group_a.count(id) > 0;
    has_b = has_b || group_b.count(id) > 0;
  }
  return !(has_a && has_b);
}

}  // namespace packsolve
