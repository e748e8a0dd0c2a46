#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

namespace packsolve {

// Axis-aligned box extents. All three strictly positive.
struct Dims {
  double length = 0;  // x
  double width = 0;   // y
  double height = 0;  // z

  double volume() const { return length * width * height; }
  bool operator==(const Dims&) const = default;
};

// Back-bottom-left corner of a box, container-local coordinates.
struct Position {
  double x = 0;
  double y = 0;
  double z = 0;

  bool operator==(const Position&) const = default;
};

struct Tolerance {
  double epsilon = 1e-6;
};

// A box sitting in a container, dims already permuted into its placed
// orientation.
struct PlacedBox {
  std::string item_type_id;
  Position pos;
  Dims dims;
  int orientation = 0;

  double top_z() const { return pos.z + dims.height; }
  double base_area() const { return dims.length * dims.width; }
};

inline constexpr int kOrientationCount = 6;

// Permutes base dims (L, W, H) into one of the six axis-aligned orientations:
//   0:(L,W,H) 1:(L,H,W) 2:(W,L,H) 3:(W,H,L) 4:(H,L,W) 5:(H,W,L)
// Throws std::invalid_argument for an orientation outside 0..5.
Dims orient(const Dims& base, int orientation);

// Open-interval intersection on all three axes; face contact is not overlap.
bool boxes_overlap(const Position& a_pos, const Dims& a_dims,
                   const Position& b_pos, const Dims& b_dims);

// Every coordinate >= -eps and coordinate + extent <= container extent + eps.
bool within_bounds(const Position& pos, const Dims& dims, const Dims& container,
                   const Tolerance& tol = {});

// Area of the x-y rectangle intersection of the two footprints; 0 if disjoint.
double overlap_area_xy(const PlacedBox& a, const PlacedBox& b);

// Boxes whose top face is level with item's base (within eps) and whose
// footprint overlaps item's footprint with strictly positive area.
std::vector<const PlacedBox*> support_set(const PlacedBox& item,
                                          std::span<const PlacedBox> others,
                                          const Tolerance& tol = {});

// An item on the floor (base z <= eps) is always stable. Otherwise the summed
// footprint overlap with its supports must reach alpha times its base area.
// alpha must lie in (0, 1].
bool is_stable(const PlacedBox& item, std::span<const PlacedBox> others,
               double alpha, const Tolerance& tol = {});

// Bounds plus pairwise non-overlap against occupied. Stability and separation
// are checked separately by the constraint profile.
bool is_valid_placement(const Position& pos, const Dims& dims,
                        const Dims& container, std::span<const PlacedBox> occupied,
                        const Tolerance& tol = {});

// False iff the container holds at least one type from each group. Groups must
// be disjoint; throws std::invalid_argument otherwise.
bool separation_ok(const std::set<std::string>& container_type_ids,
                   const std::set<std::string>& group_a,
                   const std::set<std::string>& group_b);

}  // namespace packsolve
