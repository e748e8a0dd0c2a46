#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace packsolve {

// Evaluation context for one candidate placement. Extraction lives in the
// constructive module; scoring programs read these by name.
struct Features {
  double vol_util = 0;         // item volume / container volume, in (0, 1]
  double adjacency = 0;        // wall + face contact count
  double quantity = 0;         // remaining units of the item's type
  double height_increase = 0;  // new pack height - current pack height, >= 0
  double contact_area = 0;     // touching face area with walls and boxes
  double cubeness = 0;         // volume / (length + width + height)
  double fill_after = 0;       // occupied volume fraction after placement
  double waste = 0;            // container volume - occupied volume after placement
};

inline constexpr std::array<std::string_view, 8> kFeatureNames = {
    "vol_util",  "adjacency", "quantity",   "height_increase",
    "contact_area", "cubeness", "fill_after", "waste"};

inline constexpr size_t kFeatureCount = kFeatureNames.size();

inline double feature_value(const Features& f, size_t index) {
  switch (index) {
    case 0: return f.vol_util;
    case 1: return f.adjacency;
    case 2: return f.quantity;
    case 3: return f.height_increase;
    case 4: return f.contact_area;
    case 5: return f.cubeness;
    case 6: return f.fill_after;
    case 7: return f.waste;
    default: return 0;
  }
}

// -1 when the name is not a feature.
int feature_index(std::string_view name);

}  // namespace packsolve
