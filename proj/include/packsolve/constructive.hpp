#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "packsolve/features.hpp"
#include "packsolve/geometry.hpp"
#include "packsolve/instance.hpp"
#include "packsolve/rng.hpp"
#include "packsolve/score_dsl.hpp"

namespace packsolve {

// Which of the optional constraints a solve enforces. The benchmark regimes
// map onto: base {}, stability {alpha=1.0}, separation {separation}, both.
struct ConstraintProfile {
  std::optional<double> stability_alpha;  // in (0, 1] when present
  bool separation = false;                // use the instance's groups
};

// Mutable per-container packing state kept by the solvers.
struct ContainerState {
  int index = 0;
  std::vector<PlacedBox> occupied;
  std::set<std::string> type_ids_present;
  double occupied_volume = 0;
  double pack_height = 0;

  void place(PlacedBox box);
};

// One candidate action: place `item_type_index` at pos/orientation in the
// container with this index, or open a new container (index -1).
struct PlacementDecision {
  int container_index = -1;
  int item_type_index = 0;
  Position pos;
  int orientation = 0;
};

struct ScoredDecision {
  PlacementDecision decision;
  double score = 0;
};

using Scorer = std::function<double(const Features&)>;

// Candidate corner positions for a box of `dims`: for every occupied box the
// three points past its +x, +y, +z faces (kept only when the new extent fits
// that axis within eps), plus the origin. Deduplicated, sorted by (z, y, x).
std::vector<Position> candidate_positions(const ContainerState& state,
                                          const Dims& dims, const Dims& container,
                                          const Tolerance& tol = {});

// Features for a geometrically valid placement. `remaining_quantity` counts
// the unit being placed.
Features extract_features(const Position& pos, const Dims& dims,
                          const Dims& container, const ContainerState& state,
                          int remaining_quantity, const Tolerance& tol = {});

// The evolved default scorer: 0.9*vol_util + 0.05*quantity + 0.05*adjacency.
double evolved_score(const Features& f);

// Unguided baseline scorer (constant 1).
double constant_score(const Features& f);

Scorer make_program_scorer(dsl::ScoreProgram program);

// Restricted candidate list selection: uniform choice among candidates whose
// score is >= s_max - beta * (s_max - s_min). With beta == 0 this is a
// deterministic argmax whose ties break on (z, y, x, item index, orientation
// index, container order). Throws std::invalid_argument on an empty list.
const ScoredDecision& rcl_select(std::span<const ScoredDecision> scored,
                                 double beta, Rng& rng);

struct SolveOptions {
  double beta = 0;
  uint64_t seed = 0;
  std::optional<std::chrono::steady_clock::duration> deadline;  // total budget
  Tolerance tol;
};

// Greedy constructive solve: each step scores every feasible
// (type, orientation, position, container-or-new) action and applies the RCL
// choice. Throws TimeoutError when the deadline expires.
Solution greedy_solve(const Instance& inst, const Scorer& scorer,
                      const ConstraintProfile& profile, const SolveOptions& options = {});

// Deterministic baseline: unit items sorted by volume descending, containers
// scanned in opening order, candidate points ordered by (x, y, z),
// orientations in index order; the first valid spot wins.
Solution first_fit_solve(const Instance& inst, const ConstraintProfile& profile,
                         const Tolerance& tol = {});

}  // namespace packsolve
