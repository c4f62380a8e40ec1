#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "easme/objectives.hpp"

namespace easme {

// Maximization: a >= b everywhere and a > b somewhere.
// Throws std::invalid_argument on length mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

// Fronts of indices into `points`; front 0 is the non-dominated set. Indices
// within a front are ascending.
std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectiveVector>& points);

// Feasibility-first dominance: a point with smaller constraint violation
// dominates one with larger violation; equal violations fall back to plain
// dominance.
bool constrained_dominates(std::span<const double> a, double violation_a, std::span<const double> b,
                           double violation_b);

// Fronts under constrained_dominates. `violations` holds one non-negative
// value per point.
std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectiveVector>& points,
                                                         std::span<const double> violations);

// NSGA-II crowding distance of each member of one front. Per objective the
// extreme members get +infinity and interior members accumulate the gap
// between their neighbours divided by the objective's range (0 if the range
// is 0).
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

} // namespace easme
