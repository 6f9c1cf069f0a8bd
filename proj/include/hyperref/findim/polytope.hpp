#pragma once

#include <optional>
#include <vector>

#include "hyperref/findim/norm.hpp"

namespace hyperref::findim {

// Candidate vertices of conv(vertices) intersected with {y : constraints * y = 0}.
// Every vertex of the section is a convex combination of at most k + 1 of the
// given points (k = constraint rows), so solving over all such subsets finds
// all of them. Returns nullopt when the subset count exceeds `budget`.
std::optional<std::vector<Vec>> section_vertices(const std::vector<Vec>& vertices, const Mat& constraints,
                                                 std::size_t budget = 400'000);

}  // namespace hyperref::findim
