#pragma once

#include <string>
#include <vector>

#include "cdcpath/biclique.hpp"
#include "cdcpath/cdc.hpp"
#include "cdcpath/geometry.hpp"
#include "cdcpath/partition.hpp"

namespace cdcpath {

// All emitters are deterministic: fixed canvas, fixed precision, no metadata.
std::string svg_partition(const Environment& env, const Partition& p);
std::string svg_conflict(const Environment& env, const Partition& p,
                         const ConflictGraph& g);
std::string svg_separator(const Environment& env, const Partition& p,
                          const FiniteElementGraph& g, const SeparatorResult& sep);
std::string svg_solution(const Environment& env, const std::vector<Point2>& steps,
                         const Point2& start, const Point2& goal);

}  // namespace cdcpath
