#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cdcpath {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid geometric input: duplicate vertices, overlapping obstacles, ...
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& what) : Error(what) {}
};

/// A ground-set vertex lies in a face without being one of its extreme points.
class InternalVertexViolation : public Error {
public:
    explicit InternalVertexViolation(const std::string& what) : Error(what) {}
};

/// Start or goal pose of a footstep model is not in free space.
class InfeasiblePose : public Error {
public:
    explicit InfeasiblePose(const std::string& what) : Error(what) {}
};

/// Model contains features the in-process solver does not handle.
class UnsupportedModel : public Error {
public:
    explicit UnsupportedModel(const std::string& what) : Error(what) {}
};

/// True iff `sub` (sorted ascending) is a subset of `super` (sorted ascending).
bool is_subset(const std::vector<int>& sub, const std::vector<int>& super);

/// Sorted union / intersection of two sorted index sets.
std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b);

/// Renders a sorted index set as "{3, 7, 12}" with 1-based indices.
std::string format_index_set(const std::vector<int>& s, int index_base = 1);

} // namespace cdcpath
