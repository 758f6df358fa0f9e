#pragma once

#include <cstdint>
#include <vector>

#include "cgsp/synth.hpp"

namespace cgsp {

/// h(s,t) = sum_{i<=s} f(i,t) + sum_{j<=t} f(s,j) for both fields, stored
/// row-major with s the first axis.
struct SurfacePair {
  FrequencyGrid grid;
  std::vector<double> hx;
  std::vector<double> hy;
};

/// synthesize() on a d >= 2 grid.
FieldPair synthesize_field_pair(const CoefficientSet& cs, std::uint64_t seed);

std::vector<double> self_affine_surface(const std::vector<double>& field, const FrequencyGrid& grid);
SurfacePair self_affine_surface(const FieldPair& fp);

}  // namespace cgsp
