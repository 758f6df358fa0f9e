#include "cgsp/field.hpp"

#include "cgsp/error.hpp"

namespace cgsp {

FieldPair synthesize_field_pair(const CoefficientSet& cs, std::uint64_t seed) {
  if (cs.grid.dim() < 2) throw InvalidArgument("synthesize_field_pair needs a grid with d >= 2");
  return synthesize(cs, seed);
}

std::vector<double> self_affine_surface(const std::vector<double>& field, const FrequencyGrid& grid) {
  if (grid.dim() != 2) throw InvalidArgument("self-affine surfaces need a two-dimensional field");
  if (field.size() != grid.size()) throw InvalidArgument("field size does not match grid");
  const std::size_t L = grid.side();

  // Column partial sums down the first axis and row partial sums along the
  // second, accumulated in index order.
  std::vector<double> down(field.size()), along(field.size());
  for (std::size_t t = 0; t < L; ++t) {
    double acc = 0.0;
    for (std::size_t s = 0; s < L; ++s) {
      acc += field[s * L + t];
      down[s * L + t] = acc;
    }
  }
  for (std::size_t s = 0; s < L; ++s) {
    double acc = 0.0;
    for (std::size_t t = 0; t < L; ++t) {
      acc += field[s * L + t];
      along[s * L + t] = acc;
    }
  }
  std::vector<double> h(field.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = down[i] + along[i];
  return h;
}

SurfacePair self_affine_surface(const FieldPair& fp) {
  return {fp.grid, self_affine_surface(fp.x, fp.grid), self_affine_surface(fp.y, fp.grid)};
}

}  // namespace cgsp
