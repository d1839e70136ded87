#include "divcurl/diffops.hpp"

#include <stdexcept>
#include <vector>

#include "divcurl/kernels.hpp"

namespace divcurl {
namespace {

void check_axis(const Grid& grid, int axis) {
  if (axis < 0 || axis >= grid.dim()) {
    throw std::out_of_range("derivative axis out of range");
  }
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) {
  check_axis(f.grid(), axis);
  std::vector<double> out(f.size());
  kernels::first_difference(f.grid(), f.values(), axis, out);
  return ScalarField(f.grid(), std::move(out), f.untrusted_layers() + 1);
}

ScalarField second_partial(const ScalarField& f, int axis) {
  check_axis(f.grid(), axis);
  std::vector<double> out(f.size());
  kernels::second_difference(f.grid(), f.values(), axis, out);
  return ScalarField(f.grid(), std::move(out), f.untrusted_layers() + 1);
}

VectorField gradient(const ScalarField& f) {
  std::vector<ScalarField> comps;
  for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(partial(f, a));
  return VectorField(std::move(comps));
}

ScalarField divergence(const VectorField& w) {
  ScalarField acc = partial(w[0], 0);
  for (int a = 1; a < w.dim(); ++a) acc = acc + partial(w[a], a);
  return acc;
}

SkewMatrixField curl_matrix(const VectorField& w) {
  const int d = w.dim();
  std::vector<ScalarField> upper;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      upper.push_back(partial(w[i], j) - partial(w[j], i));
    }
  }
  return SkewMatrixField(w.grid(), std::move(upper));
}

ScalarField laplacian(const ScalarField& f) {
  std::vector<double> out(f.size());
  kernels::laplacian(f.grid(), f.values(), out);
  return ScalarField(f.grid(), std::move(out), f.untrusted_layers() + 1);
}

VectorField laplacian(const VectorField& w) {
  std::vector<ScalarField> comps;
  for (const auto& c : w.components()) comps.push_back(laplacian(c));
  return VectorField(std::move(comps));
}

VectorField grad_div(const VectorField& w) { return gradient(divergence(w)); }

}  // namespace divcurl
