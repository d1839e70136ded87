#pragma once

#include "divcurl/field.hpp"

namespace divcurl {

/// Second-order finite differences on the node grid.
///
/// Interior nodes use centred stencils; nodes on a face use one-sided
/// second-order stencils along the face normal. Every operator raises the
/// result's `untrusted_layers` by one, so composites report the node set on
/// which all of their stencils were centred.
struct StencilSpec {
  static constexpr int order = 2;

  /// True where a result built from `depth` nested derivatives is computed
  /// from centred stencils only.
  static bool interior(const Grid& grid, std::size_t flat, int depth) {
    return grid.depth(flat) >= depth;
  }
};

/// d f / d x_axis (axis is 0-based).
ScalarField partial(const ScalarField& f, int axis);

/// d^2 f / d x_axis^2 with the compact three-point stencil.
ScalarField second_partial(const ScalarField& f, int axis);

VectorField gradient(const ScalarField& f);

/// D(w) = sum_i d w_i / d x_i.
ScalarField divergence(const VectorField& w);

/// C_ij(w) = d w_i / d x_j - d w_j / d x_i.
SkewMatrixField curl_matrix(const VectorField& w);

/// Compact Laplacian: sum of three-point second differences (the 5-point /
/// 7-point operator). Componentwise for vector fields.
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& w);

/// gradient(divergence(w)).
VectorField grad_div(const VectorField& w);

}  // namespace divcurl
