#pragma once

#include "divcurl/field.hpp"
#include "divcurl/kernels.hpp"

namespace divcurl {

/// Axis-aligned box [lower, upper] in physical coordinates.
struct Box {
  Point lower{0.0, 0.0, 0.0};
  Point upper{1.0, 1.0, 1.0};
};

/// Nodes of `grid` lying in the closed box (to 1e-9 h), as an index range.
/// Throws if the box contains no node along some axis.
IndexBox index_box(const Grid& grid, const Box& box);

/// Trapezoid rule on (0,1)^dim. O(h^2) for C^2 integrands.
double integrate(const ScalarField& f);

/// Trapezoid rule on the node-aligned part of `region`.
double integrate(const ScalarField& f, const Box& region);

/// (integral of |f|^p)^(1/p); |.| is the Euclidean norm for vector fields.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& f, double p);

/// L^2 distance between `exact` and the piecewise multilinear (Q1)
/// reconstruction of the nodal values `f`, by 3-point Gauss rules per cell.
double interpolated_l2_error(const ScalarField& f, const ScalarFunction& exact);

}  // namespace divcurl
