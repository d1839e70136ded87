#pragma once

#include <stdexcept>

#include "divcurl/field.hpp"
#include "divcurl/grid.hpp"

namespace divcurl {

/// Raised when a test function's support is not strictly inside the box, or
/// leaves a region whose stencils are trusted.
class SupportMarginError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Smooth bump phi(x) = exp(1 - 1/(1 - s)), s = |x - c|^2 / r^2, for s < 1 and
/// zero elsewhere. Peak value 1 at the centre; gradient in closed form.
class TestFunction {
 public:
  TestFunction(int dim, const Point& center, double radius);

  int dim() const { return dim_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  double value(const Point& x) const;
  Point gradient(const Point& x) const;

  /// Smallest distance from the closed support to a box face.
  double support_margin() const;

  ScalarField sample(const Grid& grid) const;
  VectorField sample_gradient(const Grid& grid) const;

 private:
  double scaled_distance(const Point& x) const;

  int dim_;
  Point center_;
  double radius_;
};

TestFunction bump(int dim, const Point& center, double radius);

}  // namespace divcurl
