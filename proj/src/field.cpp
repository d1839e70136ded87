#include "divcurl/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "divcurl/kernels.hpp"

namespace divcurl {
namespace {

template <class Op>
ScalarField nodewise(const ScalarField& a, const ScalarField& b, Op op,
                     const char* where) {
  require_same_grid(a.grid(), b.grid(), where);
  std::vector<double> out(a.size());
  const auto va = a.values();
  const auto vb = b.values();
  kernels::parallel_for(out.size(),
                        [&](std::size_t i) { out[i] = op(va[i], vb[i]); });
  return ScalarField(a.grid(), std::move(out),
                     std::max(a.untrusted_layers(), b.untrusted_layers()));
}

template <class Op>
ScalarField nodewise(const ScalarField& a, Op op) {
  std::vector<double> out(a.size());
  const auto va = a.values();
  kernels::parallel_for(out.size(), [&](std::size_t i) { out[i] = op(va[i]); });
  return ScalarField(a.grid(), std::move(out), a.untrusted_layers());
}

template <class Op>
VectorField componentwise(const VectorField& a, const VectorField& b, Op op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vector fields have different component counts");
  }
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) out.push_back(op(a[i], b[i]));
  return VectorField(std::move(out));
}

template <class Op>
VectorField componentwise(const VectorField& a, Op op) {
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) out.push_back(op(a[i]));
  return VectorField(std::move(out));
}

}  // namespace

ScalarField::ScalarField(const Grid& grid)
    : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values,
                         int untrusted_layers)
    : grid_(grid), values_(std::move(values)), untrusted_layers_(untrusted_layers) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field has " + std::to_string(values_.size()) +
                                " values, grid has " +
                                std::to_string(grid_.size()) + " nodes");
  }
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

VectorField::VectorField(std::vector<ScalarField> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("vector field needs at least one component");
  }
  const Grid& g = components_.front().grid();
  if (static_cast<int>(components_.size()) != g.dim()) {
    throw std::invalid_argument("vector field on a " + std::to_string(g.dim()) +
                                "D grid needs " + std::to_string(g.dim()) +
                                " components");
  }
  for (const auto& c : components_) require_same_grid(g, c.grid(), "VectorField");
}

VectorField VectorField::zeros(const Grid& grid) {
  return VectorField(std::vector<ScalarField>(static_cast<std::size_t>(grid.dim()),
                                              ScalarField(grid)));
}

int VectorField::untrusted_layers() const {
  int m = 0;
  for (const auto& c : components_) m = std::max(m, c.untrusted_layers());
  return m;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, c.max_abs());
  return m;
}

SkewMatrixField::SkewMatrixField(const Grid& grid, std::vector<ScalarField> upper)
    : grid_(grid) {
  const int d = grid.dim();
  const auto expected = static_cast<std::size_t>(d * (d - 1) / 2);
  if (upper.size() != expected) {
    throw std::invalid_argument("skew matrix on a " + std::to_string(d) +
                                "D grid needs " + std::to_string(expected) +
                                " upper entries");
  }
  entries_.assign(static_cast<std::size_t>(d * d), ScalarField(grid));
  std::size_t next = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const ScalarField& e = upper[next++];
      require_same_grid(grid, e.grid(), "SkewMatrixField");
      entries_[static_cast<std::size_t>(i * d + j)] = e;
      entries_[static_cast<std::size_t>(j * d + i)] = -e;
    }
  }
}

int SkewMatrixField::untrusted_layers() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.untrusted_layers());
  return m;
}

ScalarField sample(const Grid& grid, const ScalarFunction& f) {
  std::vector<double> out(grid.size());
  kernels::parallel_for(out.size(),
                        [&](std::size_t i) { out[i] = f(grid.point(i)); });
  return ScalarField(grid, std::move(out));
}

VectorField sample(const Grid& grid, const VectorFunction& f) {
  const int d = grid.dim();
  std::vector<std::vector<double>> comps(static_cast<std::size_t>(d),
                                         std::vector<double>(grid.size()));
  kernels::parallel_for(grid.size(), [&](std::size_t i) {
    const Point v = f(grid.point(i));
    for (int c = 0; c < d; ++c) comps[c][i] = v[c];
  });
  std::vector<ScalarField> out;
  for (auto& c : comps) out.emplace_back(grid, std::move(c));
  return VectorField(std::move(out));
}

ScalarField constant(const Grid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return nodewise(a, b, [](double x, double y) { return x + y; }, "operator+");
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return nodewise(a, b, [](double x, double y) { return x - y; }, "operator-");
}

ScalarField operator-(const ScalarField& a) {
  return nodewise(a, [](double x) { return -x; });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return nodewise(a, b, [](double x, double y) { return x * y; }, "operator*");
}

ScalarField operator*(double s, const ScalarField& a) {
  return nodewise(a, [s](double x) { return s * x; });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return componentwise(a, b, [](const auto& x, const auto& y) { return x + y; });
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return componentwise(a, b, [](const auto& x, const auto& y) { return x - y; });
}

VectorField operator-(const VectorField& a) {
  return componentwise(a, [](const auto& x) { return -x; });
}

VectorField operator*(double s, const VectorField& a) {
  return componentwise(a, [s](const auto& x) { return s * x; });
}

VectorField operator*(const ScalarField& s, const VectorField& a) {
  return componentwise(a, [&s](const auto& x) { return s * x; });
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dot: vector fields have different dimensions");
  }
  ScalarField acc = a[0] * b[0];
  for (int i = 1; i < a.dim(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

ScalarField magnitude(const VectorField& a) {
  return nodewise(dot(a, a), [](double x) { return std::sqrt(x); });
}

ScalarField abs(const ScalarField& a) {
  return nodewise(a, [](double x) { return std::abs(x); });
}

}  // namespace divcurl
