#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "divcurl/diffops.hpp"
#include "oracles.hpp"

using namespace divcurl;
using std::numbers::pi;

namespace {

// max |a - b| over nodes at least `depth` layers from the boundary.
double max_diff(const ScalarField& a, const ScalarField& b, int depth) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.grid().depth(i) >= depth) m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double max_abs(const ScalarField& a, int depth) {
  return max_diff(a, ScalarField(a.grid()), depth);
}

ScalarField composed_laplacian(const ScalarField& f) { return divergence(gradient(f)); }

VectorField composed_laplacian(const VectorField& w) {
  std::vector<ScalarField> c;
  for (const auto& x : w.components()) c.push_back(composed_laplacian(x));
  return VectorField(std::move(c));
}

VectorField random_vector(const Grid& g, std::mt19937_64& rng) {
  std::vector<ScalarField> c;
  for (int a = 0; a < g.dim(); ++a) c.push_back(sample(g, oracle::random_trig(rng, g.dim())));
  return VectorField(std::move(c));
}

}  // namespace

TEST_CASE("gradient") {
  const Grid g = make_grid(2, 17);
  const VectorField zero = gradient(constant(g, 4.2));
  CHECK(zero.max_abs() <= 1e-12);

  const VectorField gx = gradient(sample(g, [](const Point& p) { return p[0]; }));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(gx[0][i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(gx[1][i]) <= 1e-12);
  }
  CHECK(gx.untrusted_layers() == 1);

  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const Grid gn = make_grid(2, n);
    const VectorField d = gradient(sample(gn, [](const Point& p) { return std::sin(pi * p[0]); }));
    const ScalarField exact = sample(gn, [](const Point& p) { return pi * std::cos(pi * p[0]); });
    const double err = max_diff(d[0], exact, 0);
    // one-sided faces: h^2 |f'''| / 3
    CHECK(err <= 1.05 * pi * pi * pi / 3.0 * gn.h() * gn.h());
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
    prev = err;
  }
}

TEST_CASE("divergence") {
  const Grid g = make_grid(2, 17);
  CHECK(divergence(sample(g, [](const Point&) { return Point{1.5, -2.0, 0.0}; })).max_abs() <= 1e-12);

  const ScalarField d = divergence(sample(g, [](const Point& p) {
    return Point{p[0] * p[0], p[1] * p[1], 0.0};
  }));
  const ScalarField exact = sample(g, [](const Point& p) { return 2 * p[0] + 2 * p[1]; });
  CHECK(max_diff(d, exact, 1) <= 1e-12);

  const ScalarField z = divergence(sample(g, [](const Point& p) {
    return Point{std::sin(2 * pi * p[1]), 0.0, 0.0};
  }));
  CHECK(z.max_abs() <= 1e-12);
}

TEST_CASE("curl_matrix") {
  const Grid g = make_grid(2, 17);
  const SkewMatrixField c0 = curl_matrix(gradient(sample(g, [](const Point& p) { return p[0] * p[1]; })));
  CHECK(max_abs(c0.entry(0, 1), 1) <= 1e-12);

  const SkewMatrixField rot = curl_matrix(sample(g, [](const Point& p) {
    return Point{-p[1], p[0], 0.0};
  }));
  CHECK(max_diff(rot.entry(0, 1), constant(g, -2.0), 1) <= 1e-12);
  CHECK(max_diff(rot.entry(1, 0), constant(g, 2.0), 1) <= 1e-12);

  const SkewMatrixField sq = curl_matrix(sample(g, [](const Point& p) {
    return Point{p[1] * p[1], 0.0, 0.0};
  }));
  CHECK(max_diff(sq.entry(0, 1), sample(g, [](const Point& p) { return 2 * p[1]; }), 1) <= 1e-12);
}

TEST_CASE("laplacian") {
  const Grid g = make_grid(2, 17);
  const ScalarField l = laplacian(sample(g, [](const Point& p) { return p[0] * p[0]; }));
  CHECK(max_diff(l, constant(g, 2.0), 1) <= 1e-9);
  const ScalarField harm = laplacian(sample(g, [](const Point& p) { return p[0] * p[0] - p[1] * p[1]; }));
  CHECK(max_abs(harm, 1) <= 1e-9);

  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const Grid gn = make_grid(2, n);
    const ScalarField f = sample(gn, [](const Point& p) { return std::sin(pi * p[0]) * std::sin(pi * p[1]); });
    const double err = max_diff(laplacian(f), -2.0 * pi * pi * f, 1);
    // h^2 (f_xxxx + f_yyyy) / 12
    CHECK(err <= 1.05 * pi * pi * pi * pi / 6.0 * gn.h() * gn.h());
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("grad_div") {
  const Grid g = make_grid(2, 17);
  CHECK(grad_div(sample(g, [](const Point&) { return Point{1.0, 2.0, 0.0}; })).max_abs() <= 1e-10);
  const VectorField gd = grad_div(sample(g, [](const Point& p) {
    return Point{p[0] * p[0], p[1] * p[1], 0.0};
  }));
  CHECK(max_diff(gd[0], constant(g, 2.0), 2) <= 1e-9);
  CHECK(max_diff(gd[1], constant(g, 2.0), 2) <= 1e-9);
  CHECK(gd.untrusted_layers() == 2);

  // For gradient fields grad div = Lap; the compact Laplacian agrees to O(h^2).
  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const Grid gn = make_grid(2, n);
    const VectorField w = gradient(sample(gn, [](const Point& p) {
      return std::sin(pi * p[0]) * std::sin(pi * p[1]);
    }));
    const VectorField diff = grad_div(w) - laplacian(w);
    const double err = std::max(max_abs(diff[0], 3), max_abs(diff[1], 3));
    CHECK(err <= 10.0 * gn.h() * gn.h() * pi * pi * pi);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
    prev = err;
  }
}

TEST_CASE("property: curl_matrix is antisymmetric with zero diagonal") {
  std::mt19937_64 rng(17);
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, dim == 2 ? 21 : 10);
    for (int trial = 0; trial < 5; ++trial) {
      const SkewMatrixField c = curl_matrix(random_vector(g, rng));
      for (int i = 0; i < dim; ++i) {
        CHECK(c.entry(i, i).max_abs() == 0.0);
        for (int j = 0; j < dim; ++j) {
          for (std::size_t p = 0; p < g.size(); ++p) {
            REQUIRE(c.entry(i, j)[p] + c.entry(j, i)[p] == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("property: divergence and laplacian commute on fully interior nodes") {
  std::mt19937_64 rng(5);
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, dim == 2 ? 33 : 17);
    for (int trial = 0; trial < 8; ++trial) {
      const VectorField w = random_vector(g, rng);
      const ScalarField a = divergence(laplacian(w));
      const ScalarField b = laplacian(divergence(w));
      CHECK(max_diff(a, b, 2) <= 1e-12 * max_abs(a, 2));
    }
  }
}

TEST_CASE("property: grad_div minus the composed Laplacian is discretely divergence-free") {
  std::mt19937_64 rng(23);
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, dim == 2 ? 33 : 17);
    for (int trial = 0; trial < 8; ++trial) {
      const VectorField w = random_vector(g, rng);
      const ScalarField d = divergence(grad_div(w) - composed_laplacian(w));
      const double scale = max_abs(divergence(grad_div(w)), 3);
      CHECK(max_abs(d, 3) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("divergence of grad_div minus the compact Laplacian decays as O(h^2)") {
  const auto field = [](const Point& p) {
    return Point{std::sin(pi * p[0]) * std::cos(2 * pi * p[1]), std::cos(pi * p[0] * p[1]), 0.0};
  };
  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const Grid g = make_grid(2, n);
    const VectorField w = sample(g, field);
    const ScalarField d = divergence(grad_div(w) - laplacian(w));
    const double err = max_abs(d, 3) / max_abs(divergence(grad_div(w)), 3);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.2));
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("property: exact on quadratic polynomials") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  const Grid g = make_grid(3, 9);
  for (int trial = 0; trial < 10; ++trial) {
    double q[10];
    for (double& x : q) x = c(rng);
    auto poly = [q](const Point& p) {
      return q[0] + q[1] * p[0] + q[2] * p[1] + q[3] * p[2] + q[4] * p[0] * p[0] +
             q[5] * p[1] * p[1] + q[6] * p[2] * p[2] + q[7] * p[0] * p[1] +
             q[8] * p[0] * p[2] + q[9] * p[1] * p[2];
    };
    const ScalarField f = sample(g, poly);
    const VectorField grad = gradient(f);
    const ScalarField gx = sample(g, [q](const Point& p) {
      return q[1] + 2 * q[4] * p[0] + q[7] * p[1] + q[8] * p[2];
    });
    const ScalarField gz = sample(g, [q](const Point& p) {
      return q[3] + 2 * q[6] * p[2] + q[8] * p[0] + q[9] * p[1];
    });
    CHECK(max_diff(grad[0], gx, 0) <= 1e-11);
    CHECK(max_diff(grad[2], gz, 0) <= 1e-11);
    CHECK(max_diff(laplacian(f), constant(g, 2 * (q[4] + q[5] + q[6])), 0) <= 1e-9);
  }
}
