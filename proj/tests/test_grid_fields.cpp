#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "divcurl/field_io.hpp"
#include "divcurl/quadrature.hpp"
#include "divcurl/test_function.hpp"
#include "oracles.hpp"

using namespace divcurl;
using std::numbers::pi;

TEST_CASE("make_grid validates dimension and size") {
  CHECK(make_grid(2, 9).h() == doctest::Approx(0.125));
  CHECK(make_grid(2, 8).h() == doctest::Approx(1.0 / 7.0));
  CHECK(make_grid(3, 8).size() == 512);
  CHECK_THROWS_WITH_AS(make_grid(4, 16), doctest::Contains("unsupported dimension"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 7), std::invalid_argument);

  for (int n : {8, 9, 33, 129, 257}) {
    const Grid g = make_grid(2, n);
    CHECK(std::abs(g.h() * (n - 1) - 1.0) <= 1e-15);
  }
}

TEST_CASE("node indexing is row-major with axis 1 fastest") {
  const Grid g = make_grid(3, 8);
  CHECK(g.flat({1, 0, 0}) == 1);
  CHECK(g.flat({0, 1, 0}) == 8);
  CHECK(g.flat({0, 0, 1}) == 64);
  const NodeIndex idx{3, 5, 6};
  CHECK(g.node(g.flat(idx)) == idx);
  CHECK(g.depth(g.flat({3, 5, 6})) == 1);
  CHECK(g.depth(g.flat({0, 4, 4})) == 0);
}

TEST_CASE("sample evaluates nodewise") {
  const Grid g = make_grid(2, 8);
  const ScalarField three = sample(g, [](const Point&) { return 3.0; });
  for (double v : three.values()) CHECK(v == 3.0);

  // Along axis 1 the first component of x runs through k*h.
  const ScalarField x1 = sample(g, [](const Point& p) { return p[0]; });
  for (int k = 0; k < g.n(); ++k) CHECK(x1.at({k, 2, 0}) == doctest::Approx(k * g.h()));
  CHECK(x1.at({0, 0, 0}) == 0.0);
  CHECK(x1.at({7, 0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("integrate: constants, eigenfunction, O(h^2) refinement") {
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, 17);
    CHECK(integrate(constant(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  }

  auto eig = [](const Point& p) { return std::sin(pi * p[0]) * std::sin(pi * p[1]); };
  const double exact = 4.0 / (pi * pi);
  double prev_err = 0.0;
  for (int n : {17, 33, 65, 129}) {
    const double err = std::abs(integrate(sample(make_grid(2, n), eig)) - exact);
    CHECK(err <= 2.0 / ((n - 1.0) * (n - 1.0)));
    if (prev_err > 0.0) {
      const double ratio = prev_err / err;
      CHECK(ratio >= 3.5);
      CHECK(ratio <= 4.5);
    }
    prev_err = err;
  }
}

TEST_CASE("integrate of phi^2 matches the refinement-extrapolated oracle") {
  const TestFunction phi = bump(2, {0.5, 0.5, 0.0}, 0.3);
  std::vector<double> ladder;
  for (int n : {65, 129, 257}) {
    const ScalarField f = phi.sample(make_grid(2, n));
    ladder.push_back(integrate(f * f));
  }
  const double extrapolated = oracle::richardson(ladder);
  CHECK(extrapolated == doctest::Approx(oracle::kIntPhiSqR03).epsilon(1e-10));
  CHECK(oracle::radial_bump_integral(2, 0.3, 2.0) ==
        doctest::Approx(oracle::kIntPhiSqR03).epsilon(1e-10));
  CHECK(ladder.back() == doctest::Approx(extrapolated).epsilon(1e-10));

  // The plain bump, sampled then integrated.
  const double int_phi = integrate(phi.sample(make_grid(2, 257)));
  CHECK(int_phi == doctest::Approx(oracle::kIntPhiR03).epsilon(1e-9));
}

TEST_CASE("integrate is linear and positive") {
  std::mt19937_64 rng(7);
  const Grid g = make_grid(2, 33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pf = oracle::random_trig(rng, 2);
    const auto pg = oracle::random_trig(rng, 2);
    const ScalarField f = sample(g, pf);
    const ScalarField h = sample(g, pg);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    const double a = coef(rng), b = coef(rng);
    const double lhs = integrate(a * f + b * h);
    const double rhs = a * integrate(f) + b * integrate(h);
    const double scale = std::abs(a) * integrate(abs(f)) + std::abs(b) * integrate(abs(h));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + scale));
    CHECK(integrate(f * f) >= 0.0);
    CHECK(integrate(abs(h)) >= 0.0);
  }
}

TEST_CASE("integrate over a sub-box") {
  const Grid g = make_grid(2, 65);
  const Box quarter{{0.25, 0.5, 0.0}, {0.75, 1.0, 0.0}};
  CHECK(integrate(constant(g, 1.0), quarter) == doctest::Approx(0.25).epsilon(1e-14));
  const TestFunction phi = bump(2, {0.5, 0.5, 0.0}, 0.2);
  const ScalarField p = phi.sample(g);
  CHECK(integrate(p, Box{{0.2, 0.2, 0.0}, {0.8, 0.8, 0.0}}) == doctest::Approx(integrate(p)));
}

TEST_CASE("bump: values, gradient, support") {
  const TestFunction phi = bump(2, {0.5, 0.4, 0.0}, 0.25);
  CHECK(phi.value({0.5, 0.4, 0.0}) == 1.0);
  CHECK(phi.value({0.75, 0.4, 0.0}) == 0.0);
  CHECK(phi.value({0.5, 0.4 + 0.25, 0.0}) == 0.0);
  const Point g0 = phi.gradient({0.5, 0.4, 0.0});
  CHECK(g0[0] == 0.0);
  CHECK(g0[1] == 0.0);
  CHECK(phi.support_margin() == doctest::Approx(0.15));

  // Closed-form gradient against central differences of the closed form.
  const Point x{0.58, 0.33, 0.0};
  const double d = 1e-6;
  const Point g = phi.gradient(x);
  CHECK(g[0] == doctest::Approx((phi.value({x[0] + d, x[1], 0}) - phi.value({x[0] - d, x[1], 0})) / (2 * d)).epsilon(1e-7));
  CHECK(g[1] == doctest::Approx((phi.value({x[0], x[1] + d, 0}) - phi.value({x[0], x[1] - d, 0})) / (2 * d)).epsilon(1e-7));

  CHECK_THROWS_AS(bump(2, {0.5, 0.5, 0.0}, 0.5), SupportMarginError);
  CHECK_THROWS_WITH(bump(2, {0.5, 0.5, 0.0}, 0.9), doctest::Contains("margin"));
  CHECK_THROWS_AS(bump(2, {0.1, 0.5, 0.0}, 0.2), SupportMarginError);
  CHECK_THROWS_AS(bump(2, {0.5, 0.5, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("bump vanishes at every sampled node outside its ball") {
  const Grid g = make_grid(2, 65);
  const TestFunction phi = bump(2, {0.45, 0.55, 0.0}, 0.3);
  const ScalarField p = phi.sample(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    const double r = std::hypot(x[0] - 0.45, x[1] - 0.55);
    if (r >= 0.3) CHECK(p[i] == 0.0);
  }
}

TEST_CASE("bump in 3D integrates to the radial oracle") {
  const TestFunction phi = bump(3, {0.5, 0.5, 0.5}, 0.3);
  const double v = integrate(phi.sample(make_grid(3, 65)));
  CHECK(v == doctest::Approx(oracle::kIntPhiR03Dim3).epsilon(1e-6));
  CHECK(oracle::radial_bump_integral(3, 0.3, 1.0) ==
        doctest::Approx(oracle::kIntPhiR03Dim3).epsilon(1e-10));
}

TEST_CASE("lp_norm") {
  const Grid g = make_grid(2, 129);
  CHECK(lp_norm(constant(g, 1.0), 2.0) == doctest::Approx(1.0));
  CHECK(lp_norm(constant(g, -2.0), 1.0) == doctest::Approx(2.0));
  const ScalarField eig =
      sample(g, [](const Point& p) { return std::sin(pi * p[0]) * std::sin(pi * p[1]); });
  CHECK(std::abs(lp_norm(eig, 2.0) - 0.5) <= 1.0 / (128.0 * 128.0));

  const ScalarField osc = sample(g, [](const Point& p) { return std::sin(2 * pi * 8 * p[0]); });
  CHECK(std::abs(lp_norm(osc, 2.0) - 1.0 / std::sqrt(2.0)) <= 1e-3);

  const VectorField w = sample(g, [](const Point&) { return Point{3.0, 4.0, 0.0}; });
  CHECK(lp_norm(w, 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(w, 3.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(lp_norm(eig, 0.5), std::invalid_argument);
}

TEST_CASE("fields reject inconsistent construction") {
  const Grid a = make_grid(2, 9);
  const Grid b = make_grid(2, 17);
  CHECK_THROWS_AS(ScalarField(a, std::vector<double>(10)), std::invalid_argument);
  CHECK_THROWS_AS(VectorField({ScalarField(a), ScalarField(b)}), GridMismatch);
  CHECK_THROWS_AS(VectorField({ScalarField(a)}), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField(a) + ScalarField(b), GridMismatch);
}

TEST_CASE("skew matrix entries are antisymmetric with zero diagonal") {
  const Grid g = make_grid(3, 8);
  std::mt19937_64 rng(3);
  std::vector<ScalarField> upper;
  for (int e = 0; e < 3; ++e) upper.push_back(sample(g, oracle::random_trig(rng, 3)));
  const SkewMatrixField c(g, upper);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (std::size_t p = 0; p < g.size(); ++p) {
        CHECK(c.entry(i, j)[p] + c.entry(j, i)[p] == 0.0);
      }
    }
    CHECK(c.entry(i, i).max_abs() == 0.0);
  }
}

TEST_CASE("binary and CSV dumps") {
  std::mt19937_64 rng(11);
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, 9);
    const VectorField w = sample(g, [&, p = oracle::random_trig(rng, dim)](const Point& x) {
      return Point{p(x), -p(x), 2 * p(x)};
    });
    std::stringstream ss;
    write_binary(ss, w);
    const auto back = read_binary(ss);
    REQUIRE(back.size() == static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
      CHECK(back[c].grid() == g);
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[c][i] == w[c][i]);
    }
  }

  const Grid g = make_grid(2, 8);
  std::ostringstream csv;
  write_csv(csv, sample(g, [](const Point& p) { return p[0] + 10 * p[1]; }));
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# divcurl-field v1 dim=2 n=8 components=1");
  std::getline(in, line);
  CHECK(line == "x1,x2,c0");
  std::getline(in, line);
  CHECK(line == "0,0,0");
  std::getline(in, line);  // second node advances along axis 1
  CHECK(line.rfind(format_double(1.0 / 7.0) + ",0,", 0) == 0);

  std::istringstream bad("NOTAFIELD");
  CHECK_THROWS_AS(read_binary(bad), std::runtime_error);
}
