#include "divcurl/identity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "divcurl/diffops.hpp"

namespace divcurl {

namespace {

VectorField apply_laplacian(const VectorField& w, LaplacianKind kind) {
  if (kind == LaplacianKind::compact) return laplacian(w);
  std::vector<ScalarField> c;
  for (const auto& x : w.components()) c.push_back(divergence(gradient(x)));
  return VectorField(std::move(c));
}

void check_inputs(const IdentityInputs& in, const TestFunction& phi, PairingMode mode,
                  const Box& region) {
  const Grid& g = in.u.grid();
  require_same_grid(g, in.v.grid(), "identity");
  require_same_grid(g, in.lap_u.grid(), "identity");
  require_same_grid(g, in.lap_v.grid(), "identity");
  if (phi.dim() != g.dim()) {
    throw std::invalid_argument("identity: test function dimension does not match the grid");
  }
  for (int a = 0; a < g.dim(); ++a) {
    if (phi.center()[a] - phi.radius() < region.lower[a] - 1e-12 ||
        phi.center()[a] + phi.radius() > region.upper[a] + 1e-12) {
      throw SupportMarginError("support of phi leaves the integration region");
    }
  }
  const int layers = required_margin_layers(in, mode);
  const double need = layers * g.h();
  if (phi.support_margin() < need) {
    std::ostringstream msg;
    msg << "support margin " << phi.support_margin() << " of phi is below the trusted margin "
        << need << " (" << layers << " layers of h = " << g.h() << ")";
    throw SupportMarginError(msg.str());
  }
}

double relative(double residual, double scale) { return scale > 0.0 ? residual / scale : 0.0; }

// Shared pieces of all three identities.
struct Pieces {
  ScalarField phi;
  VectorField grad_phi;
  ScalarField div_u, div_v;
  VectorField grad_div_u, grad_div_v;
  VectorField grad_phi_div_v;  // grad(phi D(v)) by the product rule
};

Pieces make_pieces(const VectorField& u, const VectorField& v, const TestFunction& t) {
  const Grid& g = u.grid();
  Pieces p{t.sample(g), t.sample_gradient(g), divergence(u), divergence(v),
           VectorField::zeros(g), VectorField::zeros(g), VectorField::zeros(g)};
  p.grad_div_u = gradient(p.div_u);
  p.grad_div_v = gradient(p.div_v);
  p.grad_phi_div_v = p.div_v * p.grad_phi + p.phi * p.grad_div_v;
  return p;
}

// <D(Lap u), phi D(v)>.
double pairing_div(const IdentityInputs& in, const Pieces& p, PairingMode mode,
                   const Box& region) {
  if (mode == PairingMode::direct) {
    return integrate(divergence(in.lap_u) * p.phi * p.div_v, region);
  }
  return -integrate(dot(in.lap_u, p.grad_phi_div_v), region);
}

// (1/2) sum_ij <C_ij(Lap v), phi C_ij(u)>.
double pairing_curl(const IdentityInputs& in, const Pieces& p, PairingMode mode,
                    const Box& region) {
  const int dim = in.u.dim();
  const SkewMatrixField cu = curl_matrix(in.u);
  double total = 0.0;
  if (mode == PairingMode::direct) {
    const SkewMatrixField clv = curl_matrix(in.lap_v);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        total += integrate(clv.entry(i, j) * p.phi * cu.entry(i, j), region);
    return total;
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const ScalarField& c = cu.entry(i, j);
      const VectorField grad_psi = c * p.grad_phi + p.phi * gradient(c);
      total -= integrate(in.lap_v[i] * grad_psi[j] - in.lap_v[j] * grad_psi[i], region);
    }
  }
  return total;
}

// sum_ij int Lap v_i C_ij(u) d_j phi.
double cross_curl(const IdentityInputs& in, const Pieces& p, const Box& region) {
  const int dim = in.u.dim();
  const SkewMatrixField cu = curl_matrix(in.u);
  ScalarField acc(in.u.grid());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i != j) acc = acc + in.lap_v[i] * cu.entry(i, j) * p.grad_phi[j];
  return integrate(acc, region);
}

}  // namespace

std::string to_string(PairingMode mode) {
  return mode == PairingMode::direct ? "direct" : "by-parts";
}

std::string to_string(LaplacianKind kind) {
  return kind == LaplacianKind::compact ? "compact" : "composed";
}

PairingMode parse_pairing_mode(const std::string& name) {
  if (name == "direct") return PairingMode::direct;
  if (name == "by-parts" || name == "by_parts") return PairingMode::by_parts;
  throw std::invalid_argument("unknown pairing mode '" + name + "'");
}

LaplacianKind parse_laplacian_kind(const std::string& name) {
  if (name == "compact") return LaplacianKind::compact;
  if (name == "composed") return LaplacianKind::composed;
  throw std::invalid_argument("unknown Laplacian '" + name + "'");
}

int required_margin_layers(const IdentityInputs& in, PairingMode mode) {
  const int base = std::max({in.u.untrusted_layers(), in.v.untrusted_layers(),
                             in.lap_u.untrusted_layers() - 1,
                             in.lap_v.untrusted_layers() - 1, 0});
  // Deepest composite: D(Lap u) or C(Lap v) directly, grad D(v) otherwise.
  const int depth = mode == PairingMode::direct ? 3 : 2;
  return std::max(3, base + depth + 1);
}

IdentityReport eval_identity(const IdentityInputs& in, const TestFunction& phi,
                             PairingMode mode, const Box& region) {
  check_inputs(in, phi, mode, region);
  const Grid& g = in.u.grid();
  const Pieces p = make_pieces(in.u, in.v, phi);

  IdentityReport r;
  r.dim = g.dim();
  r.n = g.n();
  r.options.mode = mode;
  const ScalarField lhs_density = p.phi * dot(in.lap_u, in.lap_v);
  r.lhs = integrate(lhs_density, region);

  const double values[6] = {
      -pairing_div(in, p, mode, region),
      -integrate(p.div_u * dot(p.grad_phi, in.lap_v), region),
      integrate(p.div_u * dot(p.grad_phi, p.grad_div_v), region),
      -integrate(p.div_v * dot(p.grad_phi, p.grad_div_u), region),
      -cross_curl(in, p, region),
      -pairing_curl(in, p, mode, region),
  };
  double scale = std::max(integrate(abs(lhs_density), region), std::abs(r.lhs));
  for (int t = 0; t < 6; ++t) {
    r.terms[t] = {kIdentityTerms[t], values[t]};
    r.rhs_sum += values[t];
    scale = std::max(scale, std::abs(values[t]));
  }
  r.residual = std::abs(r.lhs - r.rhs_sum);
  r.scale = scale;
  r.relative_residual = relative(r.residual, scale);
  return r;
}

IdentityReport eval_identity(const VectorField& u, const VectorField& v,
                             const TestFunction& phi, const IdentityOptions& opts) {
  const VectorField lap_u = apply_laplacian(u, opts.laplacian);
  const VectorField lap_v = apply_laplacian(v, opts.laplacian);
  IdentityReport r = eval_identity({lap_u, lap_v, u, v}, phi, opts.mode);
  r.options = opts;
  return r;
}

BalanceReport eval_prelim_identity(const VectorField& u, const VectorField& v,
                                   const TestFunction& phi, const IdentityOptions& opts) {
  const VectorField lap_u = apply_laplacian(u, opts.laplacian);
  const VectorField lap_v = apply_laplacian(v, opts.laplacian);
  const IdentityInputs in{lap_u, lap_v, u, v};
  const Box region;
  check_inputs(in, phi, opts.mode, region);
  const Pieces p = make_pieces(u, v, phi);

  BalanceReport r;
  r.identity = "prelim";
  r.dim = u.dim();
  r.n = u.grid().n();
  r.options = opts;
  r.lhs_terms = {{"pairing_D", pairing_div(in, p, opts.mode, region)},
                 {"pairing_C", pairing_curl(in, p, opts.mode, region)}};
  r.rhs_terms = {
      {"lapu_grad_phi_divv", -integrate(dot(lap_u, p.grad_phi_div_v), region)},
      {"lapv_graddivu_minus_lapu_phi",
       integrate(p.phi * dot(lap_v, p.grad_div_u - lap_u), region)},
      {"cross_curl", -cross_curl(in, p, region)}};
  double scale = integrate(abs(p.phi * dot(lap_u, lap_v)), region);
  for (const auto& t : r.lhs_terms) {
    r.lhs += t.value;
    scale = std::max(scale, std::abs(t.value));
  }
  for (const auto& t : r.rhs_terms) {
    r.rhs += t.value;
    scale = std::max(scale, std::abs(t.value));
  }
  r.residual = std::abs(r.lhs - r.rhs);
  r.scale = scale;
  r.relative_residual = relative(r.residual, scale);
  return r;
}

BalanceReport eval_divfree_reduction(const VectorField& u, const VectorField& v,
                                     const TestFunction& phi, const IdentityOptions& opts) {
  const VectorField lap_u = apply_laplacian(u, opts.laplacian);
  const IdentityInputs in{lap_u, lap_u, u, v};
  const Box region;
  check_inputs(in, phi, opts.mode, region);
  const Pieces p = make_pieces(u, v, phi);

  BalanceReport r;
  r.identity = "divfree_reduction";
  r.dim = u.dim();
  r.n = u.grid().n();
  r.options = opts;
  const ScalarField lhs_density = dot(lap_u, p.grad_phi_div_v);
  r.lhs = integrate(lhs_density, region);
  r.rhs = integrate(dot(p.grad_div_u, p.grad_phi_div_v), region);
  r.lhs_terms = {{"lapu_grad_phi_divv", r.lhs}};
  r.rhs_terms = {{"graddivu_grad_phi_divv", r.rhs}};
  r.auxiliary = {{"graddivu_minus_lapu_grad_phi_divv",
                  integrate(dot(p.grad_div_u - lap_u, p.grad_phi_div_v), region)}};
  r.residual = std::abs(r.lhs - r.rhs);
  r.scale = std::max({integrate(abs(lhs_density), region), std::abs(r.lhs), std::abs(r.rhs)});
  r.relative_residual = relative(r.residual, r.scale);
  return r;
}

}  // namespace divcurl
