#pragma once

#include <array>
#include <string>
#include <vector>

#include "divcurl/field.hpp"
#include "divcurl/quadrature.hpp"
#include "divcurl/test_function.hpp"

namespace divcurl {

/// How the two pairings are realized. `direct` composes stencils into third
/// derivatives; `by_parts` moves one derivative onto phi times the partner
/// field, using the closed-form gradient of phi.
enum class PairingMode { direct, by_parts };

/// Which discrete Laplacian stands in for Lap u and Lap v. `compact` is the
/// operator the Poisson solver inverts; `composed` is divergence of gradient,
/// which commutes exactly with the first differences.
enum class LaplacianKind { compact, composed };

std::string to_string(PairingMode mode);
std::string to_string(LaplacianKind kind);
PairingMode parse_pairing_mode(const std::string& name);
LaplacianKind parse_laplacian_kind(const std::string& name);

struct IdentityOptions {
  PairingMode mode = PairingMode::by_parts;
  LaplacianKind laplacian = LaplacianKind::compact;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// Term names of the integral formula, in printed order.
inline constexpr std::array<const char*, 6> kIdentityTerms = {
    "pairing_D",           "gradphi_lap",           "divu_gradphi_graddivv",
    "divv_gradphi_graddivu", "cross_curl",           "pairing_C"};

struct IdentityReport {
  int dim = 0;
  int n = 0;
  IdentityOptions options;
  double lhs = 0.0;  // integral of phi Lap u . Lap v
  std::array<NamedValue, 6> terms;
  double rhs_sum = 0.0;
  double residual = 0.0;           // |lhs - rhs_sum|
  double scale = 0.0;              // normalisation of the relative residual
  double relative_residual = 0.0;  // residual / scale, 0 when scale is 0
};

/// Two-sided balance used for the intermediate steps of the proof.
struct BalanceReport {
  std::string identity;
  int dim = 0;
  int n = 0;
  IdentityOptions options;
  std::vector<NamedValue> lhs_terms;
  std::vector<NamedValue> rhs_terms;
  std::vector<NamedValue> auxiliary;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double scale = 0.0;
  double relative_residual = 0.0;
};

/// Inputs of the integral formula with the Laplacians supplied by the caller,
/// so that -a and -b can stand in for Lap u and Lap v.
struct IdentityInputs {
  const VectorField& lap_u;
  const VectorField& lap_v;
  const VectorField& u;
  const VectorField& v;
};

/// Layers of grid spacing phi's support must keep from the box faces.
int required_margin_layers(const IdentityInputs& in, PairingMode mode);

/// The integral formula over `region`. Throws SupportMarginError when supp phi
/// leaves the region or comes closer to a face than the trusted stencil depth.
IdentityReport eval_identity(const IdentityInputs& in, const TestFunction& phi,
                             PairingMode mode, const Box& region = {});

IdentityReport eval_identity(const VectorField& u, const VectorField& v,
                             const TestFunction& phi, const IdentityOptions& opts = {});

/// The preliminary identity: both pairings on the left, the three remaining
/// integrals on the right.
BalanceReport eval_prelim_identity(const VectorField& u, const VectorField& v,
                                   const TestFunction& phi,
                                   const IdentityOptions& opts = {});

/// Replacement of Lap u by grad D(u) against grad(phi D(v)), with the
/// difference integrated on its own as an auxiliary entry.
BalanceReport eval_divfree_reduction(const VectorField& u, const VectorField& v,
                                     const TestFunction& phi,
                                     const IdentityOptions& opts = {});

}  // namespace divcurl
