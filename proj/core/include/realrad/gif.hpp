#pragma once

#include "realrad/numlin.hpp"
#include "realrad/polysys.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace realrad {

/// Degree-filtered linear slice of an ideal at a fixed ambient degree:
/// the kernel of the generating set's coefficient matrix together with
/// polynomials spanning its orthogonal complement (the row space).
struct KernelState {
  int n = 0;
  int degree = 0;
  SubspaceBasis kernel;
  PolySystem generators{1};  // orthonormal coefficient rows
};

/// Cartan character profile of the top-degree block of a state, computed in
/// the state's own coordinates. betas[k-1] counts echelon pivots of class k
/// (columns sorted by descending class); the test compares sum(k * beta_k)
/// against the rank of the single-variable prolongations of the symbol.
struct SymbolProfile {
  int degree = 0;
  std::vector<int> betas;
  int symbol_rank = 0;
  int prolonged_symbol_rank = 0;
  int cartan_sum = 0;
  bool involutive = false;
};

enum class CoordinatePolicy { kAuto, kAlways, kNever };

struct GifOptions {
  int max_prolongations = 10;
  int retry_after = 3;          // auto policy: global generic retry once k exceeds this
  long long basis_cap = 20000;  // refuse prolongations beyond this many monomials
  CoordinatePolicy coordinate_policy = CoordinatePolicy::kAuto;
  std::uint64_t seed = 9001;
};

struct GifStep {
  int k = 0;
  int l = 0;
  int degree = 0;
  int kernel_dim = 0;
  bool dims_stable = false;
  bool symbol_involutive = false;
  bool survived = false;  // passed the prolongation-containment filter
};

struct GifReport {
  KernelState output;
  int prolongations = 0;
  int projections = 0;
  int candidates_examined = 0;
  std::vector<GifStep> steps;
  /// Set when the search ran under a random orthogonal change of coordinates;
  /// the output state is always mapped back to the input coordinates.
  std::optional<Eigen::MatrixXd> coordinate_change;
};

/// State of the k-fold prolongation {x^a * p : deg(x^a p) <= deg(P) + k}.
KernelState prolong(const PolySystem& ps, int k, const ToleranceConfig& tol,
                    long long basis_cap = 20000);

/// Deletes kernel coordinates of degree above state.degree - l and
/// re-orthonormalizes. l = 0 returns the state unchanged.
KernelState project(const KernelState& state, int l, const ToleranceConfig& tol);

SymbolProfile symbol_profile(const KernelState& state, const ToleranceConfig& tol);

/// Definition-level test: projected dimensions stabilize one prolongation up
/// and the symbol passes the Cartan test. The dimension half is coordinate
/// invariant; the symbol half is retried once under a seeded random
/// orthogonal change, since a pass certifies involutivity in any coordinates
/// but a failure can be an artifact of delta-irregular input coordinates.
bool is_projectively_involutive(const PolySystem& ps, int k, int l,
                                const ToleranceConfig& tol);

/// Searches k = 0, 1, ... for projections of the k-fold prolongation that
/// are projectively involutive and reproduce the prolonged slice (the
/// containment filter); returns the surviving candidate of lowest degree.
GifReport gif(const PolySystem& ps, const ToleranceConfig& tol,
              const GifOptions& opts = {});

/// The state's generator rows, each rescaled so its largest-magnitude
/// coefficient is +1.
PolySystem generators(const KernelState& state);

/// Haar-ish random orthogonal matrix (QR of a seeded Gaussian sample).
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);

}  // namespace realrad
