#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "realrad/moment.hpp"
#include "realrad/numlin.hpp"

namespace realrad {

enum class SolveMethod { kDouglasRachford, kAlternatingProjections };

struct SolverConfig {
  SolveMethod method = SolveMethod::kDouglasRachford;
  double residual_tol = 1e-12;
  long long max_iter = 100000;
  double init_scale = 0.0;  // 0 = auto: scale the identity start so the
                            // normalization constraint holds exactly
  long long log_every = 10;
  std::uint64_t seed = 9001;
  std::ostream* log = nullptr;  // iteration trace target, off by default

  void validate() const;
};

struct SolveReport {
  long long iterations = 0;
  double final_residual = std::numeric_limits<double>::infinity();
  std::vector<double> cosine_history;
  double wall_time = 0.0;
  bool converged = false;
  bool stagnated = false;
};

struct SolveResult {
  Eigen::MatrixXd point;  // PSD iterate at the face side
  SolveReport report;
};

// Alternating projections between the constraint manifold and the PSD cone;
// the residual is measured after each PSD projection.
SolveResult map_solve(const FacedProblem& fp, const SolverConfig& cfg,
                      const std::optional<Eigen::MatrixXd>& start = std::nullopt);

// Douglas-Rachford: P_{j+1} = (P_j + R_psd(R_lin(P_j))) / 2, residual measured
// at the PSD-projected point, which is also the returned iterate.
SolveResult dr_solve(const FacedProblem& fp, const SolverConfig& cfg,
                     const std::optional<Eigen::MatrixXd>& start = std::nullopt);

// |<mid - prev, next - mid>| / (|mid - prev| |next - mid|) in the Frobenius
// inner product; 0 when either step vanishes.
double cosine(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& mid,
              const Eigen::MatrixXd& next);

// Witness that the feasible set lies on a proper face of the PSD cone:
// Z = smat(L'y) is PSD with unit trace while the right-hand side pairs to zero.
struct FacialCertificate {
  Eigen::VectorXd y;  // over the kept constraint rows
  Eigen::MatrixXd Z;
  double objective = 0.0;  // |rhs . y|
  Eigen::MatrixXd W;       // orthonormal basis of null(Z)
};

struct AuxSearch {
  std::optional<FacialCertificate> certificate;
  double residual = std::numeric_limits<double>::infinity();
  long long iterations = 0;
};

AuxSearch aux_certificate(const FacedProblem& fp, const SolverConfig& cfg,
                          const ToleranceConfig& tol);

// Restrict the problem to null(Z): the face basis gains cert.W and the
// reduced representatives are rebuilt and recompressed.
FacedProblem facial_reduce_further(const FacedProblem& fp, const FacialCertificate& cert,
                                   const ToleranceConfig& tol);

}  // namespace realrad
