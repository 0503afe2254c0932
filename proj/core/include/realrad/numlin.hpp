#pragma once

#include <Eigen/Dense>

namespace realrad {

struct ToleranceConfig {
  double svd_rel_tol = 1e-10;     // singular value cutoff, relative to the largest
  double residual_tol = 1e-12;    // projected-residual feasibility threshold
  double containment_tol = 1e-8;  // subspace membership slack

  void validate() const;  // throws std::invalid_argument on nonsense values
};

/// Columns form an orthonormal basis of a subspace of R^ambient.
struct SubspaceBasis {
  int ambient = 0;
  Eigen::MatrixXd basis;

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct RankKernel {
  int rank = 0;
  SubspaceBasis kernel;    // right singular vectors at or below the cutoff
  SubspaceBasis rowspace;  // right singular vectors above the cutoff
};

/// SVD-based rank split of the column space of A^T. rank + kernel.dim()
/// always equals the column count. Throws on non-finite entries.
RankKernel rank_kernel(const Eigen::MatrixXd& A, double svd_rel_tol);

/// Orthonormal basis of the orthogonal complement of span(B). B must have
/// full column rank (zero columns are fine: the complement is everything).
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& B, double svd_rel_tol);

/// Frobenius-nearest positive semidefinite matrix: eigendecompose the
/// symmetrized input and clamp negative eigenvalues to zero.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& S);

/// Isometric half-vectorization: column-major upper triangle with
/// off-diagonal entries scaled by sqrt(2), so dot(svec(S), svec(T))
/// equals the Frobenius inner product.
Eigen::VectorXd svec(const Eigen::MatrixXd& S);
Eigen::MatrixXd smat(const Eigen::VectorXd& v);

/// True when every column of inner lies in span(outer) up to tol
/// (Euclidean distance per unit-norm column).
bool subspace_contained(const SubspaceBasis& inner, const SubspaceBasis& outer,
                        double tol);

struct LeastNormUpdate {
  Eigen::VectorXd point;
  double residual = 0.0;   // ||b - L point|| after the update
  bool consistent = true;  // false when the system is unsolvable at residual_tol
};

/// Nearest point to p_c on {p : L p = b}, computed through the pseudoinverse.
/// Rank-deficient L degrades to the least-squares manifold and flags
/// inconsistency when the residual stays above tol.residual_tol.
LeastNormUpdate least_norm_update(const Eigen::MatrixXd& L, const Eigen::VectorXd& p_c,
                                  const Eigen::VectorXd& b, const ToleranceConfig& tol);

/// Cached SVD factorization for repeated projections onto {p : L p = b}.
class LinearManifoldProjector {
 public:
  LinearManifoldProjector(Eigen::MatrixXd L, Eigen::VectorXd b, double svd_rel_tol);

  Eigen::VectorXd project(const Eigen::VectorXd& p) const;
  Eigen::VectorXd apply_pinv(const Eigen::VectorXd& r) const;
  double residual_norm(const Eigen::VectorXd& p) const;  // ||b - L p||

  const Eigen::MatrixXd& L() const { return L_; }
  const Eigen::VectorXd& b() const { return b_; }
  int rank() const { return rank_; }

 private:
  Eigen::MatrixXd L_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd U_, V_;     // rank-truncated factors
  Eigen::VectorXd sigma_inv_;
  int rank_ = 0;
};

}  // namespace realrad
