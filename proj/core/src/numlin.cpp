#include "realrad/numlin.hpp"

#include <cmath>
#include <stdexcept>

namespace realrad {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_finite(const Eigen::MatrixXd& A, const char* what) {
  if (!A.allFinite())
    throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

int rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (smax <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * smax) ++r;
  return r;
}

}  // namespace

void ToleranceConfig::validate() const {
  auto bad = [](double v) { return !(v > 0.0) || !(v < 1.0); };
  if (bad(svd_rel_tol) || bad(residual_tol) || bad(containment_tol))
    throw std::invalid_argument("tolerances must lie strictly between 0 and 1");
}

RankKernel rank_kernel(const Eigen::MatrixXd& A, double svd_rel_tol) {
  check_finite(A, "rank_kernel input");
  int cols = static_cast<int>(A.cols());
  RankKernel out;
  out.kernel.ambient = cols;
  out.rowspace.ambient = cols;
  if (A.rows() == 0 || cols == 0 || A.isZero(0.0)) {
    out.rank = 0;
    out.kernel.basis = Eigen::MatrixXd::Identity(cols, cols);
    out.rowspace.basis = Eigen::MatrixXd(cols, 0);
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  int r = rank_from_singular_values(svd.singularValues(), svd_rel_tol);
  out.rank = r;
  out.rowspace.basis = svd.matrixV().leftCols(r);
  out.kernel.basis = svd.matrixV().rightCols(cols - r);
  return out;
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& B, double svd_rel_tol) {
  check_finite(B, "orthonormal_complement input");
  int m = static_cast<int>(B.rows());
  int k = static_cast<int>(B.cols());
  if (k == 0) return Eigen::MatrixXd::Identity(m, m);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullU);
  int r = rank_from_singular_values(svd.singularValues(), svd_rel_tol);
  if (r != k)
    throw std::invalid_argument("orthonormal_complement needs full column rank");
  return svd.matrixU().rightCols(m - k);
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& S) {
  check_finite(S, "psd_project input");
  if (S.rows() != S.cols())
    throw std::invalid_argument("psd_project needs a square matrix");
  Eigen::MatrixXd sym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed in psd_project");
  Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::VectorXd svec(const Eigen::MatrixXd& S) {
  if (S.rows() != S.cols())
    throw std::invalid_argument("svec needs a square matrix");
  int k = static_cast<int>(S.rows());
  Eigen::VectorXd v(k * (k + 1) / 2);
  Eigen::Index t = 0;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= j; ++i)
      v(t++) = (i == j) ? S(i, i) : kSqrt2 * 0.5 * (S(i, j) + S(j, i));
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v) {
  Eigen::Index len = v.size();
  int k = static_cast<int>((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0);
  while (static_cast<Eigen::Index>(k) * (k + 1) / 2 < len) ++k;
  if (static_cast<Eigen::Index>(k) * (k + 1) / 2 != len)
    throw std::invalid_argument("smat input length is not a triangular number");
  Eigen::MatrixXd S(k, k);
  Eigen::Index t = 0;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= j; ++i) {
      double x = v(t++);
      if (i == j) {
        S(i, i) = x;
      } else {
        double y = x / kSqrt2;
        S(i, j) = y;
        S(j, i) = y;
      }
    }
  return S;
}

bool subspace_contained(const SubspaceBasis& inner, const SubspaceBasis& outer,
                        double tol) {
  if (inner.ambient != outer.ambient)
    throw std::invalid_argument("subspace_contained ambient dimensions differ");
  if (inner.dim() == 0) return true;
  if (outer.dim() == 0) return false;
  for (int j = 0; j < inner.dim(); ++j) {
    Eigen::VectorXd a = inner.basis.col(j);
    Eigen::VectorXd res = a - outer.basis * (outer.basis.transpose() * a);
    if (res.norm() > tol) return false;
  }
  return true;
}

LeastNormUpdate least_norm_update(const Eigen::MatrixXd& L, const Eigen::VectorXd& p_c,
                                  const Eigen::VectorXd& b, const ToleranceConfig& tol) {
  if (L.rows() != b.size() || L.cols() != p_c.size())
    throw std::invalid_argument("least_norm_update dimension mismatch");
  LinearManifoldProjector proj(L, b, tol.svd_rel_tol);
  LeastNormUpdate out;
  out.point = proj.project(p_c);
  out.residual = proj.residual_norm(out.point);
  out.consistent = out.residual <= tol.residual_tol;
  return out;
}

LinearManifoldProjector::LinearManifoldProjector(Eigen::MatrixXd L, Eigen::VectorXd b,
                                                 double svd_rel_tol)
    : L_(std::move(L)), b_(std::move(b)) {
  check_finite(L_, "manifold matrix");
  if (L_.rows() != b_.size())
    throw std::invalid_argument("manifold rhs length mismatch");
  if (L_.rows() == 0 || L_.cols() == 0) {
    rank_ = 0;
    return;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(L_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  rank_ = rank_from_singular_values(svd.singularValues(), svd_rel_tol);
  U_ = svd.matrixU().leftCols(rank_);
  V_ = svd.matrixV().leftCols(rank_);
  sigma_inv_ = svd.singularValues().head(rank_).cwiseInverse();
}

Eigen::VectorXd LinearManifoldProjector::apply_pinv(const Eigen::VectorXd& r) const {
  if (rank_ == 0) return Eigen::VectorXd::Zero(L_.cols());
  return V_ * (sigma_inv_.asDiagonal() * (U_.transpose() * r));
}

Eigen::VectorXd LinearManifoldProjector::project(const Eigen::VectorXd& p) const {
  return p + apply_pinv(b_ - L_ * p);
}

double LinearManifoldProjector::residual_norm(const Eigen::VectorXd& p) const {
  if (L_.rows() == 0) return 0.0;
  return (b_ - L_ * p).norm();
}

}  // namespace realrad
