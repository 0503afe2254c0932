#include "realrad/moment.hpp"

#include <sstream>
#include <stdexcept>

namespace realrad {

MomentStructure build_structure(int n, int d, long long side_cap) {
  if (n < 1) throw std::invalid_argument("moment structure needs at least one variable");
  if (d < 0) throw std::invalid_argument("moment order must be nonnegative");
  long long side = monomial_count(n, d);
  if (side > side_cap) {
    std::ostringstream os;
    os << "moment matrix side " << side << " exceeds the cap of " << side_cap;
    throw std::runtime_error(os.str());
  }

  MomentStructure ms;
  ms.n = n;
  ms.d = d;
  ms.side = side;
  ms.index_table.resize(side, side);

  MonomialBasis small(n, d);
  MonomialBasis big(n, 2 * d);
  for (long long i = 0; i < side; ++i)
    for (long long j = i; j < side; ++j) {
      long long id = big.position(small.monomial(i) * small.monomial(j));
      ms.index_table(i, j) = id;
      ms.index_table(j, i) = id;
    }

  ms.constraints.push_back({0, 0, -1, -1});
  std::vector<long long> first_i(static_cast<size_t>(monomial_count(n, 2 * d)), -1);
  std::vector<long long> first_j(first_i.size(), -1);
  for (long long i = 0; i < side; ++i)
    for (long long j = i; j < side; ++j) {
      long long id = ms.index_table(i, j);
      if (first_i[static_cast<size_t>(id)] < 0) {
        first_i[static_cast<size_t>(id)] = i;
        first_j[static_cast<size_t>(id)] = j;
      } else {
        ms.constraints.push_back(
            {i, j, first_i[static_cast<size_t>(id)], first_j[static_cast<size_t>(id)]});
      }
    }
  return ms;
}

namespace {

// symmetric matrix whose Frobenius product with a symmetric M is M_ab
void add_cell(Eigen::MatrixXd& A, long long a, long long b, double w) {
  if (a == b) {
    A(a, a) += w;
  } else {
    A(a, b) += 0.5 * w;
    A(b, a) += 0.5 * w;
  }
}

}  // namespace

Eigen::MatrixXd representative(const MomentStructure& ms, long long t) {
  if (t < 0 || t >= ms.eta()) throw std::out_of_range("constraint index out of range");
  const MomentConstraint& c = ms.constraints[static_cast<size_t>(t)];
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(ms.side, ms.side);
  add_cell(A, c.i, c.j, 1.0);
  if (!c.is_normalization()) add_cell(A, c.g, c.h, -1.0);
  return A;
}

Eigen::MatrixXd assemble_B(const PolySystem& Q, int d, const ToleranceConfig& tol) {
  if (Q.empty() || Q.degree() < 0)
    throw std::invalid_argument("cannot assemble constraints from a zero system");
  if (Q.degree() > d)
    throw std::invalid_argument("generator degree exceeds the moment order");
  CoefficientMatrix cm = coefficient_matrix(Q, d);
  RankKernel rk = rank_kernel(cm.entries, tol.svd_rel_tol);
  return rk.rowspace.basis;
}

long long FacedProblem::face_side() const {
  if (!face_chain.empty()) return face_chain.back().cols();
  return V.cols();
}

Eigen::MatrixXd FacedProblem::face_basis() const {
  Eigen::MatrixXd F = V;
  for (const auto& W : face_chain) F = F * W;
  return F;
}

void assemble_face(FacedProblem& fp, const ToleranceConfig& tol) {
  tol.validate();
  Eigen::MatrixXd F = fp.face_basis();
  long long w = F.cols();
  if (w == 0)
    throw std::runtime_error("facial reduction removed every moment direction");
  long long sv = w * (w + 1) / 2;

  fp.reduced_reps.clear();
  fp.kept_rows.clear();
  fp.dropped_rows = 0;

  auto cell = [&](long long a, long long b) -> Eigen::MatrixXd {
    Eigen::VectorXd fa = F.row(a);
    if (a == b) return fa * fa.transpose();
    Eigen::VectorXd fb = F.row(b);
    return 0.5 * (fa * fb.transpose() + fb * fa.transpose());
  };

  std::vector<Eigen::VectorXd> ortho;
  std::vector<Eigen::VectorXd> rows;
  const auto& cons = fp.structure.constraints;
  for (size_t t = 0; t < cons.size(); ++t) {
    Eigen::MatrixXd At = cell(cons[t].i, cons[t].j);
    double scale = At.norm();
    if (!cons[t].is_normalization()) {
      Eigen::MatrixXd Bt = cell(cons[t].g, cons[t].h);
      scale = std::max(scale, Bt.norm());
      At -= Bt;
    }
    Eigen::VectorXd row = svec(At);
    double base = row.norm();
    if (t == 0) {
      if (base <= 1e-12)
        throw std::runtime_error(
            "normalization constraint vanished on the face; the generators span a unit");
      ortho.push_back(row / base);
    } else {
      // a repeat constraint whose two cells coincide on the face cancels to
      // roundoff; its direction is pure noise and must not enter the manifold
      if (static_cast<long long>(ortho.size()) == sv ||
          base <= tol.svd_rel_tol * scale) {
        ++fp.dropped_rows;  // the kept rows already span the whole space
        continue;
      }
      Eigen::VectorXd r = row;
      for (const auto& q : ortho) r -= q.dot(r) * q;
      for (const auto& q : ortho) r -= q.dot(r) * q;  // re-orthogonalize once
      // membership in the span of the kept rows is judged at the subspace
      // slack, not the SVD cutoff: the face basis carries noise well above
      // machine precision and a nearly dependent row poisons the projector
      if (r.norm() <= tol.containment_tol * base) {
        ++fp.dropped_rows;
        continue;
      }
      ortho.push_back(r / r.norm());
    }
    fp.kept_rows.push_back(static_cast<long long>(t));
    fp.reduced_reps.push_back(std::move(At));
    rows.push_back(std::move(row));
  }

  fp.L.resize(static_cast<Eigen::Index>(rows.size()), sv);
  for (size_t r = 0; r < rows.size(); ++r) fp.L.row(static_cast<Eigen::Index>(r)) = rows[r];
  fp.rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows.size()));
  fp.rhs(0) = 1.0;
}

FacedProblem facial_reduce_first(const MomentStructure& ms, const Eigen::MatrixXd& B,
                                 const ToleranceConfig& tol) {
  if (B.rows() != ms.side)
    throw std::invalid_argument("constraint basis does not match the moment side");
  if (B.cols() > 0) {
    double defect = (B.transpose() * B -
                     Eigen::MatrixXd::Identity(B.cols(), B.cols()))
                        .norm();
    if (defect > 1e-8)
      throw std::invalid_argument("constraint basis must be orthonormal");
  }
  FacedProblem fp;
  fp.structure = ms;
  fp.B = B;
  fp.V = orthonormal_complement(B, tol.svd_rel_tol);
  if (fp.V.cols() == 0)
    throw std::runtime_error("generators constrain every moment direction");
  assemble_face(fp, tol);
  return fp;
}

MomentSolution lift_and_extract(const FacedProblem& fp, const Eigen::MatrixXd& reduced,
                                const ToleranceConfig& tol) {
  long long w = fp.face_side();
  if (reduced.rows() != w || reduced.cols() != w)
    throw std::invalid_argument("reduced matrix does not match the face side");
  Eigen::MatrixXd F = fp.face_basis();
  Eigen::MatrixXd M = F * reduced * F.transpose();
  M = 0.5 * (M + M.transpose());

  if (fp.B.cols() > 0 && (fp.B.transpose() * M).norm() > 1e-8)
    throw std::runtime_error("lifted moment matrix violates the generator constraints");

  MomentSolution sol;
  sol.reduced = reduced;
  sol.full = M;
  RankKernel rk = rank_kernel(M, tol.svd_rel_tol);
  sol.rank = rk.rank;
  sol.degenerate = M(0, 0) < 1e-6;

  MonomialBasis basis(fp.structure.n, fp.structure.d);
  PolySystem polys(fp.structure.n);
  for (int c = 0; c < rk.kernel.dim(); ++c)
    polys.push_back(normalize_largest_coefficient(
        Polynomial::from_coefficients(basis, rk.kernel.basis.col(c))));
  sol.kernel_polys = std::move(polys);
  return sol;
}

}  // namespace realrad
