#pragma once

#include <vector>

#include <Eigen/Dense>

#include "realrad/numlin.hpp"
#include "realrad/polysys.hpp"

namespace realrad {

// One linear relation between entries of the structured moment matrix.
// Cells are 0-based upper-triangle positions; the normalization row
// (moment of the constant monomial equals one) has g = h = -1.
struct MomentConstraint {
  long long i = 0;
  long long j = 0;
  long long g = -1;
  long long h = -1;
  bool is_normalization() const { return g < 0; }
};

// Generalized-Hankel structure of the moment matrix of order d in n
// variables: side N(n, d), entries indexed by exponent sums of degree
// at most 2d, one equality constraint per repeated sum plus the
// normalization on the (1,1) entry.
struct MomentStructure {
  int n = 0;
  int d = 0;
  long long side = 0;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> index_table;
  std::vector<MomentConstraint> constraints;
  long long eta() const { return static_cast<long long>(constraints.size()); }
};

MomentStructure build_structure(int n, int d, long long side_cap = 2000);

// Dense symmetric representative A_t of constraint t (0-based):
// <A_t, M> = M_ij - M_gh for symmetric M, and A_1 picks the (1,1) entry.
Eigen::MatrixXd representative(const MomentStructure& ms, long long t);

// Orthonormal basis of the span of the coefficient vectors of Q at degree d.
Eigen::MatrixXd assemble_B(const PolySystem& Q, int d, const ToleranceConfig& tol);

// The moment feasibility problem restricted to the face orthogonal to the
// generator constraints, in svec coordinates of the face.
struct FacedProblem {
  MomentStructure structure;
  Eigen::MatrixXd B;                          // side x m, orthonormal
  Eigen::MatrixXd V;                          // side x (side - m), V'V = I, V'B = 0
  std::vector<Eigen::MatrixXd> face_chain;    // subsequent reductions W
  std::vector<Eigen::MatrixXd> reduced_reps;  // kept representatives on the face
  Eigen::VectorXd rhs;                        // e1 over the kept rows
  Eigen::MatrixXd L;                          // kept rows x face svec dimension
  std::vector<long long> kept_rows;           // constraint ids surviving compression
  long long dropped_rows = 0;

  long long face_side() const;
  // V composed with the whole face_chain
  Eigen::MatrixXd face_basis() const;
};

// Rebuilds reduced_reps, L, rhs and the compression bookkeeping for the face
// currently described by fp.V and fp.face_chain.
void assemble_face(FacedProblem& fp, const ToleranceConfig& tol);

FacedProblem facial_reduce_first(const MomentStructure& ms, const Eigen::MatrixXd& B,
                                 const ToleranceConfig& tol);

struct MomentSolution {
  Eigen::MatrixXd reduced;
  Eigen::MatrixXd full;
  long long rank = 0;
  PolySystem kernel_polys{0};
  bool degenerate = false;  // lifted matrix lost the unit (1,1) entry
};

MomentSolution lift_and_extract(const FacedProblem& fp, const Eigen::MatrixXd& reduced,
                                const ToleranceConfig& tol);

}  // namespace realrad
