#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace realrad {

/// Degree of the zero polynomial (stands in for -infinity; every comparison
/// against a nonnegative degree does the right thing).
constexpr int kZeroDegree = -1;

/// Exponent vector over a fixed variable count. Ordered the same way
/// coefficient-matrix columns are: ascending total degree, ties broken by
/// lexicographically descending exponent vectors, so each degree block starts
/// with the pure power of x1 and ends with the pure power of xn.
class Monomial {
 public:
  explicit Monomial(std::vector<int> exponents);
  static Monomial constant(int n);
  static Monomial variable(int n, int index);  // x_{index}, 0-based

  int var_count() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  int exponent(int i) const { return exps_.at(static_cast<size_t>(i)); }
  const std::vector<int>& exponents() const { return exps_; }

  /// 1-based index of the first variable with a positive exponent
  /// (the "class" used by the Cartan test); 0 for the constant monomial.
  int class_index() const;

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }
  bool operator<(const Monomial& other) const;  // basis order described above

 private:
  std::vector<int> exps_;
};

/// Number of monomials in n variables of degree <= d, i.e. binomial(d+n, n).
/// d < 0 yields 0. Throws std::overflow_error if the count does not fit.
long long monomial_count(int n, int d);

/// Position of m among all monomials of degree <= basis_degree under the
/// basis order. The position does not depend on basis_degree; the argument
/// only bounds-checks deg(m) <= basis_degree.
long long grevlex_position(const Monomial& m, int basis_degree);

/// All monomials of degree <= degree in basis order.
class MonomialBasis {
 public:
  MonomialBasis(int n, int degree);

  int var_count() const { return n_; }
  int degree() const { return degree_; }
  long long size() const { return static_cast<long long>(monomials_.size()); }
  const Monomial& monomial(long long i) const {
    return monomials_.at(static_cast<size_t>(i));
  }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  long long position(const Monomial& m) const;

 private:
  int n_;
  int degree_;
  std::vector<Monomial> monomials_;
};

/// Sparse polynomial with double coefficients. Exact zero coefficients are
/// never stored; the term map iterates in basis order.
class Polynomial {
 public:
  explicit Polynomial(int n) : n_(n) {}
  Polynomial(int n, const std::map<Monomial, double>& terms);

  int var_count() const { return n_; }
  int degree() const;  // kZeroDegree for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  double coefficient(const Monomial& m) const;
  const std::map<Monomial, double>& terms() const { return terms_; }

  void add_term(const Monomial& m, double c);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  double evaluate(const Eigen::VectorXd& point) const;

  /// Coefficient row against the basis of the given degree.
  Eigen::VectorXd coefficient_vector(int degree) const;
  static Polynomial from_coefficients(const MonomialBasis& basis,
                                      const Eigen::VectorXd& coeffs);

 private:
  int n_;
  std::map<Monomial, double> terms_;
};

/// A finite list of polynomials in a shared variable count.
class PolySystem {
 public:
  explicit PolySystem(int n) : n_(n) {}
  PolySystem(int n, std::vector<Polynomial> polys);

  int var_count() const { return n_; }
  int size() const { return static_cast<int>(polys_.size()); }
  bool empty() const { return polys_.empty(); }
  int degree() const;  // max over members, kZeroDegree when all zero
  const Polynomial& operator[](int i) const {
    return polys_.at(static_cast<size_t>(i));
  }
  const std::vector<Polynomial>& polynomials() const { return polys_; }
  void push_back(Polynomial p);

 private:
  int n_;
  std::vector<Polynomial> polys_;
};

struct CoefficientMatrix {
  MonomialBasis basis;
  Eigen::MatrixXd entries;  // one row per polynomial
};

/// Rows are the systems' coefficient vectors against the degree-d basis.
/// Throws std::invalid_argument when degree < deg(ps).
CoefficientMatrix coefficient_matrix(const PolySystem& ps, int degree);

/// Substitutes x -> T x in every polynomial. Throws std::invalid_argument
/// when T is not n x n or its condition number is 1e8 or worse.
PolySystem apply_coordinate_change(const PolySystem& ps, const Eigen::MatrixXd& T);

/// Divides by the signed largest-magnitude coefficient (ties: first in basis
/// order) so that coefficient becomes +1. Zero polynomials pass through.
Polynomial normalize_largest_coefficient(const Polynomial& p);

// --- text format ------------------------------------------------------
//
// One polynomial per line. '#' starts a comment. An optional first line
// "vars: <n>" fixes the variable count; otherwise it is the largest index
// used. Terms look like [coef][*]x<i>[^<e>]... and are joined by + or -.

PolySystem parse_system(const std::string& text);
PolySystem parse_system_file(const std::string& path);
Polynomial parse_polynomial(const std::string& line, int n);

/// Coefficients print with 17 significant digits so parsing the result
/// reproduces the polynomial exactly.
std::string format_polynomial(const Polynomial& p);
std::string format_system(const PolySystem& ps);

}  // namespace realrad
