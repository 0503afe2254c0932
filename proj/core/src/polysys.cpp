#include "realrad/polysys.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace realrad {

namespace {

void check_var_count(int n) {
  if (n < 1) throw std::invalid_argument("variable count must be positive");
}

// binomial(a, b) in long long with overflow detection
long long binomial(long long a, long long b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  long long r = 1;
  for (long long i = 1; i <= b; ++i) {
    // r * (a - b + i) stays exact because r is always a binomial value
    long long num = a - b + i;
    if (r > std::numeric_limits<long long>::max() / num)
      throw std::overflow_error("binomial coefficient overflow");
    r = r * num / i;
  }
  return r;
}

// descending-lex rank of an exponent vector within its degree block
long long block_rank(const std::vector<int>& e, int from, int deg, int n_left) {
  if (n_left <= 1) return 0;
  int a = e[static_cast<size_t>(from)];
  long long r = 0;
  if (a < deg) {
    // monomials whose first exponent exceeds a come earlier
    r += binomial(deg - a - 1 + n_left - 1, n_left - 1);
  }
  return r + block_rank(e, from + 1, deg - a, n_left - 1);
}

void enumerate_block(int n_left, int deg, std::vector<int>& prefix,
                     std::vector<Monomial>& out) {
  if (n_left == 1) {
    prefix.push_back(deg);
    out.push_back(Monomial(prefix));
    prefix.pop_back();
    return;
  }
  for (int a = deg; a >= 0; --a) {
    prefix.push_back(a);
    enumerate_block(n_left - 1, deg - a, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  check_var_count(static_cast<int>(exps_.size()));
  for (int e : exps_)
    if (e < 0) throw std::invalid_argument("negative exponent");
}

Monomial Monomial::constant(int n) {
  check_var_count(n);
  return Monomial(std::vector<int>(static_cast<size_t>(n), 0));
}

Monomial Monomial::variable(int n, int index) {
  check_var_count(n);
  if (index < 0 || index >= n)
    throw std::invalid_argument("variable index out of range");
  std::vector<int> e(static_cast<size_t>(n), 0);
  e[static_cast<size_t>(index)] = 1;
  return Monomial(std::move(e));
}

int Monomial::degree() const {
  int d = 0;
  for (int e : exps_) d += e;
  return d;
}

int Monomial::class_index() const {
  for (size_t j = 0; j < exps_.size(); ++j)
    if (exps_[j] > 0) return static_cast<int>(j) + 1;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (exps_.size() != other.exps_.size())
    throw std::invalid_argument("variable count mismatch");
  std::vector<int> e(exps_);
  for (size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::operator<(const Monomial& other) const {
  if (exps_.size() != other.exps_.size())
    throw std::invalid_argument("variable count mismatch");
  int da = degree(), db = other.degree();
  if (da != db) return da < db;
  // within a degree block: lexicographically descending exponent vectors
  return exps_ > other.exps_;
}

long long monomial_count(int n, int d) {
  check_var_count(n);
  if (d < 0) return 0;
  return binomial(static_cast<long long>(d) + n, n);
}

long long grevlex_position(const Monomial& m, int basis_degree) {
  int d = m.degree();
  if (d > basis_degree)
    throw std::invalid_argument("monomial degree exceeds basis degree");
  int n = m.var_count();
  return monomial_count(n, d - 1) + block_rank(m.exponents(), 0, d, n);
}

MonomialBasis::MonomialBasis(int n, int degree) : n_(n), degree_(degree) {
  check_var_count(n);
  if (degree < 0) throw std::invalid_argument("basis degree must be nonnegative");
  long long total = monomial_count(n, degree);
  monomials_.reserve(static_cast<size_t>(total));
  std::vector<int> prefix;
  for (int d = 0; d <= degree; ++d) enumerate_block(n, d, prefix, monomials_);
}

long long MonomialBasis::position(const Monomial& m) const {
  if (m.var_count() != n_)
    throw std::invalid_argument("variable count mismatch");
  return grevlex_position(m, degree_);
}

Polynomial::Polynomial(int n, const std::map<Monomial, double>& terms) : n_(n) {
  check_var_count(n);
  for (const auto& [m, c] : terms) {
    if (m.var_count() != n)
      throw std::invalid_argument("term variable count mismatch");
    if (c != 0.0) terms_.emplace(m, c);
  }
}

int Polynomial::degree() const {
  if (terms_.empty()) return kZeroDegree;
  // the map iterates in basis order, so the last key has the top degree
  return terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double c) {
  if (m.var_count() != n_)
    throw std::invalid_argument("term variable count mismatch");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (n_ != other.n_) throw std::invalid_argument("variable count mismatch");
  Polynomial r(*this);
  for (const auto& [m, c] : other.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (n_ != other.n_) throw std::invalid_argument("variable count mismatch");
  Polynomial r(n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial r(n_);
  if (s == 0.0) return r;
  for (const auto& [m, c] : terms_) r.add_term(m, c * s);
  return r;
}

double Polynomial::evaluate(const Eigen::VectorXd& point) const {
  if (point.size() != n_) throw std::invalid_argument("point dimension mismatch");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c;
    for (int i = 0; i < n_; ++i) {
      int e = m.exponent(i);
      if (e != 0) v *= std::pow(point(i), e);
    }
    acc += v;
  }
  return acc;
}

Eigen::VectorXd Polynomial::coefficient_vector(int degree) const {
  if (degree < this->degree())
    throw std::invalid_argument("degree too small for coefficient vector");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(monomial_count(n_, degree));
  for (const auto& [m, c] : terms_) v(grevlex_position(m, degree)) = c;
  return v;
}

Polynomial Polynomial::from_coefficients(const MonomialBasis& basis,
                                         const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != basis.size())
    throw std::invalid_argument("coefficient vector length mismatch");
  Polynomial p(basis.var_count());
  for (long long i = 0; i < basis.size(); ++i)
    if (coeffs(i) != 0.0) p.add_term(basis.monomial(i), coeffs(i));
  return p;
}

PolySystem::PolySystem(int n, std::vector<Polynomial> polys)
    : n_(n), polys_(std::move(polys)) {
  check_var_count(n);
  for (const auto& p : polys_)
    if (p.var_count() != n)
      throw std::invalid_argument("system variable count mismatch");
}

int PolySystem::degree() const {
  int d = kZeroDegree;
  for (const auto& p : polys_) d = std::max(d, p.degree());
  return d;
}

void PolySystem::push_back(Polynomial p) {
  if (p.var_count() != n_)
    throw std::invalid_argument("system variable count mismatch");
  polys_.push_back(std::move(p));
}

CoefficientMatrix coefficient_matrix(const PolySystem& ps, int degree) {
  if (degree < ps.degree())
    throw std::invalid_argument("coefficient matrix degree below system degree");
  if (degree < 0) degree = 0;  // empty or zero system: N(n, 0) columns
  MonomialBasis basis(ps.var_count(), degree);
  Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(ps.size(), basis.size());
  for (int i = 0; i < ps.size(); ++i)
    entries.row(i) = ps[i].coefficient_vector(degree).transpose();
  return CoefficientMatrix{std::move(basis), std::move(entries)};
}

PolySystem apply_coordinate_change(const PolySystem& ps, const Eigen::MatrixXd& T) {
  int n = ps.var_count();
  if (T.rows() != n || T.cols() != n)
    throw std::invalid_argument("coordinate change must be n x n");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(n - 1);
  if (smin <= 0.0 || smax / smin >= 1e8)
    throw std::invalid_argument("coordinate change is singular or too ill-conditioned");

  // linear forms substituted for each variable
  std::vector<Polynomial> subs;
  subs.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial li(n);
    for (int j = 0; j < n; ++j)
      li.add_term(Monomial::variable(n, j), T(i, j));
    subs.push_back(std::move(li));
  }

  std::vector<Polynomial> out;
  out.reserve(static_cast<size_t>(ps.size()));
  for (const auto& p : ps.polynomials()) {
    Polynomial q(n);
    for (const auto& [m, c] : p.terms()) {
      Polynomial term(n);
      term.add_term(Monomial::constant(n), c);
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < m.exponent(i); ++e) term = term * subs[static_cast<size_t>(i)];
      q = q + term;
    }
    out.push_back(std::move(q));
  }
  return PolySystem(n, std::move(out));
}

Polynomial normalize_largest_coefficient(const Polynomial& p) {
  if (p.is_zero()) return p;
  double best = 0.0;
  for (const auto& [m, c] : p.terms()) {
    if (std::abs(c) > std::abs(best)) best = c;
  }
  return p * (1.0 / best);
}

}  // namespace realrad
