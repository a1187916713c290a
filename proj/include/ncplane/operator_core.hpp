#pragma once

// Truncated Fock-space representations of noncommutative-plane operators.
//
// An N-level truncation of the oscillator ladder operator Z satisfies
// [Z, Z*] = 1 everywhere except the last diagonal entry, which equals
// -(N-1). All algebraic checks in this library therefore look at the
// "leading block": basis states below the top level of every truncated
// factor.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ncplane::ops {

using Complex = std::complex<double>;

// Dense complex square matrix acting on a truncated Fock space.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(Eigen::MatrixXcd entries);

  static OperatorMatrix zero(std::size_t dim);
  static OperatorMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t row, std::size_t col) const;
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  bool is_hermitian(double tol = 1e-12) const;
  OperatorMatrix adjoint() const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

// Geometric length scale of a plane with [X, Y] = i L^2.
struct NcParams {
  double length_scale = 1.0;
  double hbar = 1.0;

  void validate() const;
};

struct LadderPair {
  OperatorMatrix lower;  // Z
  OperatorMatrix raise;  // Z*
};

struct PlanePair {
  OperatorMatrix x;
  OperatorMatrix y;
};

// Z(n-1, n) = sqrt(n), Z* its adjoint. Throws InvalidArgument for dim < 2.
LadderPair build_ladder(std::size_t dim);

// X = L (Z + Z*) / sqrt 2, Y = L (Z - Z*) / (i sqrt 2), so [X, Y] = i L^2
// on the leading block.
PlanePair build_xy(const NcParams& params, std::size_t dim);

// S^2 = L^2 (2 Z* Z + 1).
OperatorMatrix distance_squared_operator(const NcParams& params, std::size_t dim);

// Eigenvalues of S^2, ascending. Exact values are L^2 (2n + 1).
std::vector<double> distance_spectrum(const NcParams& params, std::size_t dim);

// AB - BA. Throws InvalidArgument on dimension mismatch.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Kronecker product a (x) b.
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

// Ascending eigenvalues of a Hermitian operator.
std::vector<double> hermitian_eigenvalues(const OperatorMatrix& op, double tol = 1e-12);

// Expectation <psi|A|psi> / <psi|psi>.
Complex expectation(const OperatorMatrix& op, const Eigen::VectorXcd& state);

// <A^2> - <A>^2 for Hermitian A.
double variance(const OperatorMatrix& op, const Eigen::VectorXcd& state);

// Basis-state selector for leading-block checks.
using LeadingMask = std::vector<bool>;

// States 0..dim-2 of a single truncated oscillator.
LeadingMask leading_mask_single(std::size_t dim);

// States (i, j) of factor_dim x factor_dim with i, j < factor_dim - 1.
LeadingMask leading_mask_tensor(std::size_t factor_dim);

// Compression of op onto the leading states selected by mask.
OperatorMatrix leading_block(const OperatorMatrix& op, const LeadingMask& mask);

// Value of one commutator [A, B] as seen on the leading block.
struct CommutatorEntry {
  std::string left;
  std::string right;
  Complex leading_value;      // C(0, 0); the block should be this times identity
  double leading_residual;    // max |C_ij - leading_value delta_ij| over the block
  Complex truncation_value;   // C at the highest basis state
};

// Pairwise commutator table for a set of named operators.
class CommutatorReport {
 public:
  CommutatorReport(std::vector<std::string> names, std::vector<std::vector<CommutatorEntry>> table);

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  const CommutatorEntry& at(std::size_t i, std::size_t j) const;
  const CommutatorEntry& at(const std::string& left, const std::string& right) const;

 private:
  std::size_t index_of(const std::string& name) const;

  std::vector<std::string> names_;
  std::vector<std::vector<CommutatorEntry>> table_;
};

struct NamedOperator {
  std::string name;
  OperatorMatrix op;
};

CommutatorReport make_commutator_report(std::span<const NamedOperator> ops, const LeadingMask& mask);

}  // namespace ncplane::ops
