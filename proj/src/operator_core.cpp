#include "ncplane/operator_core.hpp"

#include "ncplane/error.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncplane::ops {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_dim(std::size_t dim, std::size_t min_dim) {
  if (dim < min_dim) {
    std::ostringstream msg;
    msg << "dim must be ≥ " << min_dim << " (got " << dim << ")";
    throw InvalidArgument(msg.str());
  }
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InvalidArgument("operator matrix must be square and non-empty");
  }
}

OperatorMatrix OperatorMatrix::zero(std::size_t dim) {
  return OperatorMatrix(Eigen::MatrixXcd::Zero(idx(dim), idx(dim)));
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
  return OperatorMatrix(Eigen::MatrixXcd::Identity(idx(dim), idx(dim)));
}

Complex OperatorMatrix::operator()(std::size_t row, std::size_t col) const {
  if (row >= dim() || col >= dim()) throw InvalidArgument("operator index out of range");
  return m_(idx(row), idx(col));
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(m_.adjoint()); }

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("operator dimension mismatch in sum");
  return OperatorMatrix(a.m_ + b.m_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("operator dimension mismatch in difference");
  return OperatorMatrix(a.m_ - b.m_);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("operator dimension mismatch in product");
  return OperatorMatrix(a.m_ * b.m_);
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) { return OperatorMatrix(s * a.m_); }

void NcParams::validate() const {
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw InvalidArgument("length scale L must be > 0");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar must be > 0");
}

LadderPair build_ladder(std::size_t dim) {
  require_dim(dim, 2);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(idx(dim), idx(dim));
  for (std::size_t n = 1; n < dim; ++n) {
    z(idx(n - 1), idx(n)) = std::sqrt(static_cast<double>(n));
  }
  OperatorMatrix lower(z);
  return {lower, lower.adjoint()};
}

PlanePair build_xy(const NcParams& params, std::size_t dim) {
  params.validate();
  const auto [z, zd] = build_ladder(dim);
  const double scale = params.length_scale / std::sqrt(2.0);
  OperatorMatrix x = Complex{scale, 0.0} * (z + zd);
  OperatorMatrix y = (scale / kI) * (z - zd);
  return {std::move(x), std::move(y)};
}

OperatorMatrix distance_squared_operator(const NcParams& params, std::size_t dim) {
  params.validate();
  const auto [z, zd] = build_ladder(dim);
  const double l2 = params.length_scale * params.length_scale;
  return Complex{l2, 0.0} * (Complex{2.0, 0.0} * (zd * z) + OperatorMatrix::identity(dim));
}

std::vector<double> distance_spectrum(const NcParams& params, std::size_t dim) {
  return hermitian_eigenvalues(distance_squared_operator(params, dim));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "commutator dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw InvalidArgument(msg.str());
  }
  return a * b - b * a;
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  Eigen::MatrixXcd k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return OperatorMatrix(std::move(k));
}

std::vector<double> hermitian_eigenvalues(const OperatorMatrix& op, double tol) {
  if (!op.is_hermitian(tol)) throw InvalidArgument("operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

Complex expectation(const OperatorMatrix& op, const Eigen::VectorXcd& state) {
  if (static_cast<std::size_t>(state.size()) != op.dim()) {
    throw InvalidArgument("state dimension does not match operator");
  }
  const double norm2 = state.squaredNorm();
  if (!(norm2 > 0.0)) throw InvalidArgument("state has zero norm");
  return state.dot(op.matrix() * state) / norm2;
}

double variance(const OperatorMatrix& op, const Eigen::VectorXcd& state) {
  const Complex mean = expectation(op, state);
  const Complex second = expectation(op * op, state);
  return second.real() - std::norm(mean);
}

LeadingMask leading_mask_single(std::size_t dim) {
  LeadingMask mask(dim, true);
  if (dim > 0) mask.back() = false;
  return mask;
}

LeadingMask leading_mask_tensor(std::size_t factor_dim) {
  LeadingMask mask(factor_dim * factor_dim, false);
  for (std::size_t i = 0; i + 1 < factor_dim; ++i) {
    for (std::size_t j = 0; j + 1 < factor_dim; ++j) mask[i * factor_dim + j] = true;
  }
  return mask;
}

OperatorMatrix leading_block(const OperatorMatrix& op, const LeadingMask& mask) {
  if (mask.size() != op.dim()) throw InvalidArgument("leading mask size does not match operator");
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) keep.push_back(idx(i));
  }
  if (keep.empty()) throw InvalidArgument("leading mask selects no states");
  const auto n = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = op.matrix()(keep[r], keep[c]);
  }
  return OperatorMatrix(std::move(out));
}

CommutatorReport::CommutatorReport(std::vector<std::string> names,
                                   std::vector<std::vector<CommutatorEntry>> table)
    : names_(std::move(names)), table_(std::move(table)) {}

const CommutatorEntry& CommutatorReport::at(std::size_t i, std::size_t j) const {
  return table_.at(i).at(j);
}

const CommutatorEntry& CommutatorReport::at(const std::string& left, const std::string& right) const {
  return at(index_of(left), index_of(right));
}

std::size_t CommutatorReport::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidArgument("no operator named '" + name + "' in report");
  return static_cast<std::size_t>(it - names_.begin());
}

CommutatorReport make_commutator_report(std::span<const NamedOperator> ops, const LeadingMask& mask) {
  std::vector<std::string> names;
  std::vector<std::vector<CommutatorEntry>> table;
  for (const auto& a : ops) names.push_back(a.name);

  for (const auto& a : ops) {
    std::vector<CommutatorEntry> row;
    for (const auto& b : ops) {
      const OperatorMatrix c = commutator(a.op, b.op);
      const OperatorMatrix block = leading_block(c, mask);
      const Complex value = block(0, 0);
      const Eigen::MatrixXcd expected =
          value * Eigen::MatrixXcd::Identity(idx(block.dim()), idx(block.dim()));
      const double residual = (block.matrix() - expected).cwiseAbs().maxCoeff();
      const std::size_t top = c.dim() - 1;
      row.push_back({a.name, b.name, value, residual, c(top, top)});
    }
    table.push_back(std::move(row));
  }
  return CommutatorReport(std::move(names), std::move(table));
}

}  // namespace ncplane::ops
