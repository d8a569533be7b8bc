#include "fsidwr/linalg.hpp"

#include <umfpack.h>

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>

namespace fsidwr {

SparseMatrix build_sparsity(int n_dofs, const std::vector<std::vector<int>>& cell_dof_sets,
                            const ConstraintSet& constraints) {
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<int> expanded;
  for (const auto& dofs : cell_dof_sets) {
    expanded.clear();
    for (const int d : dofs) {
      expanded.push_back(d);
      if (const Constraint* c = constraints.get(d))
        for (const auto& [m, w] : c->entries) expanded.push_back(m);
    }
    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
    for (const int i : expanded)
      for (const int j : expanded) trips.emplace_back(i, j, 0.0);
  }
  for (int d = 0; d < n_dofs; ++d) trips.emplace_back(d, d, 0.0);
  SparseMatrix A(n_dofs, n_dofs);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

void scatter_add(SparseMatrix& A, int row, int col, double v) {
  const int* outer = A.outerIndexPtr();
  const int* inner = A.innerIndexPtr();
  double* vals = A.valuePtr();
  const int begin = outer[col];
  const int end = outer[col + 1];
  const int* it = std::lower_bound(inner + begin, inner + end, row);
  if (it == inner + end || *it != row)
    throw std::runtime_error("scatter_add: entry outside sparsity pattern");
  vals[it - inner] += v;
}

void distribute_local_to_global(const Eigen::MatrixXd& local, const std::vector<int>& dofs,
                                const ConstraintSet& constraints, SparseMatrix& A,
                                Eigen::VectorXd* rhs, bool homogeneous) {
  const int n = static_cast<int>(dofs.size());
  thread_local std::vector<const Constraint*> cons;
  cons.assign(n, nullptr);
  for (int i = 0; i < n; ++i) cons[i] = constraints.get(dofs[i]);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = local(i, j);
      if (v == 0.0) continue;
      if (!cons[i] && !cons[j]) {
        scatter_add(A, dofs[i], dofs[j], v);
        continue;
      }
      const std::pair<int, double> self_i{dofs[i], 1.0};
      const std::pair<int, double> self_j{dofs[j], 1.0};
      const auto row_terms =
          cons[i] ? std::span<const std::pair<int, double>>(cons[i]->entries)
                  : std::span<const std::pair<int, double>>(&self_i, 1);
      const auto col_terms =
          cons[j] ? std::span<const std::pair<int, double>>(cons[j]->entries)
                  : std::span<const std::pair<int, double>>(&self_j, 1);
      for (const auto& [ri, wi] : row_terms) {
        for (const auto& [cj, wj] : col_terms) scatter_add(A, ri, cj, v * wi * wj);
        if (rhs && !homogeneous && cons[j] && cons[j]->inhomogeneity != 0.0)
          (*rhs)[ri] -= v * wi * cons[j]->inhomogeneity;
      }
    }
  }
}

void distribute_local_to_global(const Eigen::VectorXd& local, const std::vector<int>& dofs,
                                const ConstraintSet& constraints, Eigen::VectorXd& b) {
  for (int i = 0; i < static_cast<int>(dofs.size()); ++i) {
    if (const Constraint* c = constraints.get(dofs[i])) {
      for (const auto& [m, w] : c->entries) b[m] += w * local[i];
    } else {
      b[dofs[i]] += local[i];
    }
  }
}

void finalize_constrained_rows(const ConstraintSet& constraints, SparseMatrix& A,
                               Eigen::VectorXd* rhs, bool homogeneous) {
  for (const int dof : constraints.constrained_dofs()) {
    scatter_add(A, dof, dof, 1.0);
    if (rhs) (*rhs)[dof] = homogeneous ? 0.0 : constraints.get(dof)->inhomogeneity;
  }
}

struct SparseLU::Impl {
  void* numeric = nullptr;
  SparseMatrix A;  // keep the factorized matrix for solves and residuals

  ~Impl() {
    if (numeric) umfpack_di_free_numeric(&numeric);
  }
};

SparseLU::SparseLU() : impl_(std::make_unique<Impl>()) {}
SparseLU::SparseLU(const SparseMatrix& A) : SparseLU() { factorize(A); }
SparseLU::~SparseLU() = default;
SparseLU::SparseLU(SparseLU&&) noexcept = default;
SparseLU& SparseLU::operator=(SparseLU&&) noexcept = default;

void SparseLU::factorize(const SparseMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("SparseLU: matrix not square");
  if (impl_->numeric) {
    umfpack_di_free_numeric(&impl_->numeric);
    impl_->numeric = nullptr;
  }
  impl_->A = A;
  impl_->A.makeCompressed();
  const int n = static_cast<int>(A.rows());

  void* symbolic = nullptr;
  std::array<double, UMFPACK_CONTROL> control;
  umfpack_di_defaults(control.data());
  int status = umfpack_di_symbolic(n, n, impl_->A.outerIndexPtr(), impl_->A.innerIndexPtr(),
                                   impl_->A.valuePtr(), &symbolic, control.data(), nullptr);
  if (status != UMFPACK_OK) throw std::runtime_error("SparseLU: symbolic factorization failed");
  status = umfpack_di_numeric(impl_->A.outerIndexPtr(), impl_->A.innerIndexPtr(),
                              impl_->A.valuePtr(), symbolic, &impl_->numeric, control.data(),
                              nullptr);
  umfpack_di_free_symbolic(&symbolic);
  if (status != UMFPACK_OK)
    throw std::runtime_error("SparseLU: numeric factorization failed (singular matrix?)");
}

Eigen::VectorXd SparseLU::solve(const Eigen::VectorXd& b, bool transpose) const {
  if (!impl_->numeric) throw std::runtime_error("SparseLU: not factorized");
  Eigen::VectorXd x(b.size());
  const int sys = transpose ? UMFPACK_Aat : UMFPACK_A;
  const int status =
      umfpack_di_solve(sys, impl_->A.outerIndexPtr(), impl_->A.innerIndexPtr(),
                       impl_->A.valuePtr(), x.data(), b.data(), impl_->numeric, nullptr, nullptr);
  if (status != UMFPACK_OK) throw std::runtime_error("SparseLU: solve failed");
  return x;
}

namespace {
Eigen::VectorXd checked_solve(const SparseMatrix& A, const Eigen::VectorXd& b, bool transpose) {
  SparseLU lu(A);
  Eigen::VectorXd x = lu.solve(b, transpose);
  const double bnorm = b.norm();
  const double rnorm = transpose ? (A.transpose() * x - b).norm() : (A * x - b).norm();
  if (!(rnorm <= 1e-10 * (bnorm > 0 ? bnorm : 1.0)))
    throw std::runtime_error("direct_solve: residual check failed, ||r||/||b|| = " +
                             std::to_string(rnorm / (bnorm > 0 ? bnorm : 1.0)));
  return x;
}
}  // namespace

Eigen::VectorXd direct_solve(const SparseMatrix& A, const Eigen::VectorXd& b) {
  return checked_solve(A, b, false);
}

Eigen::VectorXd transpose_solve(const SparseMatrix& A, const Eigen::VectorXd& b) {
  return checked_solve(A, b, true);
}

}  // namespace fsidwr
