#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <memory>
#include <vector>

#include "fsidwr/constraints.hpp"

namespace fsidwr {

using SparseMatrix = Eigen::SparseMatrix<double>;  // CSC, int indices

/// Sparsity pattern over the constraint-expanded cell couplings: every cell's
/// DoF set is widened by the masters of its constrained DoFs and coupled
/// all-to-all. The pattern is structurally symmetric by construction.
SparseMatrix build_sparsity(int n_dofs, const std::vector<std::vector<int>>& cell_dof_sets,
                            const ConstraintSet& constraints);

/// Adds v to an existing entry of the compressed matrix. A missing entry is
/// a hard error (the pattern must cover all couplings).
void scatter_add(SparseMatrix& A, int row, int col, double v);

/// Scatters a local matrix/vector pair with on-the-fly constraint
/// elimination: constrained rows and columns are redistributed to their
/// masters, column inhomogeneities move to the right-hand side (unless
/// homogeneous), and constrained diagonal entries are left for
/// finalize_constrained_rows.
void distribute_local_to_global(const Eigen::MatrixXd& local_matrix,
                                const std::vector<int>& dofs, const ConstraintSet& constraints,
                                SparseMatrix& A, Eigen::VectorXd* rhs = nullptr,
                                bool homogeneous = true);

void distribute_local_to_global(const Eigen::VectorXd& local_vector,
                                const std::vector<int>& dofs, const ConstraintSet& constraints,
                                Eigen::VectorXd& b);

/// Puts 1 on the diagonal of every constrained row and the inhomogeneity
/// (or 0 if homogeneous) into the right-hand side, so the solve returns the
/// constrained values directly.
void finalize_constrained_rows(const ConstraintSet& constraints, SparseMatrix& A,
                               Eigen::VectorXd* rhs = nullptr, bool homogeneous = true);

/// Sparse LU factorization (UMFPACK). One factorization serves both A x = b
/// and A^T x = b solves.
class SparseLU {
 public:
  SparseLU();
  explicit SparseLU(const SparseMatrix& A);
  ~SparseLU();
  SparseLU(SparseLU&&) noexcept;
  SparseLU& operator=(SparseLU&&) noexcept;

  /// Factorizes A; throws on singular or numerically unusable matrices.
  void factorize(const SparseMatrix& A);

  Eigen::VectorXd solve(const Eigen::VectorXd& b, bool transpose = false) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Factor-and-solve with a relative residual check ||Ax-b||/||b|| < 1e-10.
Eigen::VectorXd direct_solve(const SparseMatrix& A, const Eigen::VectorXd& b);

/// Same contract for A^T x = b.
Eigen::VectorXd transpose_solve(const SparseMatrix& A, const Eigen::VectorXd& b);

}  // namespace fsidwr
