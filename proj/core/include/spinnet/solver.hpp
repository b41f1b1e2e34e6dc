#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "spinnet/error.hpp"
#include "spinnet/quat.hpp"

namespace spinnet {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Square operator on per-face quaternions; entry (i, j) acts on phi_j by left
// multiplication.
class QuatSparseOperator {
 public:
  explicit QuatSparseOperator(int n = 0) : n_(n) {}

  int size() const { return n_; }
  // Accumulates into entry (i, j).
  void add(int i, int j, const Quaternion& q);
  Quaternion entry(int i, int j) const;
  const std::map<std::pair<int, int>, Quaternion>& entries() const { return entries_; }

  // Rows are independent, so the threaded product is bitwise identical.
  std::vector<Quaternion> apply(const std::vector<Quaternion>& phi, int threads = 1) const;

  // 4N x 4N real matrix built from left-multiplication blocks.
  SparseMatrix real_matrix() const;

 private:
  int n_;
  std::map<std::pair<int, int>, Quaternion> entries_;
};

Eigen::VectorXd pack(const std::vector<Quaternion>& phi);
std::vector<Quaternion> unpack(const Eigen::VectorXd& v);

// max |A - A^T| entry.
double asymmetry(const SparseMatrix& A);

// Adds s * I.
SparseMatrix shifted(const SparseMatrix& A, double s);

struct KernelOptions {
  double tol = 1e-10;
  int max_iters = 500;
  // Operators on nets with boundary are not symmetric; callers clear this.
  bool require_symmetric = true;
};

struct KernelResult {
  Eigen::VectorXd vector;  // unit length
  double residual = 0.0;   // |A v|
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // best residual after each iteration
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, KernelResult best)
      : Error(ErrorKind::Convergence, what, best.residual), best_(std::move(best)) {}
  const KernelResult& best() const { return best_; }

 private:
  KernelResult best_;
};

// Unit vector minimizing |A v| by inverse iteration on A^T A + eps I.
KernelResult near_kernel(const SparseMatrix& A, const KernelOptions& opts = {});

// Edges (by index into `edges`) whose odd-degree vertices are exactly odd_set.
std::vector<int> tjoin_solve(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                             const std::vector<int>& odd_set);

void write_matrix_market(std::ostream& out, const SparseMatrix& A);

}  // namespace spinnet
