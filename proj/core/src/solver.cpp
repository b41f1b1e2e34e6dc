#include "spinnet/solver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <iomanip>
#include <ostream>
#include <thread>

namespace spinnet {

void QuatSparseOperator::add(int i, int j, const Quaternion& q) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(ErrorKind::InvalidArgument, "operator index out of range");
  entries_[{i, j}] += q;
}

Quaternion QuatSparseOperator::entry(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? Quaternion() : it->second;
}

std::vector<Quaternion> QuatSparseOperator::apply(const std::vector<Quaternion>& phi, int threads) const {
  if (static_cast<int>(phi.size()) != n_) throw Error(ErrorKind::InvalidArgument, "spinor size mismatch");
  std::vector<std::vector<std::pair<int, Quaternion>>> rows(n_);
  for (const auto& [ij, q] : entries_) rows[ij.first].push_back({ij.second, q});
  std::vector<Quaternion> out(n_);
  auto work = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      Quaternion acc;
      for (const auto& [j, q] : rows[i]) acc += q * phi[j];
      out[i] = acc;
    }
  };
  threads = std::max(1, std::min(threads, n_));
  if (threads == 1) {
    work(0, n_);
    return out;
  }
  std::vector<std::jthread> pool;
  const int chunk = (n_ + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work, t * chunk, std::min(n_, (t + 1) * chunk));
  pool.clear();
  return out;
}

SparseMatrix QuatSparseOperator::real_matrix() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(entries_.size() * 16);
  for (const auto& [ij, q] : entries_) {
    const Eigen::Matrix4d b = left_block(q);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (b(r, c) != 0.0) trips.emplace_back(4 * ij.first + r, 4 * ij.second + c, b(r, c));
  }
  SparseMatrix A(4 * n_, 4 * n_);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

Eigen::VectorXd pack(const std::vector<Quaternion>& phi) {
  Eigen::VectorXd v(4 * phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) v.segment<4>(4 * i) = phi[i].coeffs();
  return v;
}

std::vector<Quaternion> unpack(const Eigen::VectorXd& v) {
  std::vector<Quaternion> phi(v.size() / 4);
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi[i] = Quaternion(v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]);
  return phi;
}

double asymmetry(const SparseMatrix& A) {
  const SparseMatrix D = A - SparseMatrix(A.transpose());
  double m = 0.0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

SparseMatrix shifted(const SparseMatrix& A, double s) {
  SparseMatrix I(A.rows(), A.cols());
  I.setIdentity();
  return A + s * I;
}

KernelResult near_kernel(const SparseMatrix& A, const KernelOptions& opts) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::InvalidArgument, "near_kernel: matrix not square");
  const int n = static_cast<int>(A.rows());
  double scale = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  if (opts.require_symmetric && asymmetry(A) > 1e-10 * std::max(1.0, scale))
    throw Error(ErrorKind::InvalidArgument, "near_kernel: matrix not symmetric", asymmetry(A));

  // Fixed pseudo-random seed: structured seeds such as the constant vector
  // are often exact eigenvectors of A^T A and would stall the iteration.
  KernelResult best;
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> uniform(0.5, 1.5);
  best.vector = Eigen::VectorXd(n);
  for (int k = 0; k < n; ++k) best.vector[k] = uniform(rng);
  if (n > 0) best.vector.normalize();
  best.residual = (A * best.vector).norm();
  if (n == 0 || best.residual <= opts.tol) {
    best.converged = true;
    return best;
  }

  // Row-sum bound on the spectral norm, used to make the stopping test relative.
  Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) rowsum[it.row()] += std::abs(it.value());
  const double bound2 = std::max(1.0, rowsum.maxCoeff() * rowsum.maxCoeff());

  const SparseMatrix AtA = SparseMatrix(A.transpose()) * A;
  const double eps = 1e-13 * bound2;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  ldlt.compute(shifted(AtA, eps));
  if (ldlt.info() != Eigen::Success) throw ConvergenceError("near_kernel: factorization failed", best);

  Eigen::VectorXd v = best.vector;
  for (int it = 1; it <= opts.max_iters; ++it) {
    Eigen::VectorXd w = ldlt.solve(v);
    const double wn = w.norm();
    if (!std::isfinite(wn) || wn == 0.0) break;
    v = w / wn;
    const Eigen::VectorXd Av = A * v;
    const double r = Av.norm();
    best.iterations = it;
    if (r < best.residual) {
      best.residual = r;
      best.vector = v;
    }
    best.history.push_back(best.residual);
    const double mu = r * r;
    const double eig_res = (SparseMatrix(A.transpose()) * Av - mu * v).norm();
    if (r <= opts.tol || eig_res <= opts.tol * bound2) {
      best.converged = true;
      return best;
    }
  }
  throw ConvergenceError("near_kernel: no convergence after " + std::to_string(opts.max_iters) + " iterations", best);
}

std::vector<int> tjoin_solve(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                             const std::vector<int>& odd_set) {
  if (odd_set.size() % 2 != 0) throw Error(ErrorKind::Infeasible, "tjoin_solve: odd number of odd vertices");
  std::vector<int> in_t(vertex_count, 0);
  for (int v : odd_set) {
    if (v < 0 || v >= vertex_count) throw Error(ErrorKind::InvalidArgument, "tjoin_solve: vertex out of range");
    in_t[v] ^= 1;
  }
  if (odd_set.empty()) return {};

  std::vector<std::vector<std::pair<int, int>>> adj(vertex_count);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    adj[edges[k].first].push_back({edges[k].second, static_cast<int>(k)});
    adj[edges[k].second].push_back({edges[k].first, static_cast<int>(k)});
  }
  std::vector<int> parent_edge(vertex_count, -1);
  std::vector<int> parent(vertex_count, -1);
  std::vector<bool> seen(vertex_count, false);
  std::vector<int> order;
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (const auto& [w, e] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  for (int v = 0; v < vertex_count; ++v)
    if (!seen[v] && (in_t[v] || !adj[v].empty()))
      throw Error(ErrorKind::Disconnected, "tjoin_solve: graph is not connected");

  // Leaves first: a tree edge is used iff its subtree holds an odd count.
  std::vector<int> parity = in_t;
  std::vector<int> out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (parent[v] < 0) continue;
    if (parity[v]) {
      out.push_back(parent_edge[v]);
      parity[parent[v]] ^= 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& A) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
  out << std::setprecision(17);
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

}  // namespace spinnet
