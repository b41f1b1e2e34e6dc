#include "spinnet/gf2.hpp"

#include <bit>

namespace spinnet {

Gf2Row& Gf2Row::operator^=(const Gf2Row& o) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
  return *this;
}

bool Gf2Row::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

int Gf2Row::lowest() const {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k]) return static_cast<int>(k * 64 + std::countr_zero(words_[k]));
  return -1;
}

int Gf2Row::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

Gf2Row Gf2Basis::reduce(Gf2Row row) const {
  // Rows are kept fully reduced against each other, so one pass suffices.
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (row.get(pivots_[k])) row ^= rows_[k];
  return row;
}

bool Gf2Basis::insert(const Gf2Row& row) {
  Gf2Row r = reduce(row);
  const int p = r.lowest();
  if (p < 0) return false;
  for (auto& other : rows_)
    if (other.get(p)) other ^= r;
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

std::optional<Gf2Row> gf2_solve(const std::vector<Gf2Row>& A, const std::vector<bool>& b, int vars) {
  // Augment with the right-hand side as column `vars`.
  std::vector<Gf2Row> rows;
  rows.reserve(A.size());
  for (std::size_t r = 0; r < A.size(); ++r) {
    Gf2Row row(vars + 1);
    for (int c = 0; c < vars; ++c)
      if (A[r].get(c)) row.set(c);
    if (b[r]) row.set(vars);
    rows.push_back(std::move(row));
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int c = 0; c < vars && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && !rows[sel].get(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r].get(vars)) return std::nullopt;
  Gf2Row x(vars);
  for (std::size_t r = 0; r < rank; ++r)
    if (rows[r].get(vars)) x.set(pivot_col[r]);
  return x;
}

}  // namespace spinnet
