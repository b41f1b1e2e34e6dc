#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace spinnet {

// Dense bit row over GF(2).
class Gf2Row {
 public:
  Gf2Row() = default;
  explicit Gf2Row(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int size() const { return bits_; }
  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v = true) {
    if (v)
      words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(int i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
  Gf2Row& operator^=(const Gf2Row& o);
  bool any() const;
  // Lowest set bit, or -1.
  int lowest() const;
  int count() const;
  bool operator==(const Gf2Row& o) const { return bits_ == o.bits_ && words_ == o.words_; }

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Incrementally built row-echelon basis. Pivots are the lowest set bits, so
// elimination order follows column (edge) id.
class Gf2Basis {
 public:
  explicit Gf2Basis(int bits) : bits_(bits) {}

  Gf2Row reduce(Gf2Row row) const;
  // Adds the row if independent; returns whether it was.
  bool insert(const Gf2Row& row);
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int bits_;
  std::vector<Gf2Row> rows_;
  std::vector<int> pivots_;
};

// Solves A x = b over GF(2); rows of A are equations over `vars` unknowns.
// Free variables are set to zero.
std::optional<Gf2Row> gf2_solve(const std::vector<Gf2Row>& A, const std::vector<bool>& b, int vars);

}  // namespace spinnet
