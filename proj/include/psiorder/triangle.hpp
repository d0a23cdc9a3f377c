#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace psiorder {

// Position (j, l), 1 <= j <= l <= k, in the triangular enumeration. Block j
// lists (j, j) first, then (j, k), (j, k-1), ..., (j, j+1).
struct TriangularIndex {
  int j = 1;
  int l = 1;

  friend bool operator==(const TriangularIndex&, const TriangularIndex&) = default;
  friend auto operator<=>(const TriangularIndex&, const TriangularIndex&) = default;
};

std::string to_string(const TriangularIndex& idx);  // "u_{j,l}"

inline std::size_t triangle_size(int k) { return static_cast<std::size_t>(k) * (k + 1) / 2; }

// 1-based position of (j, l); throws IndexOutOfRange.
std::size_t linear_index(int k, int j, int l);
TriangularIndex inverse_index(int k, std::size_t position);

// (u_{1,1}, u_{1,k}, ..., u_{1,2}, u_{2,2}, ..., u_{k,k}).
std::vector<TriangularIndex> canonical_enumeration(int k);

/// The k-cyclic permutation on the triangular diagram: the top row (the
/// diagonal entries) rotates left, the first column below the top folds
/// under the top row in reverse, everything else moves down one row.
class TrianglePermutation {
 public:
  explicit TrianglePermutation(int k);

  int k() const { return k_; }
  std::size_t size() const { return from_.size(); }

  // pi(u)[p] = u[from(p)] for 0-based positions p.
  std::size_t from(std::size_t p) const { return from_[p]; }
  // The position an entry at p moves to.
  std::size_t to(std::size_t p) const { return to_[p]; }

  template <class T>
  std::vector<T> apply(std::span<const T> u) const {
    check_length(u.size());
    std::vector<T> out;
    out.reserve(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) out.push_back(u[from_[p]]);
    return out;
  }

  template <class T>
  std::vector<T> apply_inverse(std::span<const T> u) const {
    check_length(u.size());
    std::vector<T> out;
    out.reserve(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) out.push_back(u[to_[p]]);
    return out;
  }

  // Cycles of positions (1-based), each listed along the movement of entries.
  std::vector<std::vector<std::size_t>> cycles() const;
  std::size_t order() const;
  std::size_t element_order(std::size_t position) const;  // 1-based

 private:
  void check_length(std::size_t n) const;

  int k_;
  std::vector<std::size_t> from_;
  std::vector<std::size_t> to_;
};

template <class T>
std::vector<T> apply_pi(int k, const std::vector<T>& u) {
  return TrianglePermutation(k).apply(std::span<const T>(u));
}

std::size_t pi_order(int k);
std::vector<std::vector<std::size_t>> cycle_decomposition(int k);

// w with pi(w) equal to the canonical enumeration.
std::vector<TriangularIndex> canonical_predecessor(int k);

// Text diagram: column j holds block j top to bottom, so the first row reads
// u_{1,1}, u_{2,2}, ..., u_{k,k}. `symbols` is a vector in linear order.
std::string render_diagram(int k, const std::vector<std::string>& symbols);

}  // namespace psiorder
