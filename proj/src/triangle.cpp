#include "psiorder/triangle.hpp"

#include <algorithm>
#include <numeric>

#include "psiorder/errors.hpp"

namespace psiorder {

std::string to_string(const TriangularIndex& idx) {
  return "u_{" + std::to_string(idx.j) + "," + std::to_string(idx.l) + "}";
}

namespace {

void check_k(int k) {
  if (k < 1) throw IndexOutOfRange("triangle order k must be >= 1, got " + std::to_string(k));
}

// First 1-based position of block j: 1 + sum_{m=0}^{j-2} (k - m).
std::size_t block_start(int k, int j) {
  std::size_t start = 1;
  for (int m = 0; m <= j - 2; ++m) start += static_cast<std::size_t>(k - m);
  return start;
}

}  // namespace

std::size_t linear_index(int k, int j, int l) {
  check_k(k);
  if (j < 1 || j > k || l < j || l > k) {
    throw IndexOutOfRange("(" + std::to_string(j) + "," + std::to_string(l) +
                          ") is not a triangular index for k = " + std::to_string(k));
  }
  const std::size_t start = block_start(k, j);
  if (l == j) return start;
  return start + static_cast<std::size_t>(k - l + 1);
}

TriangularIndex inverse_index(int k, std::size_t position) {
  check_k(k);
  if (position < 1 || position > triangle_size(k)) {
    throw IndexOutOfRange("position " + std::to_string(position) + " outside 1.." +
                          std::to_string(triangle_size(k)));
  }
  int j = 1;
  while (block_start(k, j + 1) <= position && j < k) ++j;
  const std::size_t offset = position - block_start(k, j);
  if (offset == 0) return {j, j};
  return {j, k - static_cast<int>(offset) + 1};
}

std::vector<TriangularIndex> canonical_enumeration(int k) {
  std::vector<TriangularIndex> out;
  for (int j = 1; j <= k; ++j) {
    out.push_back({j, j});
    for (int l = k; l > j; --l) out.push_back({j, l});
  }
  return out;
}

TrianglePermutation::TrianglePermutation(int k) : k_(k) {
  if (k < 2) throw IndexOutOfRange("pi needs k >= 2, got " + std::to_string(k));
  const std::size_t n = triangle_size(k);
  from_.assign(n, 0);
  auto pos = [k](int j, int l) { return linear_index(k, j, l) - 1; };
  for (int i = 1; i <= k - 1; ++i) from_[pos(i, i)] = pos(i + 1, i + 1);
  from_[pos(k, k)] = pos(1, 1);
  for (int i = 1; i <= k - 1; ++i) from_[pos(i, k)] = pos(1, i + 1);
  for (int i = 1; i <= k - 2; ++i) {
    for (int j = i + 1; j <= k - 1; ++j) from_[pos(i, j)] = pos(i + 1, j + 1);
  }
  to_.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) to_[from_[p]] = p;
}

void TrianglePermutation::check_length(std::size_t n) const {
  if (n != size()) {
    throw LengthMismatch("pi for k = " + std::to_string(k_) + " acts on " +
                         std::to_string(size()) + " entries, got " + std::to_string(n));
  }
}

std::vector<std::vector<std::size_t>> TrianglePermutation::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(size(), false);
  for (std::size_t start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t p = start; !seen[p]; p = to_[p]) {
      seen[p] = true;
      cycle.push_back(p + 1);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::size_t TrianglePermutation::order() const {
  std::size_t result = 1;
  for (const auto& c : cycles()) result = std::lcm(result, c.size());
  return result;
}

std::size_t TrianglePermutation::element_order(std::size_t position) const {
  if (position < 1 || position > size()) throw IndexOutOfRange("position out of range");
  std::size_t len = 1;
  for (std::size_t p = to_[position - 1]; p != position - 1; p = to_[p]) ++len;
  return len;
}

std::size_t pi_order(int k) { return TrianglePermutation(k).order(); }

std::vector<std::vector<std::size_t>> cycle_decomposition(int k) {
  return TrianglePermutation(k).cycles();
}

std::vector<TriangularIndex> canonical_predecessor(int k) {
  if (k < 2) throw IndexOutOfRange("canonical predecessor needs k >= 2");
  std::vector<TriangularIndex> w;
  for (int i = k; i >= 1; --i) w.push_back({i, k});
  for (int j = 2; j <= k; ++j) {
    const int r = j - 1;
    w.push_back({r, r});
    for (int l = k - 1; l > r; --l) w.push_back({r, l});
  }
  return w;
}

std::string render_diagram(int k, const std::vector<std::string>& symbols) {
  if (symbols.size() != triangle_size(k)) {
    throw LengthMismatch("diagram for k = " + std::to_string(k) + " needs " +
                         std::to_string(triangle_size(k)) + " symbols");
  }
  std::size_t width = 1;
  for (const auto& s : symbols) width = std::max(width, s.size());
  std::string out;
  for (int r = 1; r <= k; ++r) {
    std::string row;
    for (int j = 1; j <= k - r + 1; ++j) {
      const int l = r == 1 ? j : k - r + 2;
      const auto& s = symbols[linear_index(k, j, l) - 1];
      if (j > 1) row += "  ";
      row += s + std::string(width - s.size(), ' ');
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  return out;
}

}  // namespace psiorder
