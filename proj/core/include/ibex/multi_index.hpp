#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ibex {

/// Three-dimensional multi-index alpha = (a1, a2, a3), components >= 0.
struct MultiIndex {
  std::array<int, 3> a{0, 0, 0};

  constexpr MultiIndex() = default;
  constexpr MultiIndex(int a1, int a2, int a3) : a{a1, a2, a3} {}

  constexpr int operator[](int d) const { return a[static_cast<std::size_t>(d)]; }
  constexpr int& operator[](int d) { return a[static_cast<std::size_t>(d)]; }

  constexpr int degree() const { return a[0] + a[1] + a[2]; }
  constexpr bool valid() const { return a[0] >= 0 && a[1] >= 0 && a[2] >= 0; }

  /// Componentwise partial order: *this <= other in every component.
  constexpr bool leq(const MultiIndex& other) const {
    return a[0] <= other.a[0] && a[1] <= other.a[1] && a[2] <= other.a[2];
  }

  constexpr MultiIndex plus(int d, int n = 1) const {
    MultiIndex r = *this;
    r[d] += n;
    return r;
  }
  constexpr MultiIndex minus(int d, int n = 1) const { return plus(d, -n); }

  friend constexpr MultiIndex operator+(const MultiIndex& x, const MultiIndex& y) {
    return {x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2]};
  }
  friend constexpr MultiIndex operator-(const MultiIndex& x, const MultiIndex& y) {
    return {x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2]};
  }
  friend constexpr bool operator==(const MultiIndex& x, const MultiIndex& y) {
    return x.a == y.a;
  }
  friend constexpr bool operator!=(const MultiIndex& x, const MultiIndex& y) {
    return !(x == y);
  }
};

constexpr MultiIndex unit_index(int d) {
  MultiIndex e;
  e[d] = 1;
  return e;
}

/// Number of multi-indices with degree <= m: (m+1)(m+2)(m+3)/6. Zero for m < 0.
constexpr std::int64_t basis_count(int m) {
  if (m < 0) return 0;
  const std::int64_t n = m;
  return (n + 1) * (n + 2) * (n + 3) / 6;
}

/// Identifier of the index ordering used throughout (and in cache files):
/// ascending total degree, lexicographically descending within a degree.
inline constexpr std::uint32_t kIndexOrderingTag = 0x44474C31u;  // "DGL1"

/// Position of alpha in the global ordering. The first few ranks are
/// (0,0,0), (1,0,0), (0,1,0), (0,0,1), (2,0,0), (1,1,0), ...
constexpr int rank_of(const MultiIndex& alpha) {
  const int d = alpha.degree();
  const int r1 = d - alpha[0];        // degree left after the first component
  const int r2 = r1 - alpha[1];       // third component
  return static_cast<int>(basis_count(d - 1)) + r1 * (r1 + 1) / 2 + r2;
}

/// Enumeration of all multi-indices with degree <= max_degree, in rank order,
/// with O(1) rank lookup and precomputed raise/lower neighbor tables.
class IndexSet {
 public:
  explicit IndexSet(int max_degree);

  int max_degree() const { return max_degree_; }
  int size() const { return static_cast<int>(indices_.size()); }

  const MultiIndex& operator[](int rank) const { return indices_[static_cast<std::size_t>(rank)]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Rank of alpha; alpha must have degree <= max_degree and be valid.
  int rank(const MultiIndex& alpha) const;

  /// Rank of alpha + e_d, or -1 if it leaves the set.
  int rank_raised(int rank, int d) const { return raised_[static_cast<std::size_t>(rank)][static_cast<std::size_t>(d)]; }
  /// Rank of alpha - e_d, or -1 if a component would go negative.
  int rank_lowered(int rank, int d) const { return lowered_[static_cast<std::size_t>(rank)][static_cast<std::size_t>(d)]; }
  /// Rank of alpha - 2 e_d, or -1 if a component would go negative.
  int rank_lowered2(int rank, int d) const {
    const int once = rank_lowered(rank, d);
    return once < 0 ? -1 : rank_lowered(once, d);
  }

 private:
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<std::array<int, 3>> raised_;
  std::vector<std::array<int, 3>> lowered_;
};

}  // namespace ibex
