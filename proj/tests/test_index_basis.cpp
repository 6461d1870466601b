#include <doctest.h>

#include "ibex/errors.hpp"
#include "ibex/multi_index.hpp"

using ibex::basis_count;
using ibex::IndexSet;
using ibex::MultiIndex;
using ibex::rank_of;
using ibex::unit_index;

TEST_CASE("basis count follows the tetrahedral formula") {
  CHECK(basis_count(-1) == 0);
  CHECK(basis_count(0) == 1);
  CHECK(basis_count(1) == 4);
  CHECK(basis_count(2) == 10);
  CHECK(basis_count(3) == 20);
  CHECK(basis_count(6) == 84);
  CHECK(basis_count(10) == 286);
  CHECK(basis_count(20) == 1771);
}

TEST_CASE("rank order starts with the documented sequence") {
  CHECK(rank_of(MultiIndex{0, 0, 0}) == 0);
  CHECK(rank_of(MultiIndex{1, 0, 0}) == 1);
  CHECK(rank_of(MultiIndex{0, 1, 0}) == 2);
  CHECK(rank_of(MultiIndex{0, 0, 1}) == 3);
  CHECK(rank_of(MultiIndex{2, 0, 0}) == 4);
  CHECK(rank_of(MultiIndex{1, 1, 0}) == 5);
  CHECK(rank_of(MultiIndex{1, 0, 1}) == 6);
  CHECK(rank_of(MultiIndex{0, 2, 0}) == 7);
  CHECK(rank_of(MultiIndex{0, 1, 1}) == 8);
  CHECK(rank_of(MultiIndex{0, 0, 2}) == 9);
}

TEST_CASE("ordering tag is pinned for cache compatibility") {
  CHECK(ibex::kIndexOrderingTag == 0x44474C31u);
}

TEST_CASE("enumeration, rank lookup and rank_of agree") {
  const IndexSet set(6);
  REQUIRE(set.size() == 84);
  for (int r = 0; r < set.size(); ++r) {
    CHECK(set.rank(set[r]) == r);
    CHECK(rank_of(set[r]) == r);
  }
}

TEST_CASE("order is ascending by degree, lexicographically descending inside") {
  const IndexSet set(5);
  for (int r = 1; r < set.size(); ++r) {
    const MultiIndex& prev = set[r - 1];
    const MultiIndex& cur = set[r];
    REQUIRE(prev.degree() <= cur.degree());
    if (prev.degree() == cur.degree()) {
      // lexicographically descending: previous > current
      const bool descending =
          prev[0] > cur[0] || (prev[0] == cur[0] && prev[1] > cur[1]) ||
          (prev[0] == cur[0] && prev[1] == cur[1] && prev[2] > cur[2]);
      CHECK(descending);
    }
  }
}

TEST_CASE("raise and lower tables are mutually inverse") {
  const IndexSet set(4);
  for (int r = 0; r < set.size(); ++r) {
    for (int d = 0; d < 3; ++d) {
      const int up = set.rank_raised(r, d);
      if (up >= 0) {
        CHECK(set[up] == set[r].plus(d));
        CHECK(set.rank_lowered(up, d) == r);
      } else {
        CHECK(set[r].degree() == set.max_degree());
      }
      const int down = set.rank_lowered(r, d);
      if (set[r][d] == 0) {
        CHECK(down == -1);
      } else {
        CHECK(set[down] == set[r].minus(d));
        CHECK(set.rank_raised(down, d) == r);
      }
      const int down2 = set.rank_lowered2(r, d);
      if (set[r][d] >= 2)
        CHECK(set[down2] == set[r].minus(d, 2));
      else
        CHECK(down2 == -1);
    }
  }
}

TEST_CASE("multi-index arithmetic behaves componentwise") {
  const MultiIndex a{2, 0, 3};
  const MultiIndex b{1, 1, 0};
  CHECK((a + b) == MultiIndex{3, 1, 3});
  CHECK((a - b) == MultiIndex{1, -1, 3});
  CHECK_FALSE((a - b).valid());
  CHECK(b.leq(a) == false);
  CHECK(MultiIndex{1, 0, 0}.leq(a));
  CHECK(unit_index(2) == MultiIndex{0, 0, 1});
  CHECK(a.plus(1, 2) == MultiIndex{2, 2, 3});
  CHECK(a.degree() == 5);
}

TEST_CASE("rank lookup rejects out-of-range indices") {
  const IndexSet set(3);
  CHECK_THROWS_AS(set.rank(MultiIndex{4, 0, 0}), ibex::Error);
  CHECK_THROWS_AS(set.rank(MultiIndex{-1, 0, 0}), ibex::Error);
}
