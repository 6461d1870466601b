#include "ibex/multi_index.hpp"

#include "ibex/errors.hpp"

namespace ibex {

IndexSet::IndexSet(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) throw ConfigError("IndexSet: max degree must be >= 0");
  indices_.reserve(static_cast<std::size_t>(basis_count(max_degree)));
  for (int d = 0; d <= max_degree; ++d) {
    for (int a1 = d; a1 >= 0; --a1) {
      for (int a2 = d - a1; a2 >= 0; --a2) {
        indices_.emplace_back(a1, a2, d - a1 - a2);
      }
    }
  }
  raised_.resize(indices_.size());
  lowered_.resize(indices_.size());
  for (std::size_t r = 0; r < indices_.size(); ++r) {
    const MultiIndex& alpha = indices_[r];
    for (int d = 0; d < 3; ++d) {
      const MultiIndex up = alpha.plus(d);
      raised_[r][static_cast<std::size_t>(d)] = up.degree() > max_degree ? -1 : rank_of(up);
      lowered_[r][static_cast<std::size_t>(d)] = alpha[d] == 0 ? -1 : rank_of(alpha.minus(d));
    }
  }
}

int IndexSet::rank(const MultiIndex& alpha) const {
  if (!alpha.valid() || alpha.degree() > max_degree_)
    throw ConfigError("IndexSet::rank: index outside the set");
  return rank_of(alpha);
}

}  // namespace ibex
