#pragma once

#include "ibex/spectral_state.hpp"

namespace ibex {

/// Re-expands a truncated distribution around a new center without loss:
/// the returned state represents the same function on the truncated span.
/// Exact (finite triangular recursion), so projecting back recovers the
/// input to roundoff.
SpectralState project(const SpectralState& state, const ExpansionCenter& target,
                      const IndexSet& set);

}  // namespace ibex
