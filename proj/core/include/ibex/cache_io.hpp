#pragma once

#include <filesystem>

#include "ibex/collision_tensor.hpp"

namespace ibex {

/// Writes a coefficient tensor to a binary cache file. The tensor must be at
/// the reference expansion temperature (center_t_bar == 1); rescaled copies
/// are cheap to derive and are never persisted.
///
/// Layout (little-endian): magic "IBCT", u32 format version, u32 index
/// ordering tag, u32 expansion order, f64 varpi, f64 e, f64 c_const,
/// f64 drop_tol, u64 record count, then records of (u32 alpha rank,
/// u32 lambda rank, u32 kappa rank, f64 value) sorted by (alpha, lambda,
/// kappa). Round trips are byte-exact.
void cache_write(const CollisionTensor& tensor, const std::filesystem::path& path);

/// Reads a cache file written by cache_write. Throws CacheError on
/// truncation, foreign files, or version/ordering mismatches.
CollisionTensor cache_read(const std::filesystem::path& path);

/// Throws CacheError unless the tensor matches the requested kernel exactly
/// and covers degrees up to band.
void ensure_cache_matches(const CollisionTensor& tensor, const KernelSpec& kernel, int band);

}  // namespace ibex
