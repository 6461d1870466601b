#pragma once

#include <cstdint>
#include <vector>

#include "ibex/kernel.hpp"
#include "ibex/multi_index.hpp"

namespace ibex {

/// Sparse rank-3 coefficient tensor A_{alpha, lambda, kappa} of the quadratic
/// collision operator in the Hermite basis, stored row-compressed by the
/// alpha rank with entries sorted by (lambda, kappa) within each row.
/// Entries are symmetric in (lambda, kappa); both orderings are stored.
class CollisionTensor {
 public:
  CollisionTensor() = default;
  CollisionTensor(int m, const KernelSpec& kernel, double drop_tol);

  int m() const { return m_; }
  const KernelSpec& kernel() const { return kernel_; }
  double drop_tol() const { return drop_tol_; }
  /// Temperature of the expansion center the stored values are valid for.
  double center_t_bar() const { return center_t_bar_; }

  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }
  int rows() const { return static_cast<int>(offsets_.size()) - 1; }

  /// Stored value at (alpha, lambda, kappa) ranks, 0.0 if not present.
  double value_at(int alpha, int lambda, int kappa) const;

  /// Row [begin, end) into the entry arrays for a given alpha rank.
  std::int64_t row_begin(int alpha) const { return offsets_[static_cast<std::size_t>(alpha)]; }
  std::int64_t row_end(int alpha) const { return offsets_[static_cast<std::size_t>(alpha) + 1]; }
  std::uint32_t entry_lambda(std::int64_t i) const { return lambdas_[static_cast<std::size_t>(i)]; }
  std::uint32_t entry_kappa(std::int64_t i) const { return kappas_[static_cast<std::size_t>(i)]; }
  double entry_value(std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }

  /// Appends a row in ascending alpha-rank order (assembly/deserialization).
  void append_row(std::vector<std::uint32_t>&& lambdas, std::vector<std::uint32_t>&& kappas,
                  std::vector<double>&& values);
  void finalize_rows();

  /// Tensor rescaled to an expansion center with temperature t_bar:
  /// values multiplied by t_bar^(1 - varpi). Identity for the Maxwell kernel.
  CollisionTensor rescaled(double t_bar) const;

 private:
  int m_ = 0;
  KernelSpec kernel_;
  double drop_tol_ = 0.0;
  double center_t_bar_ = 1.0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<std::uint32_t> lambdas_;
  std::vector<std::uint32_t> kappas_;
  std::vector<double> values_;
};

}  // namespace ibex
