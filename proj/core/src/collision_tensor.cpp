#include "ibex/collision_tensor.hpp"

#include <algorithm>
#include <cmath>

#include "ibex/errors.hpp"

namespace ibex {

CollisionTensor::CollisionTensor(int m, const KernelSpec& kernel, double drop_tol)
    : m_(m), kernel_(kernel), drop_tol_(drop_tol) {
  if (m < 0) throw ConfigError("CollisionTensor: max degree must be >= 0");
  if (!kernel.valid()) throw ConfigError("CollisionTensor: invalid kernel parameters");
  if (drop_tol < 0.0) throw ConfigError("CollisionTensor: drop tolerance must be >= 0");
  offsets_.reserve(static_cast<std::size_t>(basis_count(m)) + 1);
}

double CollisionTensor::value_at(int alpha, int lambda, int kappa) const {
  if (alpha < 0 || alpha >= rows()) return 0.0;
  const auto lo = lambdas_.begin() + row_begin(alpha);
  const auto hi = lambdas_.begin() + row_end(alpha);
  const std::uint32_t l = static_cast<std::uint32_t>(lambda);
  const std::uint32_t k = static_cast<std::uint32_t>(kappa);
  // Entries are sorted by (lambda, kappa); locate the lambda block first.
  auto it = std::lower_bound(lo, hi, l);
  while (it != hi && *it == l) {
    const std::int64_t i = it - lambdas_.begin();
    if (kappas_[static_cast<std::size_t>(i)] == k) return values_[static_cast<std::size_t>(i)];
    if (kappas_[static_cast<std::size_t>(i)] > k) break;
    ++it;
  }
  return 0.0;
}

void CollisionTensor::append_row(std::vector<std::uint32_t>&& lambdas,
                                 std::vector<std::uint32_t>&& kappas,
                                 std::vector<double>&& values) {
  if (lambdas.size() != kappas.size() || lambdas.size() != values.size())
    throw ConfigError("CollisionTensor::append_row: mismatched entry arrays");
  lambdas_.insert(lambdas_.end(), lambdas.begin(), lambdas.end());
  kappas_.insert(kappas_.end(), kappas.begin(), kappas.end());
  values_.insert(values_.end(), values.begin(), values.end());
  offsets_.push_back(static_cast<std::int64_t>(values_.size()));
}

void CollisionTensor::finalize_rows() {
  const std::int64_t expected = basis_count(m_);
  while (static_cast<std::int64_t>(offsets_.size()) - 1 < expected)
    offsets_.push_back(static_cast<std::int64_t>(values_.size()));
  if (static_cast<std::int64_t>(offsets_.size()) - 1 != expected)
    throw ConfigError("CollisionTensor::finalize_rows: too many rows for the degree");
}

CollisionTensor CollisionTensor::rescaled(double t_bar) const {
  if (t_bar <= 0.0) throw StateError("CollisionTensor::rescaled: temperature must be > 0");
  CollisionTensor out = *this;
  const double factor = std::pow(t_bar, 1.0 - kernel_.varpi);
  for (double& v : out.values_) v *= factor;
  out.center_t_bar_ = t_bar;
  return out;
}

}  // namespace ibex
