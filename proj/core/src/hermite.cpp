#include "ibex/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>

#include "ibex/errors.hpp"

namespace ibex {

double hermite_eval_1d(int n, double x) {
  if (n < 0) throw ConfigError("hermite_eval_1d: negative degree");
  double hm = 1.0;  // He_0
  if (n == 0) return hm;
  double h = x;  // He_1
  for (int k = 1; k < n; ++k) {
    const double hp = x * h - k * hm;
    hm = h;
    h = hp;
  }
  return h;
}

void hermite_eval_all(int n, double x, double* out) {
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = x;
  for (int k = 1; k < n; ++k) out[k + 1] = x * out[k] - k * out[k - 1];
}

namespace {

// Coefficient rows of He_n, built with c_{n+1,k} = c_{n,k-1} - n c_{n-1,k}.
// The recurrence never cancels (terms share a sign), so doubles stay at full
// relative precision even past the integer-exact range.
class CoeffTable {
 public:
  double get(int n, int k) {
    std::scoped_lock lock(mutex_);
    while (static_cast<int>(rows_.size()) <= n) grow();
    const auto& row = rows_[static_cast<std::size_t>(n)];
    if (k < 0 || k > n) return 0.0;
    return row[static_cast<std::size_t>(k)];
  }

 private:
  void grow() {
    const int n = static_cast<int>(rows_.size());
    if (n == 0) {
      rows_.push_back({1.0});
      return;
    }
    if (n == 1) {
      rows_.push_back({0.0, 1.0});
      return;
    }
    const auto& prev = rows_[static_cast<std::size_t>(n - 1)];
    const auto& prev2 = rows_[static_cast<std::size_t>(n - 2)];
    std::vector<double> row(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = 0; k <= n; ++k) {
      double c = k >= 1 ? prev[static_cast<std::size_t>(k - 1)] : 0.0;
      if (k <= n - 2) c -= (n - 1) * prev2[static_cast<std::size_t>(k)];
      row[static_cast<std::size_t>(k)] = c;
    }
    rows_.push_back(std::move(row));
  }

  std::mutex mutex_;
  std::vector<std::vector<double>> rows_;
};

CoeffTable& coeff_table() {
  static CoeffTable table;
  return table;
}

}  // namespace

double hermite_coeff(int n, int k) {
  if (n < 0) throw ConfigError("hermite_coeff: negative degree");
  if (k < 0 || k > n || (n - k) % 2 != 0) return 0.0;
  return coeff_table().get(n, k);
}

double largest_hermite_root(int n) {
  if (n < 1) throw ConfigError("largest_hermite_root: degree must be >= 1");
  if (n == 1) return 0.0;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd offdiag(n - 1);
  for (int k = 1; k < n; ++k) offdiag[k - 1] = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double factorial(int n) {
  if (n < 0) throw ConfigError("factorial: negative argument");
  if (n > 170) throw ConfigError("factorial: argument too large for double");
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double double_factorial(int n) {
  if (n < -1) throw ConfigError("double_factorial: argument must be >= -1");
  double r = 1.0;
  for (int k = n; k >= 2; k -= 2) r *= k;
  return r;
}

double factorial(const MultiIndex& alpha) {
  return factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]);
}

double binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  return binomial(alpha[0], beta[0]) * binomial(alpha[1], beta[1]) * binomial(alpha[2], beta[2]);
}

}  // namespace ibex
