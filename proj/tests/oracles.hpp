// Reference computations used as test oracles. Deliberately written the slow,
// obvious way and independent of the library internals.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline double h2(double p) {
  double s = 0.0;
  for (double x : {p, 1.0 - p}) {
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

inline double entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

inline double von_neumann(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  std::vector<double> ev;
  for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(std::max(0.0, es.eigenvalues()(i)));
  return entropy(ev);
}

inline std::vector<double> diag(const Mat& rho) {
  std::vector<double> p;
  for (int i = 0; i < rho.rows(); ++i) p.push_back(rho(i, i).real());
  return p;
}

// Relative entropy of coherence from its definition as a minimum over diagonal
// states: D(rho||delta) = -S(rho) - Tr rho log delta, scanned over a grid for qubits.
inline double rel_ent_qubit_grid(const Mat& rho, double step) {
  const double s = von_neumann(rho);
  double best = 1e300;
  for (double q = step; q < 1.0; q += step) {
    const double cross = -(rho(0, 0).real() * std::log2(q) + rho(1, 1).real() * std::log2(1.0 - q));
    best = std::min(best, cross - s);
  }
  return best;
}

inline double l1(const Mat& rho) {
  double s = 0.0;
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j)
      if (i != j) s += std::abs(rho(i, j));
  return s;
}

// r = h((1 + sqrt(1 - C^2)) / 2) with C = 2|rho_01|.
inline double qubit_roof(const Mat& rho) {
  const double c = 2.0 * std::abs(rho(0, 1));
  return h2(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
