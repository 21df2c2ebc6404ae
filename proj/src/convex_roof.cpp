#include "qcoh/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "qcoh/measures.hpp"
#include "qcoh/random.hpp"

namespace qcoh {

namespace {

constexpr double kDropWeight = 1e-12;
constexpr double kIsometryTolerance = 1e-10;
constexpr double kGradientStep = 1e-6;
constexpr double kArmijo = 1e-4;
constexpr std::size_t kReorthogonalizeEvery = 25;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// sum_e p_e H(q_e / p_e) written without normalizing: for unnormalized member
// vectors with populations q_ie and weights p_e = sum_i q_ie this equals
// sum_e (p_e log p_e - sum_i q_ie log q_ie).
double ensemble_objective(const CMatrix& scaled_support, const CMatrix& w) {
  const Eigen::Index d = scaled_support.rows();
  const Eigen::Index r = scaled_support.cols();
  double total = 0.0;
  for (Eigen::Index e = 0; e < w.rows(); ++e) {
    double weight = 0.0;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      Complex amp(0.0, 0.0);
      for (Eigen::Index j = 0; j < r; ++j) amp += scaled_support(i, j) * w(e, j);
      const double q = std::norm(amp);
      weight += q;
      acc -= xlog2x(q);
    }
    total += acc + xlog2x(weight);
  }
  return total;
}

// Local coordinates on the orbit U -> U exp(A) restricted to generators that
// move the first r columns: an anti-Hermitian r x r block plus a complex
// (m - r) x r block.
class StiefelChart {
 public:
  StiefelChart(std::size_t m, std::size_t r) : m_(Eigen::Index(m)), r_(Eigen::Index(r)) {}

  std::size_t size() const { return std::size_t(r_ * r_ + 2 * r_ * (m_ - r_)); }

  CMatrix generator(const Eigen::VectorXd& x) const {
    CMatrix a = CMatrix::Zero(m_, m_);
    Eigen::Index t = 0;
    for (Eigen::Index j = 0; j < r_; ++j) a(j, j) = Complex(0.0, x(t++));
    for (Eigen::Index j = 0; j < r_; ++j) {
      for (Eigen::Index k = j + 1; k < r_; ++k) {
        const Complex c(x(t), x(t + 1));
        t += 2;
        a(j, k) = c;
        a(k, j) = -std::conj(c);
      }
    }
    for (Eigen::Index i = r_; i < m_; ++i) {
      for (Eigen::Index j = 0; j < r_; ++j) {
        const Complex c(x(t), x(t + 1));
        t += 2;
        a(i, j) = c;
        a(j, i) = -std::conj(c);
      }
    }
    return a;
  }

  // First r columns of U exp(h G_k) for the k-th basis generator. Each basis
  // generator is a phase on one column or a rotation in one plane, so the
  // exponential is applied in closed form.
  void perturbed_columns(const CMatrix& u, std::size_t k, double h, CMatrix& out) const {
    out = u.leftCols(r_);
    Eigen::Index t = 0;
    const auto idx = Eigen::Index(k);
    if (idx < r_) {
      out.col(idx) *= std::polar(1.0, h);
      return;
    }
    t = r_;
    auto rotate = [&](Eigen::Index j, Eigen::Index l, Complex a) {
      // exp of a at (j, l) and -conj(a) at (l, j) in the (j, l) plane.
      const double mag = std::abs(a);
      const Complex phase = a / mag;
      const double c = std::cos(mag);
      const double s = std::sin(mag);
      const CVector uj = u.col(j);
      const CVector ul = u.col(l);
      if (j < r_) out.col(j) = c * uj - std::conj(phase) * s * ul;
      if (l < r_) out.col(l) = phase * s * uj + c * ul;
    };
    for (Eigen::Index j = 0; j < r_; ++j) {
      for (Eigen::Index l = j + 1; l < r_; ++l) {
        if (idx == t) return rotate(j, l, Complex(h, 0.0));
        if (idx == t + 1) return rotate(j, l, Complex(0.0, h));
        t += 2;
      }
    }
    for (Eigen::Index i = r_; i < m_; ++i) {
      for (Eigen::Index j = 0; j < r_; ++j) {
        // a(i, j) = c, a(j, i) = -conj(c): rotation in plane (j, i) with entry -conj(c) at (j, i).
        if (idx == t) return rotate(j, i, Complex(-h, 0.0));
        if (idx == t + 1) return rotate(j, i, Complex(0.0, h));
        t += 2;
      }
    }
  }

 private:
  Eigen::Index m_;
  Eigen::Index r_;
};

CMatrix reorthonormalize(const CMatrix& u) {
  Eigen::HouseholderQR<CMatrix> qr(u);
  CMatrix q = qr.householderQ();
  const CMatrix& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex rjj = packed(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

struct RestartOutcome {
  CMatrix unitary;
  double value;
  bool converged;
};

RestartOutcome descend(const CMatrix& scaled_support, CMatrix u, const RoofConfig& config) {
  const auto m = std::size_t(u.rows());
  const auto r = std::size_t(scaled_support.cols());
  const StiefelChart chart(m, r);
  const std::size_t n = chart.size();
  const auto ri = Eigen::Index(r);

  auto value_at = [&](const CMatrix& unitary) {
    return ensemble_objective(scaled_support, unitary.leftCols(ri));
  };
  CMatrix scratch;
  auto gradient_at = [&](const CMatrix& unitary) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      chart.perturbed_columns(unitary, k, kGradientStep, scratch);
      const double fp = ensemble_objective(scaled_support, scratch);
      chart.perturbed_columns(unitary, k, -kGradientStep, scratch);
      const double fm = ensemble_objective(scaled_support, scratch);
      g(Eigen::Index(k)) = (fp - fm) / (2.0 * kGradientStep);
    }
    return g;
  };

  double f = value_at(u);
  Eigen::VectorXd g = gradient_at(u);
  const Eigen::Index ni = Eigen::Index(n);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(ni, ni);
  bool fresh = true;
  bool converged = false;
  std::size_t stalls = 0;

  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= config.tolerance) {
      converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      dir = -g;
      slope = -g.squaredNorm();
    }

    double step = 1.0;
    double f_new = f;
    CMatrix u_new;
    bool accepted = false;
    while (step > 1e-14) {
      u_new = u * chart.generator(step * dir).exp();
      f_new = value_at(u_new);
      if (f_new <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh) break;
      hinv.setIdentity();
      fresh = true;
      continue;
    }

    if ((it + 1) % kReorthogonalizeEvery == 0) u_new = reorthonormalize(u_new);
    const Eigen::VectorXd g_new = gradient_at(u_new);
    const Eigen::VectorXd s = step * dir;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(ni, ni) - rho * s * y.transpose();
      hinv = left * hinv * left.transpose() + rho * s * s.transpose();
      fresh = false;
    }

    stalls = (f - f_new <= 1e-15 * std::max(1.0, std::abs(f))) ? stalls + 1 : 0;
    u = std::move(u_new);
    f = f_new;
    g = g_new;
    if (stalls >= 4) break;
  }
  if (!converged) converged = g.lpNorm<Eigen::Infinity>() <= config.tolerance;
  return {reorthonormalize(u), f, converged};
}

CMatrix scaled_support_matrix(const Support& sup) {
  CMatrix s = sup.eigenvectors;
  for (Eigen::Index j = 0; j < s.cols(); ++j) s.col(j) *= std::sqrt(sup.eigenvalues(j));
  return s;
}

}  // namespace

CMatrix Decomposition::mixture() const {
  const auto d = Eigen::Index(target_dim);
  CMatrix acc = CMatrix::Zero(d, d);
  for (const auto& el : elements) acc += el.weight * (el.state.amplitudes() * el.state.amplitudes().adjoint());
  return acc;
}

Support support_of(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  std::vector<Eigen::Index> keep;
  // Descending eigenvalue order.
  for (Eigen::Index j = es.eigenvalues().size() - 1; j >= 0; --j) {
    if (es.eigenvalues()(j) >= kRankThreshold) keep.push_back(j);
  }
  Support sup;
  sup.eigenvalues.resize(Eigen::Index(keep.size()));
  sup.eigenvectors.resize(rho.matrix().rows(), Eigen::Index(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    sup.eigenvalues(Eigen::Index(k)) = es.eigenvalues()(keep[k]);
    sup.eigenvectors.col(Eigen::Index(k)) = es.eigenvectors().col(keep[k]);
  }
  return sup;
}

Decomposition decomposition_from_isometry(const DensityMatrix& rho, const CMatrix& w) {
  const Support sup = support_of(rho);
  if (std::size_t(w.cols()) != sup.rank()) {
    throw Error(ErrorCode::RankMismatch, "isometry has " + std::to_string(w.cols()) +
                                             " columns but rank(rho) = " + std::to_string(sup.rank()));
  }
  if (w.rows() < w.cols()) throw Error(ErrorCode::NotIsometry, "fewer rows than columns");
  const double dev = (w.adjoint() * w - CMatrix::Identity(w.cols(), w.cols())).cwiseAbs().maxCoeff();
  if (dev > kIsometryTolerance) {
    throw Error(ErrorCode::NotIsometry, "max |W^dagger W - I| = " + std::to_string(dev));
  }
  const CMatrix members = scaled_support_matrix(sup) * w.transpose();
  Decomposition out;
  out.target_dim = rho.dim();
  for (Eigen::Index e = 0; e < members.cols(); ++e) {
    const double p = members.col(e).squaredNorm();
    if (p < kDropWeight) continue;
    out.elements.push_back({p, PureState::normalized(members.col(e))});
  }
  return out;
}

Decomposition eigen_decomposition(const DensityMatrix& rho) {
  const auto r = Eigen::Index(support_of(rho).rank());
  return decomposition_from_isometry(rho, CMatrix::Identity(r, r));
}

double roof_objective(const Decomposition& decomp) {
  double total = 0.0;
  for (const auto& el : decomp.elements) total += el.weight * r_pure(el.state).value;
  return total;
}

RoofResult optimize_roof(const DensityMatrix& rho, const RoofConfig& config) {
  if (config.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  if (!(config.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const Support sup = support_of(rho);
  const std::size_t r = sup.rank();
  const std::size_t m = config.ensemble_size == 0 ? r * r : config.ensemble_size;
  if (m < r) {
    throw Error(ErrorCode::InvalidArgument,
                "ensemble size " + std::to_string(m) + " is below rank " + std::to_string(r));
  }

  RoofResult result;
  if (r == 1) {
    result.best_decomposition = eigen_decomposition(rho);
    result.value = roof_objective(result.best_decomposition);
    result.converged = true;
    result.restarts_used = 1;
    result.restart_values = {result.value};
    return result;
  }

  const CMatrix scaled = scaled_support_matrix(sup);
  const auto mi = Eigen::Index(m);
  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(config.restarts);
  for (std::size_t s = 0; s < config.restarts; ++s) {
    CMatrix start = s == 0 ? CMatrix::Identity(mi, mi) : haar_random_unitary(m, mix_seed(config.seed, s));
    outcomes.push_back(descend(scaled, std::move(start), config));
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < outcomes.size(); ++s) {
    if (outcomes[s].value < outcomes[best].value) best = s;
  }
  result.best_restart = best;
  result.restarts_used = outcomes.size();
  result.converged = outcomes[best].converged;
  for (const auto& o : outcomes) result.restart_values.push_back(o.value);
  result.best_decomposition = decomposition_from_isometry(rho, outcomes[best].unitary.leftCols(Eigen::Index(r)));
  result.value = roof_objective(result.best_decomposition);
  return result;
}

double brute_force_roof_qubit(const DensityMatrix& rho, std::size_t grid_n) {
  if (rho.dim() != 2) throw Error(ErrorCode::DimensionNot2, "dimension is " + std::to_string(rho.dim()));
  if (grid_n < 1) throw Error(ErrorCode::InvalidArgument, "grid_n must be positive");
  const Support sup = support_of(rho);
  if (sup.rank() == 1) return r_pure(PureState::normalized(sup.eigenvectors.col(0))).value;

  const CMatrix scaled = scaled_support_matrix(sup);
  const Complex s00 = scaled(0, 0), s01 = scaled(0, 1), s10 = scaled(1, 0), s11 = scaled(1, 1);
  const double pi = std::numbers::pi;
  std::vector<Complex> phases(grid_n);
  for (std::size_t b = 0; b < grid_n; ++b) phases[b] = std::polar(1.0, 2.0 * pi * double(b) / double(grid_n));

  auto member = [&](Complex w0, Complex w1) {
    const double q0 = std::norm(s00 * w0 + s01 * w1);
    const double q1 = std::norm(s10 * w0 + s11 * w1);
    return xlog2x(q0 + q1) - xlog2x(q0) - xlog2x(q1);
  };

  // Rows of U(theta, phi, lam) = [[c, -e^{i lam} s], [e^{i phi} s, e^{i(phi+lam)} c]].
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid_n; ++a) {
    const double half = 0.5 * pi * double(a) / double(grid_n);
    const double c = std::cos(half), s = std::sin(half);
    for (std::size_t b = 0; b < grid_n; ++b) {
      const Complex ephi = phases[b];
      for (std::size_t l = 0; l < grid_n; ++l) {
        const Complex elam = phases[l];
        const double v = member(c, -elam * s) + member(ephi * s, ephi * elam * c);
        best = std::min(best, v);
      }
    }
  }
  return best;
}

}  // namespace qcoh
