#include "qcoh/incoherent_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcoh/random.hpp"

namespace qcoh {

std::size_t KrausSet::dim() const {
  if (operators.empty()) throw Error(ErrorCode::DimensionMismatch, "empty Kraus set");
  const auto d = operators.front().rows();
  for (const auto& k : operators) {
    if (k.rows() != d || k.cols() != d) throw Error(ErrorCode::DimensionMismatch, "Kraus operators must be square and equal-sized");
  }
  return std::size_t(d);
}

double KrausSet::completeness_deviation() const {
  const auto d = Eigen::Index(dim());
  CMatrix acc = CMatrix::Zero(d, d);
  for (const auto& k : operators) acc += k.adjoint() * k;
  return (acc - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

bool is_incoherent_kraus_set(const KrausSet& ks, double tol) {
  ks.dim();
  if (ks.completeness_deviation() > tol) return false;
  for (const auto& k : ks.operators) {
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
      const auto nonzero = (k.col(j).cwiseAbs().array() > kStructuralZero).count();
      if (nonzero > 1) return false;
    }
  }
  return true;
}

namespace {

Complex gaussian_complex(Engine& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(eng);
  const double im = normal(eng);
  return {re, im};
}

std::vector<std::size_t> random_permutation(std::size_t d, Engine& eng) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = d; i > 1; --i) {
    const auto j = std::size_t(uniform01(eng) * double(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  return perm;
}

void require_positive(std::size_t d, std::size_t n_ops) {
  if (d == 0 || n_ops == 0) throw Error(ErrorCode::InvalidArgument, "dimension and operator count must be positive");
}

}  // namespace

KrausSet random_incoherent_kraus(std::size_t d, std::size_t n_ops, std::uint64_t seed) {
  require_positive(d, n_ops);
  Engine eng(seed);
  const auto di = Eigen::Index(d);
  KrausSet ks;
  for (std::size_t n = 0; n < n_ops; ++n) {
    const auto perm = random_permutation(d, eng);
    CMatrix k = CMatrix::Zero(di, di);
    for (std::size_t j = 0; j < d; ++j) k(Eigen::Index(perm[j]), Eigen::Index(j)) = gaussian_complex(eng);
    ks.operators.push_back(std::move(k));
  }
  for (Eigen::Index j = 0; j < di; ++j) {
    double norm2 = 0.0;
    for (const auto& k : ks.operators) norm2 += k.col(j).squaredNorm();
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& k : ks.operators) k.col(j) *= scale;
  }
  return ks;
}

KrausSet random_incoherent_kraus_merging(std::size_t d, std::size_t n_ops, std::uint64_t seed) {
  require_positive(d, n_ops);
  Engine eng(seed);
  const auto di = Eigen::Index(d);
  KrausSet ks;
  CMatrix gram = CMatrix::Zero(di, di);
  for (std::size_t n = 0; n < n_ops; ++n) {
    CMatrix k = CMatrix::Zero(di, di);
    for (Eigen::Index j = 0; j < di; ++j) {
      const auto row = std::min(Eigen::Index(uniform01(eng) * double(d)), di - 1);
      k(row, j) = gaussian_complex(eng);
    }
    gram += k.adjoint() * k;
    ks.operators.push_back(std::move(k));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> gram_es(gram, Eigen::EigenvaluesOnly);
  const double top = gram_es.eigenvalues().maxCoeff();
  const double scale = 1.0 / std::sqrt(top);
  for (auto& k : ks.operators) k *= scale;

  const CMatrix remainder = CMatrix::Identity(di, di) - gram / top;
  Eigen::SelfAdjointEigenSolver<CMatrix> rem_es(0.5 * (remainder + remainder.adjoint()));
  for (Eigen::Index i = 0; i < di; ++i) {
    const double lam = rem_es.eigenvalues()(i);
    if (lam <= 1e-14) continue;
    const auto row = std::min(Eigen::Index(uniform01(eng) * double(d)), di - 1);
    CMatrix k = CMatrix::Zero(di, di);
    k.row(row) = std::sqrt(lam) * rem_es.eigenvectors().col(i).adjoint();
    ks.operators.push_back(std::move(k));
  }
  return ks;
}

KrausSet dephasing_kraus(std::size_t d) {
  std::vector<std::vector<std::size_t>> blocks(d);
  for (std::size_t i = 0; i < d; ++i) blocks[i] = {i};
  return projection_partition_kraus(d, blocks);
}

KrausSet identity_kraus(std::size_t d) {
  return KrausSet{{CMatrix::Identity(Eigen::Index(d), Eigen::Index(d))}};
}

KrausSet projection_partition_kraus(std::size_t d, const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<int> seen(d, 0);
  for (const auto& block : partition) {
    if (block.empty()) throw Error(ErrorCode::NotAPartition, "empty block");
    for (std::size_t i : block) {
      if (i >= d) throw Error(ErrorCode::NotAPartition, "index " + std::to_string(i) + " out of range");
      if (seen[i]++) throw Error(ErrorCode::NotAPartition, "index " + std::to_string(i) + " appears twice");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!seen[i]) throw Error(ErrorCode::NotAPartition, "index " + std::to_string(i) + " not covered");
  }
  KrausSet ks;
  for (const auto& block : partition) {
    CMatrix p = CMatrix::Zero(Eigen::Index(d), Eigen::Index(d));
    for (std::size_t i : block) p(Eigen::Index(i), Eigen::Index(i)) = 1.0;
    ks.operators.push_back(std::move(p));
  }
  return ks;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& ks) {
  if (ks.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "channel and state dimensions differ");
  CMatrix acc = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& k : ks.operators) acc += k * rho.matrix() * k.adjoint();
  return DensityMatrix::from_trusted(std::move(acc));
}

std::vector<SelectiveOutcome> apply_selective(const DensityMatrix& rho, const KrausSet& ks) {
  if (ks.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "channel and state dimensions differ");
  std::vector<SelectiveOutcome> out;
  for (std::size_t n = 0; n < ks.operators.size(); ++n) {
    const CMatrix& k = ks.operators[n];
    CMatrix branch = k * rho.matrix() * k.adjoint();
    const double p = branch.trace().real();
    if (p <= kOutcomeFloor) continue;
    out.push_back({n, p, DensityMatrix::from_trusted(std::move(branch))});
  }
  return out;
}

}  // namespace qcoh
