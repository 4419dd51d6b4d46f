#include "myopic/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace myopic {

namespace {

constexpr double kMinEigenvalue = 1e-13;
constexpr double kRidgeScale = 1e-12;
constexpr double kPseudoInverseCutoff = 1e-12;

std::vector<Eigen::Index> indices_of(const GaussianSystem& sys, const std::vector<Label>& labels) {
  std::vector<Eigen::Index> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(sys.find(l));
  return out;
}

Eigen::MatrixXd block(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows,
                      const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(rows[r], cols[c]);
    }
  }
  return out;
}

// Covariance of B given C. Conditioning sets may be linearly dependent
// (e.g. inputs with zero power), so the C-block is pseudo-inverted.
Eigen::MatrixXd conditional_covariance(const Eigen::MatrixXd& cov,
                                       const std::vector<Eigen::Index>& b,
                                       const std::vector<Eigen::Index>& c) {
  Eigen::MatrixXd sbb = block(cov, b, b);
  if (c.empty()) return sbb;
  const Eigen::MatrixXd scc = block(cov, c, c);
  const Eigen::MatrixXd sbc = block(cov, b, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scc);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double cutoff = kPseudoInverseCutoff * std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > cutoff) inv(i) = 1.0 / values(i);
  }
  const Eigen::MatrixXd proj = sbc * eig.eigenvectors();
  Eigen::MatrixXd out = sbb - proj * inv.asDiagonal() * proj.transpose();
  return 0.5 * (out + out.transpose());
}

double log2_det(Eigen::MatrixXd m, bool& regularized) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < kMinEigenvalue) {
    const double ridge = kRidgeScale * m.trace() / static_cast<double>(m.rows());
    if (!(ridge > 0.0)) {
      throw NumericalDegeneracyError("conditional covariance is singular with zero trace", m);
    }
    m.diagonal().array() += ridge;
    regularized = true;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalDegeneracyError("conditional covariance is not positive definite", m);
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum() / std::log(2.0);
}

std::vector<Label> without(const std::vector<Label>& set, const std::vector<Label>& removed) {
  std::vector<Label> out;
  for (const auto& l : set) {
    if (std::find(removed.begin(), removed.end(), l) == removed.end() &&
        std::find(out.begin(), out.end(), l) == out.end()) {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Label& label) {
  switch (label.kind) {
    case Label::Kind::Stream: return "U" + std::to_string(label.index);
    case Label::Kind::Input: return "X" + std::to_string(label.index);
    case Label::Kind::Output: return "Y" + std::to_string(label.index);
  }
  return "?";
}

Eigen::Index GaussianSystem::find(const Label& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument("gaussian system: no coordinate " + to_string(label));
  }
  return static_cast<Eigen::Index>(it - labels.begin());
}

bool GaussianSystem::contains(const Label& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

GaussianSystem build_system(const ChannelConfig& config, const PowerAllocation& alloc,
                            const SchemeSpec& scheme, bool include_inputs) {
  const int T = config.node_count;
  validate(scheme, T);
  validate(alloc, T, scheme.hops);
  const OrderedChannel channel(config, scheme.ordering);
  const int k = scheme.hops;
  const int streams = T - 1;

  GaussianSystem sys;
  for (int j = 1; j <= streams; ++j) sys.labels.push_back(Label::U(j));
  if (include_inputs) {
    for (int i = 1; i <= T - 1; ++i) sys.labels.push_back(Label::X(i));
  }
  for (int t = 2; t <= T; ++t) sys.labels.push_back(Label::Y(t));

  // Every coordinate is a linear image of (U_1..U_{T-1}, Z_2..Z_T).
  const auto dim = static_cast<Eigen::Index>(sys.labels.size());
  const Eigen::Index sources = streams + (T - 1);
  Eigen::MatrixXd loading = Eigen::MatrixXd::Zero(dim, sources);

  // Input loadings: column j-1 holds sqrt(a_{i,j-i} P_i).
  Eigen::MatrixXd input(T - 1, streams);
  input.setZero();
  for (int i = 1; i <= T - 1; ++i) {
    for (int m = 0; m < k && i + m <= streams; ++m) {
      input(i - 1, i + m - 1) = std::sqrt(alloc.at(i, m) * channel.power(i));
    }
  }

  Eigen::Index row = 0;
  for (int j = 1; j <= streams; ++j, ++row) loading(row, j - 1) = 1.0;
  if (include_inputs) {
    for (int i = 1; i <= T - 1; ++i, ++row) loading.row(row).head(streams) = input.row(i - 1);
  }
  for (int t = 2; t <= T; ++t, ++row) {
    for (int i = 1; i <= T - 1; ++i) {
      if (i == t) continue;
      loading.row(row).head(streams) += std::sqrt(channel.gain(i, t)) * input.row(i - 1);
    }
    loading(row, streams + (t - 2)) = std::sqrt(channel.noise(t));
  }

  sys.covariance = loading * loading.transpose();
  sys.covariance = 0.5 * (sys.covariance + sys.covariance.transpose());
  return sys;
}

MutualInformation conditional_mi(const GaussianSystem& sys, const std::vector<Label>& a,
                                 const std::vector<Label>& b, const std::vector<Label>& c) {
  const auto a_eff = without(a, c);
  const auto b_eff = without(b, c);
  const auto c_eff = without(c, {});
  for (const auto& l : a_eff) {
    if (std::find(b_eff.begin(), b_eff.end(), l) != b_eff.end()) {
      throw std::invalid_argument("conditional_mi: label " + to_string(l) +
                                  " appears in both arguments");
    }
  }
  MutualInformation out;
  if (a_eff.empty() || b_eff.empty()) return out;

  const auto bi = indices_of(sys, b_eff);
  const auto ci = indices_of(sys, c_eff);
  auto aci = indices_of(sys, a_eff);
  aci.insert(aci.end(), ci.begin(), ci.end());

  const double given_c = log2_det(conditional_covariance(sys.covariance, bi, ci), out.regularized);
  const double given_ac =
      log2_det(conditional_covariance(sys.covariance, bi, aci), out.regularized);
  out.bits = std::max(0.0, 0.5 * (given_c - given_ac));
  return out;
}

double node_rate_oracle(const GaussianSystem& sys, int node_count, int hops, int receiver) {
  if (receiver < 2 || receiver > node_count) {
    throw std::invalid_argument("node_rate_oracle: receiver out of range");
  }
  std::vector<Label> decoded;
  std::vector<Label> known;
  for (int j = receiver - hops; j <= receiver - 1; ++j) {
    if (j >= 1) decoded.push_back(Label::U(j));
  }
  for (int j = receiver; j <= receiver + hops - 1; ++j) {
    if (j <= node_count - 1) known.push_back(Label::U(j));
  }
  return conditional_mi(sys, decoded, {Label::Y(receiver)}, known).bits;
}

double node_rate_oracle(const ChannelConfig& config, const PowerAllocation& alloc,
                        const SchemeSpec& scheme, int receiver) {
  const auto sys = build_system(config, alloc, scheme);
  return node_rate_oracle(sys, config.node_count, scheme.hops, receiver);
}

double cut_rate_input_form(const GaussianSystem& sys, int node_count, int cut) {
  if (cut < 1 || cut > node_count - 1) {
    throw std::invalid_argument("cut_rate_input_form: cut out of range");
  }
  std::vector<Label> behind;
  std::vector<Label> ahead;
  for (int i = 1; i <= cut; ++i) behind.push_back(Label::X(i));
  for (int i = cut + 1; i <= node_count - 1; ++i) ahead.push_back(Label::X(i));
  return conditional_mi(sys, behind, {Label::Y(cut + 1)}, ahead).bits;
}

}  // namespace myopic
