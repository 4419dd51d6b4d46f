#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "myopic/channel.hpp"
#include "myopic/scheme.hpp"

namespace myopic {

/// Coordinate of the joint Gaussian: an auxiliary stream U_j, a channel
/// input X_i or a received signal Y_t. Indices are pipeline positions.
struct Label {
  enum class Kind { Stream, Input, Output };
  Kind kind;
  int index;

  static Label U(int j) { return {Kind::Stream, j}; }
  static Label X(int i) { return {Kind::Input, i}; }
  static Label Y(int t) { return {Kind::Output, t}; }

  friend bool operator==(const Label&, const Label&) = default;
};

std::string to_string(const Label& label);

/// Joint covariance of the streams, (optionally) the inputs and the
/// received signals implied by a superposition allocation.
struct GaussianSystem {
  std::vector<Label> labels;
  Eigen::MatrixXd covariance;

  /// Position of `label` in `labels`; throws std::invalid_argument if absent.
  Eigen::Index find(const Label& label) const;
  bool contains(const Label& label) const;
};

/// A conditional covariance whose determinant cannot be taken even after
/// ridge regularization. `minor` is the offending matrix.
class NumericalDegeneracyError : public std::runtime_error {
 public:
  NumericalDegeneracyError(const std::string& what, Eigen::MatrixXd minor)
      : std::runtime_error(what), minor_(std::move(minor)) {}
  const Eigen::MatrixXd& minor() const { return minor_; }

 private:
  Eigen::MatrixXd minor_;
};

struct MutualInformation {
  double bits = 0.0;
  /// Set when a near-singular conditional covariance was ridge-regularized.
  bool regularized = false;
};

/// Assembles the covariance for X_i = sum_m sqrt(a_{i,m} P_i) U_{i+m} and
/// Y_t = sum_{i != t} sqrt(g_{it}) X_i + Z_t, with relays relabeled by
/// `scheme.ordering`. A node's own transmission is absent from its Y.
GaussianSystem build_system(const ChannelConfig& config, const PowerAllocation& alloc,
                            const SchemeSpec& scheme, bool include_inputs = false);

/// I(A;B|C) in bits from log-determinants of Schur complements. Labels of A
/// or B that also appear in C are dropped first; an empty A or B yields 0.
MutualInformation conditional_mi(const GaussianSystem& sys, const std::vector<Label>& a,
                                 const std::vector<Label>& b, const std::vector<Label>& c);

/// I(U_{t-k..t-1}; Y_t | U_{t..t+k-1}) with out-of-range streams removed.
double node_rate_oracle(const ChannelConfig& config, const PowerAllocation& alloc,
                        const SchemeSpec& scheme, int receiver);
double node_rate_oracle(const GaussianSystem& sys, int node_count, int hops, int receiver);

/// Decode-forward cut rate written over channel inputs:
/// I(X_1..X_t; Y_{t+1} | X_{t+1}..X_{T-1}) for cut t = 1..T-1. Requires a
/// system built with inputs.
double cut_rate_input_form(const GaussianSystem& sys, int node_count, int cut);

}  // namespace myopic
