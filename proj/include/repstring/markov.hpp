#pragma once

#include <cstdint>

#include "repstring/matrix.hpp"
#include "repstring/stochastic.hpp"

namespace repstring {

// Stationary finite-state chain: transition matrix, stationary law, and the
// reversed-chain matrix rev(j, i) = pi(i) trans(i, j) / pi(j) used for exact
// leftward window extension.
class MarkovChain {
 public:
  // Requires irreducibility (checked structurally); computes pi and rev.
  static MarkovChain from_transition(Mat trans);
  // Caller supplies the stationary law; skips the irreducibility check, so
  // periodic or reducible chains (e.g. the identity matrix with uniform pi)
  // can still be used where only (trans, pi) matter.
  static MarkovChain with_stationary(Mat trans, ProbVec pi);

  int num_states() const { return trans_.rows(); }
  const Mat& trans() const { return trans_; }
  const Mat& reversed() const { return rev_; }
  const ProbVec& pi() const { return pi_; }
  // 1 when aperiodic; reported but not rejected.
  int period() const { return period_; }

 private:
  MarkovChain(Mat trans, ProbVec pi, Mat rev, int period)
      : trans_(std::move(trans)), pi_(std::move(pi)), rev_(std::move(rev)),
        period_(period) {}
  Mat trans_;
  ProbVec pi_;
  Mat rev_;
  int period_;
};

// Unique stationary law of an irreducible row-stochastic matrix; throws
// ReducibleError when the chain is not strongly connected. Dense solve,
// rejects m > 64.
ProbVec stationary_dist(const Mat& trans);

// Absolute-regularity coefficient of a stationary chain at lag n:
//   1/2 sum_i pi(i) sum_j |trans^n(i, j) - pi(j)|.
// The chain's full past/future coefficient collapses to the two-coordinate
// one; tests cross-check against block joints of widths 1..3.
double markov_beta_exact(const MarkovChain& chain, int64_t n);

}  // namespace repstring
