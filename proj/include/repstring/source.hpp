#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "repstring/joint_pmf.hpp"
#include "repstring/markov.hpp"
#include "repstring/rng.hpp"
#include "repstring/stochastic.hpp"
#include "repstring/window.hpp"

namespace repstring {

// Monte-Carlo-only source: a sampler callback plus a pre-declared margin.
// No exact block law, no extension beyond the margin.
struct CustomSource {
  int num_states = 0;
  int64_t margin = 0;  // sampler covers at most [-margin, margin]
  std::function<std::vector<int>(int64_t lo, int64_t hi, RandomStream&)> sample;
};

// Stationary finite-state source for X or Z: IID, Markov, or Custom. IID and
// Markov expose exact block laws and genuinely two-sided sampling (leftward
// extension runs the reversed chain); Custom is sampling-only.
class SourceModel {
 public:
  enum class Kind { Iid, Markov, Custom };

  static SourceModel iid(ProbVec pmf);
  static SourceModel markov(MarkovChain chain);
  static SourceModel custom(CustomSource src);

  Kind kind() const { return kind_; }
  bool has_exact_law() const { return kind_ != Kind::Custom; }
  int num_states() const;

  // For the exact paths; IID is represented as the equal-rows chain.
  const Mat& trans_matrix() const { return trans_; }
  const Mat& reverse_matrix() const { return rev_; }
  const ProbVec& stationary() const { return pi_; }
  const MarkovChain* chain() const { return chain_ ? chain_.get() : nullptr; }
  const CustomSource* custom_source() const {
    return kind_ == Kind::Custom ? &custom_ : nullptr;
  }

 private:
  SourceModel() = default;
  Kind kind_ = Kind::Iid;
  ProbVec pi_;
  Mat trans_;
  Mat rev_;
  std::shared_ptr<MarkovChain> chain_;
  CustomSource custom_;
};

// Stationary law restricted to [lo, hi]: index lo from pi, the rest forward
// by trans (IID: independent draws). Deterministic in (model, range, seed).
Window<int> sample_window(const SourceModel& model, int64_t lo, int64_t hi,
                          Seed seed);

// Distribution-exact extension: rightward continues trans from the last
// value, leftward continues the reversed chain from the first. The same seed
// that sampled the window extends it (draws are counter-based per index).
Window<int> extend_window(const SourceModel& model, Window<int> w,
                          int64_t new_lo, int64_t new_hi, Seed seed);

// Exact joint law of the source at the given strictly increasing positions.
JointPmf block_pmf(const SourceModel& model, std::span<const int64_t> positions,
                   const std::vector<std::string>& atom_labels = {});

}  // namespace repstring
