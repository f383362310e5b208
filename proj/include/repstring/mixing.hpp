#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "repstring/joint_pmf.hpp"
#include "repstring/rng.hpp"
#include "repstring/source.hpp"

namespace repstring {

// Absolute-regularity coefficient between the two atom-grouped marginals of a
// joint table: 1/2 sum_ij |p(i,j) - p(i) q(j)|. For purely atomic sigma-fields
// the supremum over measurable partitions is attained at the atom partitions
// (refining never decreases the sum); tests cross-check with an explicit
// partition search on tables with <= 6 atoms per side. left_axes selects the
// axes of the left group; overflow atoms participate as ordinary atoms.
double beta_of_joint(const JointPmf& j, std::span<const int> left_axes);

struct AlphaResult {
  double value = 0.0;
  bool lower_bound_only = false;  // randomized search, not exact enumeration
};

// Strong-mixing coefficient sup_{A,B} |P(A x B) - P(A) P(B)|. Exact subset
// enumeration over the smaller side when it has <= exact_atom_limit atoms
// (the inner maximization over the other side is solved by a sign split);
// otherwise a seeded randomized subset search returning a certified lower
// bound flagged lower_bound_only.
AlphaResult alpha_of_joint(const JointPmf& j, std::span<const int> left_axes,
                           int exact_atom_limit = 20,
                           Seed search_seed = Seed(0x5eed), int search_iters = 50000);

// 1/2 sum |a - b| over cells plus the deficit atoms; axes must agree.
double tv_distance(const JointPmf& a, const JointPmf& b);

struct BlockBeta {
  double value = 0.0;
  double se = 0.0;          // 0 for exact
  double bias_bound = 0.0;  // plug-in bias bound, 0 for exact
};

// Past/future block positions (-w+1..0) and (lag..lag+w-1).
std::vector<int64_t> block_positions(int64_t lag, int width);

// Exact block coefficient of an IID/Markov source at the given lag and width.
// The reported value is the finite-block approximation at this width; it
// approaches the sequence-level coefficient from below as width grows.
BlockBeta block_beta_oracle(const SourceModel& model, int64_t lag, int width);

// Plug-in estimate from empirical cell frequencies. draw(rep, out) fills the
// 2w atom indices of one block realization; atoms_per_position sizes the
// table. SE by multinomial bootstrap; bias_bound is the deterministic
// multinomial L1 bound (sqrt(C) + sqrt(Cl) + sqrt(Cr)) / (2 sqrt(N)).
BlockBeta block_beta_empirical(
    const std::function<void(std::size_t rep, std::span<int> out)>& draw,
    int atoms_per_position, int64_t lag, int width, std::size_t samples,
    Seed seed, int bootstrap_resamples = 200);

struct MixingProfile {
  std::vector<int64_t> lags;
  std::vector<double> values;
  std::vector<double> se;
  std::string method;  // exact | empirical | oracle
  int width = 1;
  void write_csv(std::ostream& os, bool header = true) const;
};

MixingProfile beta_profile_oracle(const SourceModel& model,
                                  std::span<const int64_t> lags, int width);
MixingProfile beta_profile_empirical(
    const std::function<void(int64_t lag, std::size_t rep, std::span<int> out)>& draw,
    int atoms_per_position, std::span<const int64_t> lags, int width,
    std::size_t samples, Seed seed);

}  // namespace repstring
