#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "repstring/joint_pmf.hpp"
#include "repstring/replication.hpp"

namespace repstring::exact {

// Exact joint laws of model variables on the output-clock index line, under P
// or P0, for IID/Markov sources. U is integrated out through the mutation
// rows / insertion pmf; X is transported along the surviving positions by
// powers of its transition matrix; gap tails (runs of deletions) are summed
// in closed form through (I - rho Q_X)^-1 with rho = P(D -> D) < 1, so
// capped-gap block queries come out with zero mass deficit. Raw-gap queries
// route values beyond gap_cap to the deficit (the event the table cannot
// name). Custom sources are refused.

// What to record at one output-clock index k.
enum class Proj {
  Letter,     // Z at the clock position; atoms M, I, D (D carries mass 0)
  GapCapped,  // clock gap with atoms 1..cap and an overflow atom
  GapRaw,     // clock gap with atoms 1..cap; larger gaps -> mass deficit
  V,          // letter x capped gap
  Y,          // output symbol
  Upsilon     // letter x capped gap x output symbol
};

struct Query {
  int64_t k;
  Proj proj;
};

struct EnumerateParams {
  int gap_cap = 12;
  double deficit_tolerance = 1e-8;
};

JointPmf enumerate_model(const ReplicationConfig& cfg,
                         std::span<const Query> queries, Measure measure,
                         const EnumerateParams& params);

// Blocks of (letter, gap, output symbol) at the given strictly increasing
// clock indices; three axes per position.
JointPmf upsilon_block_dist(const ReplicationConfig& cfg,
                            std::span<const int64_t> positions, Measure measure,
                            const EnumerateParams& params);

// Axis layout shared with empirical tables.
std::vector<Axis> upsilon_axes(const Alphabet& alphabet, int gap_cap, int64_t k);

// Letter-to-letter kernel of consecutive clock positions (2x2 over {M, I}) and
// its stationary law under P0.
Mat letter_kernel(const SourceModel& mid);
std::vector<double> letter_stationary(const SourceModel& mid);

// Sequence-level absolute-regularity coefficient of the marked-gap process at
// lag n under P0. The marked-gap process is Markov (its transition law depends
// only on the current letter), so the coefficient collapses to the lag-n pair,
// and the gap tails share a sign within each letter pair, which closes the
// atom sums exactly.
double v_beta_exact(const SourceModel& mid, int64_t n);

// Law of the number of mutation letters among clock positions 1..n-1 under P0.
std::vector<double> mut_count_dist(const SourceModel& mid, int64_t n);

}  // namespace repstring::exact
