#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "repstring/alphabet.hpp"
#include "repstring/source.hpp"
#include "repstring/stochastic.hpp"
#include "repstring/timechange.hpp"
#include "repstring/window.hpp"

namespace repstring {

// The replication channel: the input string X survives at input-clock
// positions (placeholder elsewhere), is read back through the output clock,
// and every output slot is randomized once (mutation row or insertion pmf).

enum class Measure { P, P0 };  // P0 conditions on an output-clock renewal at 0

inline int placeholder_symbol(int alphabet_size) { return alphabet_size; }

// Scatter x through the input clock onto [j_lo, j_hi]; unselected positions
// get the placeholder.
Window<int> build_xbar(const Window<int>& x, const TimeChange& zeta,
                       int64_t j_lo, int64_t j_hi, int alphabet_size);

// Read xbar back through the output clock: ybar[l] = xbar[xi_l].
Window<int> build_ybar(const Window<int>& xbar, const TimeChange& xi,
                       int64_t l_lo, int64_t l_hi);

// Randomize: mutation row at surviving symbols, insertion pmf at placeholders.
// The output never contains the placeholder.
Window<int> build_y(const Window<int>& ybar, const Window<double>& u,
                    const MutationKernel& mut, const InsertionDist& ins,
                    int alphabet_size);

struct MarkedGap {
  Mid letter;   // never D
  int64_t gap;  // >= 1
  bool operator==(const MarkedGap&) const = default;
};
struct UpsilonValue {
  MarkedGap v;
  int y;
  bool operator==(const UpsilonValue&) const = default;
};

std::pair<Window<MarkedGap>, Window<UpsilonValue>> build_v_upsilon(
    const Window<Mid>& z, const TimeChange& xi, const Window<int>& y,
    int64_t k_lo, int64_t k_hi);

struct ReplicationConfig {
  Alphabet alphabet;
  SourceModel x_model;    // over the alphabet
  SourceModel mid_model;  // 3 states: M, I, D
  MutationKernel mutation;
  InsertionDist insertion;
  int64_t max_window = int64_t{1} << 16;  // growth cap per side, hard error beyond
};

struct ReplicationSample {
  Window<int> x;
  Window<Mid> z;
  TimeChange zeta;  // input clock, complete over z's span
  TimeChange xi;    // output clock
  Window<int> xbar;  // over z's span, with placeholders
  Window<int> ybar;
  Window<double> u;
  Window<int> y;
  Window<MarkedGap> v;
  Window<UpsilonValue> upsilon;
  Measure measure = Measure::P;

  // Line-oriented text form: one field per line, "name lo hi values...".
  std::string to_text(const Alphabet& alphabet) const;
};

// Full pipeline on upsilon indices [k_lo, k_hi]. Draws Z (under P0, whole
// windows are redrawn until z[0] is in {M, I}), grows the Z window until both
// clocks are determined, then samples X and U on the induced ranges. The X
// and U substreams are independent of the Z substream and of rejection
// retries, so their laws match under P and P0.
ReplicationSample sample_replication(const ReplicationConfig& cfg, int64_t k_lo,
                                     int64_t k_hi, Measure measure, Seed seed);

struct CountT {
  int64_t t;          // selected input positions in [1, xi_N - 1]
  int64_t mut_count;  // output positions 1..N-1 carrying a mutation
};

// t >= mut_count always.
CountT count_T(const ReplicationSample& sample, int64_t n);

// Real-valued mode: sampling only. The MID machinery is unchanged; symbols
// are positive reals and the placeholder is the reserved value 0.
struct RealReplicationConfig {
  std::function<Window<double>(int64_t lo, int64_t hi, RandomStream&)> x_sampler;
  SourceModel mid_model;
  std::function<double(double x, double u)> mutate_g;
  std::function<double(double u)> insert_h;
  int64_t max_window = int64_t{1} << 16;
};

struct RealReplicationSample {
  Window<double> x;
  Window<Mid> z;
  TimeChange zeta;
  TimeChange xi;
  Window<double> xbar;  // 0.0 marks insertion slots
  Window<double> ybar;
  Window<double> u;
  Window<double> y;
  Measure measure = Measure::P;
};

RealReplicationSample sample_replication_real(const RealReplicationConfig& cfg,
                                              int64_t k_lo, int64_t k_hi,
                                              Measure measure, Seed seed);

}  // namespace repstring
