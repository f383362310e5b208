#include "repstring/timechange.hpp"

#include <vector>

#include "repstring/errors.hpp"

namespace repstring {
namespace {

bool selected(Mid s, ClockKind kind) {
  return kind == ClockKind::Input ? selects_input(s) : selects_output(s);
}

TimeChangeResult build(const Window<Mid>& z, ClockKind kind, int64_t k_lo,
                       int64_t k_hi, bool clip_to_request) {
  if (z.empty()) return InsufficientWindow{Side::Left, 0};
  if (!z.contains(0)) throw Error("z window must contain index 0");
  std::vector<int64_t> hits;
  int64_t anchor_ordinal = -1;  // ordinal (within hits) of the largest hit <= 0
  for (int64_t j = z.lo(); j <= z.hi(); ++j) {
    if (selected(z.at(j), kind)) {
      if (j <= 0) anchor_ordinal = static_cast<int64_t>(hits.size());
      hits.push_back(j);
    }
  }
  if (anchor_ordinal < 0) {
    // No nonpositive hit is visible, so entry 0 cannot be placed.
    return InsufficientWindow{Side::Left, k_lo < 0 ? k_lo : 0};
  }
  int64_t k_min = -anchor_ordinal;
  int64_t k_max = static_cast<int64_t>(hits.size()) - 1 - anchor_ordinal;
  if (clip_to_request) {
    if (k_lo < k_min) return InsufficientWindow{Side::Left, k_lo};
    if (k_hi > k_max) return InsufficientWindow{Side::Right, k_hi};
  } else {
    k_lo = k_min;
    k_hi = k_max;
  }
  std::vector<int64_t> entries(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (int64_t k = k_lo; k <= k_hi; ++k) {
    entries[static_cast<std::size_t>(k - k_lo)] =
        hits[static_cast<std::size_t>(k + anchor_ordinal)];
  }
  TimeChange tc{kind, Window<int64_t>(k_lo, std::move(entries)), z.lo(), z.hi(),
                0, -1};
  tc.complete_lo = (k_lo == k_min) ? z.lo() : tc.entries.at(k_lo);
  tc.complete_hi = (k_hi == k_max) ? z.hi() : tc.entries.at(k_hi);
  return tc;
}

}  // namespace

TimeChangeResult input_clock(const Window<Mid>& z, int64_t k_lo, int64_t k_hi) {
  if (k_lo > k_hi) throw Error("clock range is empty");
  return build(z, ClockKind::Input, k_lo, k_hi, true);
}

TimeChangeResult output_clock(const Window<Mid>& z, int64_t k_lo, int64_t k_hi) {
  if (k_lo > k_hi) throw Error("clock range is empty");
  return build(z, ClockKind::Output, k_lo, k_hi, true);
}

TimeChangeResult full_clock(const Window<Mid>& z, ClockKind kind) {
  return build(z, kind, 0, 0, false);
}

}  // namespace repstring
