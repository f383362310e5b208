#pragma once

#include <cstdint>
#include <variant>

#include "repstring/alphabet.hpp"
#include "repstring/window.hpp"

namespace repstring {

// Increasing enumeration of the positions selected by one side of the MID
// sequence, anchored so that entry 0 is the largest nonpositive hit:
//   input clock  (zeta): positions with Z in {M, D}
//   output clock (xi):   positions with Z in {M, I}
enum class ClockKind { Input, Output };

struct TimeChange {
  ClockKind kind;
  Window<int64_t> entries;  // clock index k -> sequence position
  int64_t span_lo = 0;      // z-span the enumeration saw
  int64_t span_hi = -1;
  // Interval of positions over which the entry list is complete: inside it,
  // a position absent from entries is genuinely unselected.
  int64_t complete_lo = 0;
  int64_t complete_hi = -1;
};

enum class Side { Left, Right };

// Requested entries are not determined by the z window; caller must extend z
// on the named side and retry. Never silently truncates.
struct InsufficientWindow {
  Side side;
  int64_t needed_k;
};

using TimeChangeResult = std::variant<TimeChange, InsufficientWindow>;

TimeChangeResult input_clock(const Window<Mid>& z, int64_t k_lo, int64_t k_hi);
TimeChangeResult output_clock(const Window<Mid>& z, int64_t k_lo, int64_t k_hi);

// All determined entries (anchored), regardless of a requested range; returns
// InsufficientWindow only when the anchor itself cannot be placed.
TimeChangeResult full_clock(const Window<Mid>& z, ClockKind kind);

}  // namespace repstring
