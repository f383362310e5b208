#pragma once

#include <cstdint>
#include <vector>

#include "repstring/rng.hpp"
#include "repstring/source.hpp"

namespace repstring {

// One simulated path of a stationary 0/1 source: partial sums S_n and the
// visit counts eta_j = #{n >= 1 : S_n = j} up to the horizon.
struct RenewalTrace {
  std::vector<int64_t> s;    // S_0 = 0, ..., S_horizon
  std::vector<int64_t> eta;  // indexed by level j, 0 .. S_horizon
  double p = 0.0;            // P(X_0 = 1)

  int64_t horizon() const { return static_cast<int64_t>(s.size()) - 1; }
  // Visit-count identity: for every level J left strictly before the horizon,
  // sum_{j <= J} eta_j equals the last n with S_n = J. Exact integer identity.
  bool visit_identity_holds() const;
};

RenewalTrace simulate_renewal(const SourceModel& zero_one, int64_t horizon,
                              Seed seed);

}  // namespace repstring
