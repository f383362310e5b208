#include "repstring/renewal.hpp"

#include "repstring/errors.hpp"

namespace repstring {

bool RenewalTrace::visit_identity_holds() const {
  int64_t h = horizon();
  int64_t top = s[static_cast<std::size_t>(h)];
  // last n with S_n = J, computed by a single backward scan
  std::vector<int64_t> last(static_cast<std::size_t>(top) + 1, -1);
  for (int64_t n = h; n >= 0; --n) {
    int64_t level = s[static_cast<std::size_t>(n)];
    if (last[static_cast<std::size_t>(level)] < 0) {
      last[static_cast<std::size_t>(level)] = n;
    }
  }
  int64_t cum = 0;
  for (int64_t j = 0; j < top; ++j) {  // levels left strictly before the horizon
    cum += eta[static_cast<std::size_t>(j)];
    if (cum != last[static_cast<std::size_t>(j)]) return false;
  }
  return true;
}

RenewalTrace simulate_renewal(const SourceModel& zero_one, int64_t horizon,
                              Seed seed) {
  if (zero_one.num_states() != 2) throw Error("renewal source must be 0/1");
  if (horizon < 1) throw Error("renewal horizon must be >= 1");
  RenewalTrace tr;
  tr.p = zero_one.has_exact_law() ? zero_one.stationary()[1] : -1.0;
  if (zero_one.has_exact_law() && !(tr.p > 0.0 && tr.p < 1.0)) {
    throw DegenerateSourceError("0/1 source must have 0 < p < 1");
  }
  Window<int> w = sample_window(zero_one, 1, horizon, seed);
  tr.s.resize(static_cast<std::size_t>(horizon) + 1, 0);
  for (int64_t n = 1; n <= horizon; ++n) {
    tr.s[static_cast<std::size_t>(n)] =
        tr.s[static_cast<std::size_t>(n - 1)] + w.at(n);
  }
  int64_t top = tr.s[static_cast<std::size_t>(horizon)];
  tr.eta.assign(static_cast<std::size_t>(top) + 1, 0);
  for (int64_t n = 1; n <= horizon; ++n) {
    ++tr.eta[static_cast<std::size_t>(tr.s[static_cast<std::size_t>(n)])];
  }
  return tr;
}

}  // namespace repstring
