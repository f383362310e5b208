#include "repstring/replication.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "repstring/csv.hpp"
#include "repstring/errors.hpp"

namespace repstring {
namespace {

std::unordered_map<int64_t, int64_t> position_to_index(const TimeChange& tc) {
  std::unordered_map<int64_t, int64_t> map;
  for (int64_t k = tc.entries.lo(); k <= tc.entries.hi(); ++k) {
    map.emplace(tc.entries.at(k), k);
  }
  return map;
}

}  // namespace

Window<int> build_xbar(const Window<int>& x, const TimeChange& zeta,
                       int64_t j_lo, int64_t j_hi, int alphabet_size) {
  if (zeta.kind != ClockKind::Input) throw Error("build_xbar needs the input clock");
  if (j_lo > j_hi) throw Error("empty xbar range");
  if (j_lo < zeta.complete_lo || j_hi > zeta.complete_hi) {
    throw CoverageGapError("input clock does not classify the requested range");
  }
  auto pos2k = position_to_index(zeta);
  std::vector<int> vals(static_cast<std::size_t>(j_hi - j_lo + 1),
                        placeholder_symbol(alphabet_size));
  for (int64_t j = j_lo; j <= j_hi; ++j) {
    auto it = pos2k.find(j);
    if (it == pos2k.end()) continue;
    if (!x.contains(it->second)) {
      throw CoverageGapError("x does not cover clock index " +
                             std::to_string(it->second));
    }
    vals[static_cast<std::size_t>(j - j_lo)] = x.at(it->second);
  }
  return Window<int>(j_lo, std::move(vals));
}

Window<int> build_ybar(const Window<int>& xbar, const TimeChange& xi,
                       int64_t l_lo, int64_t l_hi) {
  if (xi.kind != ClockKind::Output) throw Error("build_ybar needs the output clock");
  if (l_lo > l_hi) throw Error("empty ybar range");
  std::vector<int> vals(static_cast<std::size_t>(l_hi - l_lo + 1));
  for (int64_t l = l_lo; l <= l_hi; ++l) {
    if (!xi.entries.contains(l)) {
      throw CoverageGapError("output clock does not cover index " + std::to_string(l));
    }
    int64_t pos = xi.entries.at(l);
    if (!xbar.contains(pos)) {
      throw CoverageGapError("xbar does not cover position " + std::to_string(pos));
    }
    vals[static_cast<std::size_t>(l - l_lo)] = xbar.at(pos);
  }
  return Window<int>(l_lo, std::move(vals));
}

Window<int> build_y(const Window<int>& ybar, const Window<double>& u,
                    const MutationKernel& mut, const InsertionDist& ins,
                    int alphabet_size) {
  int ph = placeholder_symbol(alphabet_size);
  std::vector<int> vals(ybar.size());
  for (int64_t l = ybar.lo(); l <= ybar.hi(); ++l) {
    if (!u.contains(l)) {
      throw CoverageGapError("u does not cover position " + std::to_string(l));
    }
    int b = ybar.at(l);
    int out = (b == ph) ? inverse_cdf(ins.pmf(), u.at(l))
                        : inverse_cdf(mut.row(b), u.at(l));
    vals[static_cast<std::size_t>(l - ybar.lo())] = out;
  }
  return Window<int>(ybar.lo(), std::move(vals));
}

std::pair<Window<MarkedGap>, Window<UpsilonValue>> build_v_upsilon(
    const Window<Mid>& z, const TimeChange& xi, const Window<int>& y,
    int64_t k_lo, int64_t k_hi) {
  if (xi.kind != ClockKind::Output) throw Error("build_v_upsilon needs the output clock");
  if (k_lo > k_hi) throw Error("empty upsilon range");
  std::vector<MarkedGap> vs(static_cast<std::size_t>(k_hi - k_lo + 1));
  std::vector<UpsilonValue> us(vs.size());
  for (int64_t k = k_lo; k <= k_hi; ++k) {
    if (!xi.entries.contains(k) || !xi.entries.contains(k - 1)) {
      throw CoverageGapError("output clock does not cover gap at " + std::to_string(k));
    }
    int64_t pos = xi.entries.at(k);
    if (!z.contains(pos)) {
      throw CoverageGapError("z does not cover position " + std::to_string(pos));
    }
    if (!y.contains(k)) {
      throw CoverageGapError("y does not cover index " + std::to_string(k));
    }
    MarkedGap v{z.at(pos), pos - xi.entries.at(k - 1)};
    if (v.letter == Mid::D || v.gap < 1) throw Error("corrupt output clock");
    vs[static_cast<std::size_t>(k - k_lo)] = v;
    us[static_cast<std::size_t>(k - k_lo)] = UpsilonValue{v, y.at(k)};
  }
  return {Window<MarkedGap>(k_lo, std::move(vs)),
          Window<UpsilonValue>(k_lo, std::move(us))};
}

namespace {

double class_mass(const SourceModel& mid, bool output_side) {
  const ProbVec& pi = mid.stationary();
  double m = pi[static_cast<std::size_t>(Mid::M)];
  return m + (output_side ? pi[static_cast<std::size_t>(Mid::I)]
                          : pi[static_cast<std::size_t>(Mid::D)]);
}

// Draw z and grow it until both clocks are determined for the requested
// upsilon range. Whole-window redraws implement the P0 conditioning.
struct ZResult {
  Window<Mid> z;
  TimeChange xi;
  TimeChange zeta;
};

Window<Mid> to_mid(const Window<int>& w) {
  std::vector<Mid> vals(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    int v = w.values()[i];
    if (v < 0 || v > 2) throw Error("MID source emitted a value outside {0,1,2}");
    vals[i] = static_cast<Mid>(v);
  }
  return Window<Mid>(w.lo(), std::move(vals));
}

ZResult draw_z(const SourceModel& mid, int64_t k_lo, int64_t k_hi,
               Measure measure, Seed seed, int64_t max_window) {
  if (mid.num_states() != 3) throw Error("MID source must have 3 states");
  if (mid.has_exact_law()) {
    if (class_mass(mid, false) <= 0.0) {
      throw NonErgodicMidError("P(Z in {M,D}) = 0: input clock cannot anchor");
    }
    if (class_mass(mid, true) <= 0.0) {
      throw NonErgodicMidError("P(Z in {M,I}) = 0: output clock cannot anchor");
    }
  }
  bool custom = !mid.has_exact_law();
  int64_t half = custom ? mid.custom_source()->margin : 16;
  if (half <= 0) half = 1;
  Seed zroot = seed.derive("Z");
  for (uint64_t attempt = 0;; ++attempt) {
    if (attempt > 1000000) {
      throw NonErgodicMidError("P0 rejection did not terminate");
    }
    Seed zseed = zroot.derive(attempt);
    Window<int> zi = sample_window(mid, -half, half, zseed);
    if (measure == Measure::P0 &&
        selects_output(static_cast<Mid>(zi.at(0))) == false) {
      continue;
    }
    // Grow until the output clock covers [k_lo - 1, k_hi] and the input clock
    // anchors; growth doubles the deficient side, capped at max_window.
    Window<Mid> z = to_mid(zi);
    for (;;) {
      int64_t grow_lo = z.lo(), grow_hi = z.hi();
      TimeChangeResult xr = output_clock(z, k_lo - 1, k_hi);
      if (auto* miss = std::get_if<InsufficientWindow>(&xr)) {
        if (miss->side == Side::Left) grow_lo = 2 * z.lo();
        else grow_hi = 2 * z.hi();
      } else {
        TimeChangeResult zr = full_clock(z, ClockKind::Input);
        if (std::get_if<InsufficientWindow>(&zr) != nullptr) {
          grow_lo = 2 * z.lo();
        } else {
          return ZResult{std::move(z), std::get<TimeChange>(std::move(xr)),
                         std::get<TimeChange>(std::move(zr))};
        }
      }
      if (-grow_lo > max_window || grow_hi > max_window) {
        throw Error("z window growth exceeded the cap (" +
                    std::to_string(max_window) + " indices per side)");
      }
      zi = extend_window(mid, std::move(zi), grow_lo, grow_hi, zseed);
      z = to_mid(zi);
    }
  }
}

}  // namespace

ReplicationSample sample_replication(const ReplicationConfig& cfg, int64_t k_lo,
                                     int64_t k_hi, Measure measure, Seed seed) {
  if (k_lo > k_hi) throw Error("empty upsilon range");
  if (cfg.x_model.num_states() != cfg.alphabet.size()) {
    throw Error("x model state count does not match the alphabet");
  }
  ZResult zr = draw_z(cfg.mid_model, k_lo, k_hi, measure, seed, cfg.max_window);

  ReplicationSample s;
  s.measure = measure;
  s.z = std::move(zr.z);
  s.xi = std::move(zr.xi);
  s.zeta = std::move(zr.zeta);

  s.x = sample_window(cfg.x_model, s.zeta.entries.lo(), s.zeta.entries.hi(),
                      seed.derive("X"));
  s.xbar = build_xbar(s.x, s.zeta, s.z.lo(), s.z.hi(), cfg.alphabet.size());
  s.ybar = build_ybar(s.xbar, s.xi, k_lo, k_hi);

  Seed useed = seed.derive("U");
  std::vector<double> uvals(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (int64_t l = k_lo; l <= k_hi; ++l) {
    uvals[static_cast<std::size_t>(l - k_lo)] = useed.uniform_at(l);
  }
  s.u = Window<double>(k_lo, std::move(uvals));

  s.y = build_y(s.ybar, s.u, cfg.mutation, cfg.insertion, cfg.alphabet.size());
  auto vu = build_v_upsilon(s.z, s.xi, s.y, k_lo, k_hi);
  s.v = std::move(vu.first);
  s.upsilon = std::move(vu.second);
  return s;
}

CountT count_T(const ReplicationSample& sample, int64_t n) {
  if (n < 1) throw Error("count_T needs n >= 1");
  if (!sample.xi.entries.contains(n)) {
    throw CoverageGapError("output clock does not cover index " + std::to_string(n));
  }
  int64_t xi_n = sample.xi.entries.at(n);
  CountT out{0, 0};
  for (int64_t k = 1; k <= xi_n - 1; ++k) {
    if (!sample.z.contains(k)) {
      throw CoverageGapError("z does not cover position " + std::to_string(k));
    }
    if (selects_input(sample.z.at(k))) ++out.t;
  }
  for (int64_t i = 1; i <= n - 1; ++i) {
    if (!sample.xi.entries.contains(i)) {
      throw CoverageGapError("output clock does not cover index " + std::to_string(i));
    }
    int64_t pos = sample.xi.entries.at(i);
    if (!sample.z.contains(pos)) {
      throw CoverageGapError("z does not cover position " + std::to_string(pos));
    }
    if (sample.z.at(pos) == Mid::M) ++out.mut_count;
  }
  if (out.t < out.mut_count) throw Error("count invariant violated");
  return out;
}

namespace {

template <typename T, typename Fmt>
void write_field(std::ostringstream& os, const char* name, const Window<T>& w,
                 Fmt fmt) {
  os << name << ' ' << w.lo() << ' ' << w.hi();
  for (int64_t i = w.lo(); i <= w.hi(); ++i) os << ' ' << fmt(w.at(i));
  os << '\n';
}

}  // namespace

std::string ReplicationSample::to_text(const Alphabet& alphabet) const {
  std::ostringstream os;
  int ph = placeholder_symbol(alphabet.size());
  auto sym = [&](int v) -> std::string {
    return v == ph ? "." : alphabet.label(v);
  };
  os << "measure " << (measure == Measure::P ? "P" : "P0") << '\n';
  write_field(os, "x", x, [&](int v) { return alphabet.label(v); });
  write_field(os, "z", z, [](Mid s) { return std::string(1, mid_char(s)); });
  write_field(os, "zeta", zeta.entries, [](int64_t v) { return std::to_string(v); });
  write_field(os, "xi", xi.entries, [](int64_t v) { return std::to_string(v); });
  write_field(os, "xbar", xbar, sym);
  write_field(os, "ybar", ybar, sym);
  write_field(os, "u", u, [](double v) { return format_number(v); });
  write_field(os, "y", y, [&](int v) { return alphabet.label(v); });
  write_field(os, "v", v, [](const MarkedGap& g) {
    return std::string(1, mid_char(g.letter)) + "," + std::to_string(g.gap);
  });
  write_field(os, "upsilon", upsilon, [&](const UpsilonValue& uv) {
    return std::string(1, mid_char(uv.v.letter)) + "," +
           std::to_string(uv.v.gap) + "," + alphabet.label(uv.y);
  });
  return os.str();
}

RealReplicationSample sample_replication_real(const RealReplicationConfig& cfg,
                                              int64_t k_lo, int64_t k_hi,
                                              Measure measure, Seed seed) {
  if (k_lo > k_hi) throw Error("empty range");
  if (!cfg.x_sampler || !cfg.mutate_g || !cfg.insert_h) {
    throw Error("real-valued mode needs x_sampler, mutate_g and insert_h");
  }
  ZResult zr = draw_z(cfg.mid_model, k_lo, k_hi, measure, seed, cfg.max_window);
  RealReplicationSample s;
  s.measure = measure;
  s.z = std::move(zr.z);
  s.xi = std::move(zr.xi);
  s.zeta = std::move(zr.zeta);

  RandomStream xs(seed.derive("X"));
  s.x = cfg.x_sampler(s.zeta.entries.lo(), s.zeta.entries.hi(), xs);
  if (s.x.lo() != s.zeta.entries.lo() || s.x.hi() != s.zeta.entries.hi()) {
    throw Error("x sampler returned the wrong range");
  }
  for (double v : s.x.values()) {
    if (!(v > 0.0)) throw Error("real-valued x must be positive (0 is reserved)");
  }

  // scatter / read back with 0.0 as the placeholder
  std::vector<double> xbar(static_cast<std::size_t>(s.z.hi() - s.z.lo() + 1), 0.0);
  for (int64_t k = s.zeta.entries.lo(); k <= s.zeta.entries.hi(); ++k) {
    xbar[static_cast<std::size_t>(s.zeta.entries.at(k) - s.z.lo())] = s.x.at(k);
  }
  s.xbar = Window<double>(s.z.lo(), std::move(xbar));

  Seed useed = seed.derive("U");
  std::vector<double> ybar(static_cast<std::size_t>(k_hi - k_lo + 1));
  std::vector<double> uvals(ybar.size());
  std::vector<double> yvals(ybar.size());
  for (int64_t l = k_lo; l <= k_hi; ++l) {
    double b = s.xbar.at(s.xi.entries.at(l));
    double uu = useed.uniform_at(l);
    ybar[static_cast<std::size_t>(l - k_lo)] = b;
    uvals[static_cast<std::size_t>(l - k_lo)] = uu;
    yvals[static_cast<std::size_t>(l - k_lo)] =
        b == 0.0 ? cfg.insert_h(uu) : cfg.mutate_g(b, uu);
  }
  s.ybar = Window<double>(k_lo, std::move(ybar));
  s.u = Window<double>(k_lo, std::move(uvals));
  s.y = Window<double>(k_lo, std::move(yvals));
  return s;
}

}  // namespace repstring
