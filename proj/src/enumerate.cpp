#include "repstring/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "repstring/errors.hpp"
#include "repstring/kernels.hpp"

namespace repstring::exact {
namespace {

constexpr int kM = 0;  // scan letters: 0 = M, 1 = I
constexpr int kI = 1;

int mid_index(Mid s) { return static_cast<int>(s); }

// Precomputed transfer operators for one (mid source, x source, gap_cap).
struct Closure {
  int m = 0;         // alphabet size
  int cap = 0;
  double r = 0.0;    // P(Z0 in {M, I})
  double rho = 0.0;  // P(D -> D)
  double q_ss[2][2];  // Q(s, s') for s, s' in {M, I}
  double q_sd[2];     // Q(s, D)
  double q_ds[2];     // Q(D, s')
  double lambda[2];   // stationary letter law under P0
  std::vector<Mat> xpow;  // QX^0 .. QX^(cap+1)
  Mat tail[2];            // sum_{d > cap} rho^(d-2) QX^(d-1+i)
  Mat tail_lb[2];         // sum_{d > cap} d rho^(d-2) QX^(d-1+i)
  Mat big_g[2][2];        // G(s, s'): all gaps summed, X transported
  Mat big_g_lb[2][2];     // length-biased variant (origin-straddling gap)
  ProbVec pix;

  double zw(int s, int64_t d, int s2) const {
    if (d == 1) return q_ss[s][s2];
    return q_sd[s] * std::pow(rho, static_cast<double>(d - 2)) * q_ds[s2];
  }
  double zw_tail(int s, int s2) const {  // sum_{d > cap}
    return q_sd[s] * std::pow(rho, static_cast<double>(cap - 1)) /
           (1.0 - rho) * q_ds[s2];
  }
  double zw_tail_lb(int s, int s2) const {  // sum_{d > cap} d * zw
    double c = static_cast<double>(cap);
    return q_sd[s] * q_ds[s2] * std::pow(rho, c - 1.0) *
           ((c + 1.0) / (1.0 - rho) + rho / ((1.0 - rho) * (1.0 - rho)));
  }
};

Closure make_closure(const ReplicationConfig& cfg, int gap_cap) {
  if (!cfg.mid_model.has_exact_law() || !cfg.x_model.has_exact_law()) {
    throw UnsupportedExtensionError("exact enumeration needs IID/Markov sources");
  }
  if (cfg.mid_model.num_states() != 3) throw Error("MID source must have 3 states");
  if (gap_cap < 1) throw Error("gap_cap must be >= 1");
  Closure c;
  c.m = cfg.x_model.num_states();
  c.cap = gap_cap;
  const Mat& q = cfg.mid_model.trans_matrix();
  const ProbVec& piz = cfg.mid_model.stationary();
  int im = mid_index(Mid::M), ii = mid_index(Mid::I), id = mid_index(Mid::D);
  c.rho = q(id, id);
  c.r = piz[static_cast<std::size_t>(im)] + piz[static_cast<std::size_t>(ii)];
  if (!(c.r > 0.0)) {
    throw NonErgodicMidError("P(Z in {M,I}) = 0: output clock cannot anchor");
  }
  if (!(c.rho < 1.0)) {
    throw NonErgodicMidError("P(D -> D) = 1: deletions never end");
  }
  int letters[2] = {im, ii};
  for (int s = 0; s < 2; ++s) {
    for (int s2 = 0; s2 < 2; ++s2) c.q_ss[s][s2] = q(letters[s], letters[s2]);
    c.q_sd[s] = q(letters[s], id);
    c.q_ds[s] = q(id, letters[s]);
    c.lambda[s] = piz[static_cast<std::size_t>(letters[s])] / c.r;
  }
  c.pix = cfg.x_model.stationary();
  const Mat& qx = cfg.x_model.trans_matrix();
  c.xpow.reserve(static_cast<std::size_t>(gap_cap + 2));
  c.xpow.push_back(Mat::identity(c.m));
  for (int p = 1; p <= gap_cap + 1; ++p) c.xpow.push_back(c.xpow.back() * qx);

  Mat a = qx.scaled(c.rho);
  Mat big_r = inverse(Mat::identity(c.m) + a.scaled(-1.0));  // (I - rho QX)^-1
  Mat big_r2 = big_r * big_r;
  double rho_pow = std::pow(c.rho, static_cast<double>(gap_cap - 1));
  for (int iota = 0; iota < 2; ++iota) {
    c.tail[iota] = c.xpow[static_cast<std::size_t>(gap_cap + iota)] *
                   big_r.scaled(rho_pow);
    // sum_{d > cap} d rho^(d-2) QX^(d-1+iota)
    //   = QX^(1+iota) A^(cap-1) [(cap+1) R + A R^2],  A = rho QX
    Mat series = big_r.scaled(static_cast<double>(gap_cap + 1)) + a * big_r2;
    c.tail_lb[iota] = c.xpow[static_cast<std::size_t>(1 + iota)] *
                      a.pow(gap_cap - 1) * series;
  }
  for (int s = 0; s < 2; ++s) {
    for (int s2 = 0; s2 < 2; ++s2) {
      int iota = (s2 == kM) ? 1 : 0;
      Mat direct = c.xpow[static_cast<std::size_t>(iota)].scaled(c.q_ss[s][s2]);
      Mat run = c.xpow[static_cast<std::size_t>(1 + iota)] * big_r;
      c.big_g[s][s2] = direct + run.scaled(c.q_sd[s] * c.q_ds[s2]);
      // length-biased: d = 1 gets weight 1, runs get sum d rho^(d-2) = 2R + A R^2
      Mat run_lb = c.xpow[static_cast<std::size_t>(1 + iota)] *
                   (big_r.scaled(2.0) + a * big_r2);
      c.big_g_lb[s][s2] = direct + run_lb.scaled(c.q_sd[s] * c.q_ds[s2]);
    }
  }
  return c;
}

struct Step {
  int64_t k = 0;
  bool observed = false;
  Proj proj = Proj::Letter;
  bool length_biased = false;  // origin-straddling gap under P
  int query_index = -1;
};

struct Engine {
  const Closure& c;
  const ReplicationConfig& cfg;
  std::vector<Step> steps;
  JointPmf* out = nullptr;
  std::vector<int> atom_idx;
  double deficit = 0.0;

  using Carrier = std::array<std::vector<double>, 2>;

  double mass_of(const Carrier& cr) const {
    const auto& k = kernels::ops();
    return k.sum(cr[0].data(), cr[0].size()) + k.sum(cr[1].data(), cr[1].size());
  }

  // combined = sum_s carrier[s] * coeff[s], then transported by op
  std::vector<double> combine_transport(const Carrier& cr, const double coeff[2],
                                        const Mat& op) const {
    std::vector<double> combined(static_cast<std::size_t>(c.m), 0.0);
    for (int s = 0; s < 2; ++s) {
      if (coeff[s] == 0.0) continue;
      for (int x = 0; x < c.m; ++x) {
        combined[static_cast<std::size_t>(x)] +=
            coeff[s] * cr[s][static_cast<std::size_t>(x)];
      }
    }
    return vec_mat(combined, op);
  }

  void run(std::size_t step_at, const Carrier& cr);

  void leaf(const Carrier& cr) {
    out->add(atom_idx, mass_of(cr));
  }

  // Emit the output symbol at an observed position with letter s2 and recurse.
  void emit_and_recurse(std::size_t step_at, int s2, std::vector<double> vec,
                        bool with_y) {
    Carrier next;
    next[0].assign(static_cast<std::size_t>(c.m), 0.0);
    next[1].assign(static_cast<std::size_t>(c.m), 0.0);
    if (!with_y) {
      next[static_cast<std::size_t>(s2)] = std::move(vec);
      run(step_at + 1, next);
      return;
    }
    for (int y = 0; y < c.m; ++y) {
      std::vector<double>& slot = next[static_cast<std::size_t>(s2)];
      if (s2 == kM) {
        for (int x = 0; x < c.m; ++x) {
          slot[static_cast<std::size_t>(x)] =
              vec[static_cast<std::size_t>(x)] * cfg.mutation.matrix()(x, y);
        }
      } else {
        double w = cfg.insertion.pmf()[static_cast<std::size_t>(y)];
        for (int x = 0; x < c.m; ++x) {
          slot[static_cast<std::size_t>(x)] = vec[static_cast<std::size_t>(x)] * w;
        }
      }
      atom_idx.push_back(y);
      run(step_at + 1, next);
      atom_idx.pop_back();
    }
  }
};

bool proj_has_gap(Proj p) {
  return p == Proj::GapCapped || p == Proj::GapRaw || p == Proj::V ||
         p == Proj::Upsilon;
}
bool proj_has_letter_axis(Proj p) {
  return p == Proj::Letter || p == Proj::V || p == Proj::Upsilon;
}
bool proj_has_y(Proj p) { return p == Proj::Y || p == Proj::Upsilon; }

void Engine::run(std::size_t step_at, const Carrier& cr) {
  if (step_at == steps.size()) {
    leaf(cr);
    return;
  }
  const Step& st = steps[step_at];
  if (!st.observed) {
    Carrier next;
    for (int s2 = 0; s2 < 2; ++s2) {
      next[static_cast<std::size_t>(s2)].assign(static_cast<std::size_t>(c.m), 0.0);
      for (int s = 0; s < 2; ++s) {
        const Mat& g = st.length_biased ? c.big_g_lb[s][s2] : c.big_g[s][s2];
        std::vector<double> part = vec_mat(cr[static_cast<std::size_t>(s)], g);
        for (int x = 0; x < c.m; ++x) {
          next[static_cast<std::size_t>(s2)][static_cast<std::size_t>(x)] +=
              part[static_cast<std::size_t>(x)];
        }
      }
    }
    run(step_at + 1, next);
    return;
  }

  bool with_y = proj_has_y(st.proj);
  bool with_gap = proj_has_gap(st.proj);
  bool with_letter = proj_has_letter_axis(st.proj);
  for (int s2 = 0; s2 < 2; ++s2) {
    int iota = (s2 == kM) ? 1 : 0;
    if (with_letter) atom_idx.push_back(s2);
    if (!with_gap) {
      // gap summed out
      std::vector<double> vec(static_cast<std::size_t>(c.m), 0.0);
      for (int s = 0; s < 2; ++s) {
        const Mat& g = st.length_biased ? c.big_g_lb[s][s2] : c.big_g[s][s2];
        std::vector<double> part = vec_mat(cr[static_cast<std::size_t>(s)], g);
        for (int x = 0; x < c.m; ++x) {
          vec[static_cast<std::size_t>(x)] += part[static_cast<std::size_t>(x)];
        }
      }
      emit_and_recurse(step_at, s2, std::move(vec), with_y);
    } else {
      for (int64_t d = 1; d <= c.cap; ++d) {
        double coeff[2];
        for (int s = 0; s < 2; ++s) {
          coeff[s] = c.zw(s, d, s2) *
                     (st.length_biased ? static_cast<double>(d) : 1.0);
        }
        std::vector<double> vec = combine_transport(
            cr, coeff, c.xpow[static_cast<std::size_t>(d - 1 + iota)]);
        atom_idx.push_back(static_cast<int>(d - 1));
        emit_and_recurse(step_at, s2, std::move(vec), with_y);
        atom_idx.pop_back();
      }
      // gap > cap
      double coeff[2];
      for (int s = 0; s < 2; ++s) coeff[s] = c.q_sd[s] * c.q_ds[s2];
      const Mat& tail_op = st.length_biased ? c.tail_lb[iota] : c.tail[iota];
      std::vector<double> vec = combine_transport(cr, coeff, tail_op);
      if (st.proj == Proj::GapRaw) {
        // unrepresentable value: the rest of the scan integrates to 1
        deficit += kernels::ops().sum(vec.data(), vec.size());
      } else {
        atom_idx.push_back(c.cap);
        emit_and_recurse(step_at, s2, std::move(vec), with_y);
        atom_idx.pop_back();
      }
    }
    if (with_letter) atom_idx.pop_back();
  }
}

std::vector<std::string> gap_atoms(int cap, bool with_overflow) {
  std::vector<std::string> atoms;
  for (int d = 1; d <= cap; ++d) atoms.push_back(std::to_string(d));
  if (with_overflow) atoms.push_back(">" + std::to_string(cap));
  return atoms;
}

}  // namespace

std::vector<Axis> upsilon_axes(const Alphabet& alphabet, int gap_cap, int64_t k) {
  std::string suffix = "[" + std::to_string(k) + "]";
  return {Axis{"s" + suffix, {"M", "I"}},
          Axis{"d" + suffix, gap_atoms(gap_cap, true)},
          Axis{"y" + suffix, alphabet.labels()}};
}

JointPmf enumerate_model(const ReplicationConfig& cfg,
                         std::span<const Query> queries, Measure measure,
                         const EnumerateParams& params) {
  if (queries.empty()) throw Error("enumerate_model needs at least one query");
  for (std::size_t i = 1; i < queries.size(); ++i) {
    if (queries[i].k <= queries[i - 1].k) {
      throw Error("queries must be strictly increasing in k");
    }
  }
  Closure closure = make_closure(cfg, params.gap_cap);

  // Scan bounds. The scan must reach the structural pin that ties clock
  // indices to the origin: under P0 the renewal at k = 0, under P the step
  // into k = 1, which carries the origin-placement multiplicity. The start
  // sits one step left of the first query; the stationary letter law there
  // marginalizes everything further left.
  int64_t scan_lo = 0;
  int64_t scan_hi = (measure == Measure::P) ? 1 : 0;
  for (const Query& q : queries) {
    scan_lo = std::min(scan_lo, q.k - 1);
    scan_hi = std::max(scan_hi, q.k);
  }

  // Axes in query order.
  std::vector<Axis> axes;
  for (const Query& q : queries) {
    std::string suffix = "[" + std::to_string(q.k) + "]";
    switch (q.proj) {
      case Proj::Letter:
        axes.push_back(Axis{"s" + suffix, {"M", "I", "D"}});
        break;
      case Proj::GapCapped:
        axes.push_back(Axis{"d" + suffix, gap_atoms(params.gap_cap, true)});
        break;
      case Proj::GapRaw:
        axes.push_back(Axis{"d" + suffix, gap_atoms(params.gap_cap, false)});
        break;
      case Proj::V:
        axes.push_back(Axis{"s" + suffix, {"M", "I"}});
        axes.push_back(Axis{"d" + suffix, gap_atoms(params.gap_cap, true)});
        break;
      case Proj::Y:
        axes.push_back(Axis{"y" + suffix, cfg.alphabet.labels()});
        break;
      case Proj::Upsilon:
        for (Axis& ax : upsilon_axes(cfg.alphabet, params.gap_cap, q.k)) {
          axes.push_back(std::move(ax));
        }
        break;
    }
  }
  JointPmf out(std::move(axes));
  if (out.num_cells() > (std::size_t{1} << 26)) {
    throw Error("query product space too large (desk scale only)");
  }

  Engine eng{closure, cfg, {}, &out, {}, 0.0};
  std::size_t qi = 0;
  for (int64_t k = scan_lo + 1; k <= scan_hi; ++k) {
    while (qi < queries.size() && queries[qi].k < k) ++qi;
    Step st;
    st.k = k;
    st.length_biased = (measure == Measure::P && k == 1);
    if (qi < queries.size() && queries[qi].k == k) {
      st.observed = true;
      st.proj = queries[qi].proj;
    }
    eng.steps.push_back(st);
  }

  // Start carrier: stationary letters at the scan start (divided by r under
  // P0), X at its stationary law.
  Engine::Carrier start;
  double norm = (measure == Measure::P0) ? closure.r : 1.0;
  for (int s = 0; s < 2; ++s) {
    start[static_cast<std::size_t>(s)].resize(static_cast<std::size_t>(closure.m));
    double w = closure.lambda[s] * closure.r / norm;
    for (int x = 0; x < closure.m; ++x) {
      start[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] =
          w * closure.pix[static_cast<std::size_t>(x)];
    }
  }

  eng.run(0, start);

  out.add_mass_deficit(eng.deficit);
  if (out.mass_deficit() > params.deficit_tolerance) {
    throw DeficitTooLargeError(out.mass_deficit(), params.deficit_tolerance);
  }
  out.validate(1e-9);
  return out;
}

JointPmf upsilon_block_dist(const ReplicationConfig& cfg,
                            std::span<const int64_t> positions, Measure measure,
                            const EnumerateParams& params) {
  std::vector<Query> queries;
  for (int64_t k : positions) queries.push_back(Query{k, Proj::Upsilon});
  return enumerate_model(cfg, queries, measure, params);
}

Mat letter_kernel(const SourceModel& mid) {
  if (!mid.has_exact_law()) {
    throw UnsupportedExtensionError("letter kernel needs an IID/Markov MID source");
  }
  const Mat& q = mid.trans_matrix();
  int im = mid_index(Mid::M), ii = mid_index(Mid::I), id = mid_index(Mid::D);
  double rho = q(id, id);
  if (!(rho < 1.0)) throw NonErgodicMidError("P(D -> D) = 1");
  int letters[2] = {im, ii};
  Mat l(2, 2);
  for (int s = 0; s < 2; ++s) {
    for (int s2 = 0; s2 < 2; ++s2) {
      l(s, s2) = q(letters[s], letters[s2]) +
                 q(letters[s], id) * q(id, letters[s2]) / (1.0 - rho);
    }
  }
  return l;
}

std::vector<double> letter_stationary(const SourceModel& mid) {
  const ProbVec& piz = mid.stationary();
  double pm = piz[static_cast<std::size_t>(Mid::M)];
  double pi = piz[static_cast<std::size_t>(Mid::I)];
  double r = pm + pi;
  if (!(r > 0.0)) throw NonErgodicMidError("P(Z in {M,I}) = 0");
  return {pm / r, pi / r};
}

double v_beta_exact(const SourceModel& mid, int64_t n) {
  if (n < 1) throw Error("v_beta_exact needs n >= 1");
  Mat l = letter_kernel(mid);
  std::vector<double> lambda = letter_stationary(mid);
  const Mat& q = mid.trans_matrix();
  int im = mid_index(Mid::M), ii = mid_index(Mid::I), id = mid_index(Mid::D);
  int letters[2] = {im, ii};
  double rho = q(id, id);
  Mat ln = l.pow(n - 1);
  double beta = 0.0;
  for (int s = 0; s < 2; ++s) {
    double delta[2];
    for (int s2 = 0; s2 < 2; ++s2) delta[s2] = ln(s, s2) - lambda[static_cast<std::size_t>(s2)];
    double inner = 0.0;
    for (int s2 = 0; s2 < 2; ++s2) {
      double one = 0.0, run = 0.0;
      for (int sm = 0; sm < 2; ++sm) {
        one += delta[sm] * q(letters[sm], letters[s2]);
        run += delta[sm] * q(letters[sm], id);
      }
      // gap 1 atom, then the deletion-run atoms d >= 2 (which share the sign
      // of `run`, so their absolute values sum in closed form)
      inner += std::fabs(one) + std::fabs(run) * q(id, letters[s2]) / (1.0 - rho);
    }
    beta += lambda[static_cast<std::size_t>(s)] * inner;
  }
  return 0.5 * beta;
}

std::vector<double> mut_count_dist(const SourceModel& mid, int64_t n) {
  if (n < 1) throw Error("mut_count_dist needs n >= 1");
  Mat l = letter_kernel(mid);
  std::vector<double> lambda = letter_stationary(mid);
  // dist[s][c] over letter at the current position and mutations counted so far
  std::size_t counts = static_cast<std::size_t>(n);  // 0 .. n-1
  std::vector<std::vector<double>> dist(2, std::vector<double>(counts, 0.0));
  dist[0][0] = lambda[0];
  dist[1][0] = lambda[1];
  for (int64_t step = 1; step <= n - 1; ++step) {
    std::vector<std::vector<double>> next(2, std::vector<double>(counts, 0.0));
    for (int s = 0; s < 2; ++s) {
      for (std::size_t c = 0; c < counts; ++c) {
        double w = dist[static_cast<std::size_t>(s)][c];
        if (w == 0.0) continue;
        for (int s2 = 0; s2 < 2; ++s2) {
          std::size_t c2 = c + (s2 == kM ? 1 : 0);
          next[static_cast<std::size_t>(s2)][c2] += w * l(s, s2);
        }
      }
    }
    dist = std::move(next);
  }
  std::vector<double> out(counts, 0.0);
  for (std::size_t c = 0; c < counts; ++c) out[c] = dist[0][c] + dist[1][c];
  return out;
}

}  // namespace repstring::exact
