#include "repstring/source.hpp"

#include <string>

#include "repstring/errors.hpp"

namespace repstring {

SourceModel SourceModel::iid(ProbVec pmf) {
  validate_pmf(pmf);
  SourceModel m;
  m.kind_ = Kind::Iid;
  int n = static_cast<int>(pmf.size());
  m.trans_ = Mat(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.trans_(r, c) = pmf[static_cast<std::size_t>(c)];
  }
  m.rev_ = m.trans_;  // an IID sequence reversed is itself
  m.pi_ = std::move(pmf);
  return m;
}

SourceModel SourceModel::markov(MarkovChain chain) {
  SourceModel m;
  m.kind_ = Kind::Markov;
  m.pi_ = chain.pi();
  m.trans_ = chain.trans();
  m.rev_ = chain.reversed();
  m.chain_ = std::make_shared<MarkovChain>(std::move(chain));
  return m;
}

SourceModel SourceModel::custom(CustomSource src) {
  if (!src.sample) throw Error("custom source needs a sampler");
  if (src.num_states <= 0) throw Error("custom source needs num_states");
  SourceModel m;
  m.kind_ = Kind::Custom;
  m.custom_ = std::move(src);
  return m;
}

int SourceModel::num_states() const {
  if (kind_ == Kind::Custom) return custom_.num_states;
  return static_cast<int>(pi_.size());
}

Window<int> sample_window(const SourceModel& model, int64_t lo, int64_t hi,
                          Seed seed) {
  if (lo > hi) throw Error("sample_window needs lo <= hi");
  std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  if (model.kind() == SourceModel::Kind::Custom) {
    const CustomSource& c = *model.custom_source();
    if (lo < -c.margin || hi > c.margin) {
      throw UnsupportedExtensionError(
          "custom source margin " + std::to_string(c.margin) +
          " does not cover [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    RandomStream rs(seed);
    std::vector<int> vals = c.sample(lo, hi, rs);
    if (vals.size() != n) throw Error("custom sampler returned wrong length");
    return Window<int>(lo, std::move(vals));
  }
  std::vector<int> vals(n);
  if (model.kind() == SourceModel::Kind::Iid) {
    for (int64_t j = lo; j <= hi; ++j) {
      vals[static_cast<std::size_t>(j - lo)] =
          inverse_cdf(model.stationary(), seed.uniform_at(j));
    }
  } else {
    vals[0] = inverse_cdf(model.stationary(), seed.uniform_at(lo));
    for (int64_t j = lo + 1; j <= hi; ++j) {
      int prev = vals[static_cast<std::size_t>(j - 1 - lo)];
      vals[static_cast<std::size_t>(j - lo)] =
          inverse_cdf(model.trans_matrix().row(prev), seed.uniform_at(j));
    }
  }
  return Window<int>(lo, std::move(vals));
}

Window<int> extend_window(const SourceModel& model, Window<int> w,
                          int64_t new_lo, int64_t new_hi, Seed seed) {
  if (w.empty()) throw Error("cannot extend an empty window");
  if (new_lo > w.lo() || new_hi < w.hi()) {
    throw Error("extension range must contain the current range");
  }
  if (model.kind() == SourceModel::Kind::Custom) {
    if (new_lo == w.lo() && new_hi == w.hi()) return w;
    throw UnsupportedExtensionError("custom sources cannot be extended");
  }
  bool is_iid = model.kind() == SourceModel::Kind::Iid;
  if (new_hi > w.hi()) {
    std::vector<int> tail(static_cast<std::size_t>(new_hi - w.hi()));
    int prev = w.at(w.hi());
    for (int64_t j = w.hi() + 1; j <= new_hi; ++j) {
      int v = is_iid ? inverse_cdf(model.stationary(), seed.uniform_at(j))
                     : inverse_cdf(model.trans_matrix().row(prev), seed.uniform_at(j));
      tail[static_cast<std::size_t>(j - w.hi() - 1)] = v;
      prev = v;
    }
    w.append(tail);
  }
  if (new_lo < w.lo()) {
    std::vector<int> head(static_cast<std::size_t>(w.lo() - new_lo));
    int next = w.at(w.lo());
    for (int64_t j = w.lo() - 1; j >= new_lo; --j) {
      int v = is_iid ? inverse_cdf(model.stationary(), seed.uniform_at(j))
                     : inverse_cdf(model.reverse_matrix().row(next), seed.uniform_at(j));
      head[static_cast<std::size_t>(j - new_lo)] = v;
      next = v;
    }
    w.prepend(head);
  }
  return w;
}

JointPmf block_pmf(const SourceModel& model, std::span<const int64_t> positions,
                   const std::vector<std::string>& atom_labels) {
  if (!model.has_exact_law()) {
    throw UnsupportedExtensionError("custom sources have no exact block law");
  }
  if (positions.empty()) throw Error("block_pmf needs at least one position");
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] <= positions[i - 1]) {
      throw Error("block positions must be strictly increasing");
    }
  }
  int m = model.num_states();
  std::vector<std::string> labels = atom_labels;
  if (labels.empty()) {
    for (int s = 0; s < m; ++s) labels.push_back(std::to_string(s));
  }
  std::vector<Axis> axes;
  for (int64_t p : positions) {
    axes.push_back(Axis{"pos" + std::to_string(p), labels});
  }
  JointPmf out(std::move(axes));

  std::vector<Mat> gaps;  // trans^(positions[i+1] - positions[i])
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    gaps.push_back(model.trans_matrix().pow(positions[i + 1] - positions[i]));
  }
  std::size_t k = positions.size();
  std::vector<int> idx(k, 0);
  for (;;) {
    double p = model.stationary()[static_cast<std::size_t>(idx[0])];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (p == 0.0) break;
      p *= gaps[i](idx[i], idx[i + 1]);
    }
    out.add(idx, p);
    std::size_t a = k;
    while (a-- > 0) {
      if (++idx[a] < m) break;
      idx[a] = 0;
      if (a == 0) {
        out.validate(1e-9);
        return out;
      }
    }
  }
}

}  // namespace repstring
