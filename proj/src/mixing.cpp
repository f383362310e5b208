#include "repstring/mixing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include "repstring/csv.hpp"
#include "repstring/errors.hpp"
#include "repstring/kernels.hpp"

namespace repstring {
namespace {

// Reshape a joint table into left-major (L x R) order for the given left-axis
// group; returns the contiguous table plus side sizes.
struct SplitTable {
  std::size_t left_size = 1;
  std::size_t right_size = 1;
  std::vector<double> cells;  // row-major, left index major
};

SplitTable split_table(const JointPmf& j, std::span<const int> left_axes) {
  std::vector<int> is_left(static_cast<std::size_t>(j.num_axes()), 0);
  for (int a : left_axes) {
    if (a < 0 || a >= j.num_axes()) throw Error("split axis out of range");
    if (is_left[static_cast<std::size_t>(a)]) throw Error("duplicate split axis");
    is_left[static_cast<std::size_t>(a)] = 1;
  }
  if (left_axes.empty() ||
      static_cast<int>(left_axes.size()) == j.num_axes()) {
    throw Error("split must leave both sides nonempty");
  }
  SplitTable out;
  // strides in the permuted (left axes first, original order within group) layout
  int n = j.num_axes();
  std::vector<std::size_t> sizes(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    sizes[static_cast<std::size_t>(a)] =
        j.axes()[static_cast<std::size_t>(a)].atoms.size();
  }
  for (int a = 0; a < n; ++a) {
    if (is_left[static_cast<std::size_t>(a)]) out.left_size *= sizes[static_cast<std::size_t>(a)];
    else out.right_size *= sizes[static_cast<std::size_t>(a)];
  }
  out.cells.assign(out.left_size * out.right_size, 0.0);

  // per-axis contribution to (l, r) composite indices
  std::vector<std::size_t> strides(static_cast<std::size_t>(n));
  {
    std::size_t s = 1;
    for (int a = n; a-- > 0;) {
      strides[static_cast<std::size_t>(a)] = s;
      s *= sizes[static_cast<std::size_t>(a)];
    }
  }
  std::vector<std::size_t> lmul(static_cast<std::size_t>(n), 0);
  std::vector<std::size_t> rmul(static_cast<std::size_t>(n), 0);
  std::size_t ls = 1, rs = 1;
  for (int a = n; a-- > 0;) {
    if (is_left[static_cast<std::size_t>(a)]) {
      lmul[static_cast<std::size_t>(a)] = ls;
      ls *= sizes[static_cast<std::size_t>(a)];
    } else {
      rmul[static_cast<std::size_t>(a)] = rs;
      rs *= sizes[static_cast<std::size_t>(a)];
    }
  }
  const double* src = j.data();
  for (std::size_t flat = 0; flat < j.num_cells(); ++flat) {
    std::size_t rem = flat;
    std::size_t l = 0, r = 0;
    for (int a = 0; a < n; ++a) {
      std::size_t i = rem / strides[static_cast<std::size_t>(a)];
      rem %= strides[static_cast<std::size_t>(a)];
      if (is_left[static_cast<std::size_t>(a)]) l += lmul[static_cast<std::size_t>(a)] * i;
      else r += rmul[static_cast<std::size_t>(a)] * i;
    }
    out.cells[l * out.right_size + r] = src[flat];
  }
  return out;
}

double beta_of_split(const SplitTable& t) {
  const auto& k = kernels::ops();
  std::size_t L = t.left_size, R = t.right_size;
  std::vector<double> right(R, 0.0), right_comp(R, 0.0);
  std::vector<double> left(L, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    const double* row = t.cells.data() + l * R;
    left[l] = k.sum(row, R);
    k.add_columns(right.data(), right_comp.data(), row, R);
  }
  for (std::size_t r = 0; r < R; ++r) right[r] += right_comp[r];
  std::vector<double> per_row(L);
  for (std::size_t l = 0; l < L; ++l) {
    per_row[l] = k.abs_dev_scaled_sum(t.cells.data() + l * R, left[l],
                                      right.data(), R);
  }
  return 0.5 * k.sum(per_row.data(), per_row.size());
}

}  // namespace

double beta_of_joint(const JointPmf& j, std::span<const int> left_axes) {
  return beta_of_split(split_table(j, left_axes));
}

AlphaResult alpha_of_joint(const JointPmf& j, std::span<const int> left_axes,
                           int exact_atom_limit, Seed search_seed,
                           int search_iters) {
  SplitTable t = split_table(j, left_axes);
  bool enumerate_left = t.left_size <= t.right_size;
  std::size_t A = enumerate_left ? t.left_size : t.right_size;
  std::size_t B = enumerate_left ? t.right_size : t.left_size;

  // dev(a, b) = p(a, b) - p(a) q(b), oriented so `a` is the enumerated side
  const auto& k = kernels::ops();
  std::vector<double> dev(A * B);
  {
    std::vector<double> right(t.right_size, 0.0), comp(t.right_size, 0.0);
    std::vector<double> left(t.left_size, 0.0);
    for (std::size_t l = 0; l < t.left_size; ++l) {
      const double* row = t.cells.data() + l * t.right_size;
      left[l] = k.sum(row, t.right_size);
      k.add_columns(right.data(), comp.data(), row, t.right_size);
    }
    for (std::size_t r = 0; r < t.right_size; ++r) right[r] += comp[r];
    for (std::size_t l = 0; l < t.left_size; ++l) {
      for (std::size_t r = 0; r < t.right_size; ++r) {
        double d = t.cells[l * t.right_size + r] - left[l] * right[r];
        if (enumerate_left) dev[l * B + r] = d;
        else dev[r * B + l] = d;
      }
    }
  }

  // For a fixed subset S of the enumerated side, the inner sup over the other
  // side splits by sign: max(sum of positive t_b, -sum of negative t_b) where
  // t_b = sum_{a in S} dev(a, b).
  auto inner_max = [&](const std::vector<double>& tb) {
    double pos = 0.0, neg = 0.0;
    for (double v : tb) {
      if (v > 0.0) pos += v;
      else neg += v;
    }
    return std::max(pos, -neg);
  };

  AlphaResult res;
  if (A <= static_cast<std::size_t>(exact_atom_limit)) {
    // Gray-code walk over subsets; tb updates by one atom's row per step.
    std::vector<double> tb(B, 0.0);
    std::size_t subsets = std::size_t{1} << A;
    std::size_t gray_prev = 0;
    for (std::size_t i = 1; i < subsets; ++i) {
      std::size_t gray = i ^ (i >> 1);
      std::size_t changed = gray ^ gray_prev;
      int bit = std::countr_zero(changed);
      double sign = (gray & changed) ? 1.0 : -1.0;
      const double* row = dev.data() + static_cast<std::size_t>(bit) * B;
      for (std::size_t b = 0; b < B; ++b) tb[b] += sign * row[b];
      gray_prev = gray;
      res.value = std::max(res.value, inner_max(tb));
    }
    res.lower_bound_only = false;
  } else {
    // Randomized subset search: certified lower bound only.
    RandomStream rs(search_seed);
    std::vector<double> tb(B, 0.0);
    std::vector<int> member(A, 0);
    for (int it = 0; it < search_iters; ++it) {
      std::size_t a = rs.next_index(A);
      double sign = member[a] ? -1.0 : 1.0;
      member[a] ^= 1;
      const double* row = dev.data() + a * B;
      for (std::size_t b = 0; b < B; ++b) tb[b] += sign * row[b];
      res.value = std::max(res.value, inner_max(tb));
    }
    res.lower_bound_only = true;
  }
  return res;
}

double tv_distance(const JointPmf& a, const JointPmf& b) {
  if (a.num_axes() != b.num_axes()) throw AxisMismatchError("axis count differs");
  for (int i = 0; i < a.num_axes(); ++i) {
    const Axis& ax = a.axes()[static_cast<std::size_t>(i)];
    const Axis& bx = b.axes()[static_cast<std::size_t>(i)];
    if (ax.name != bx.name || ax.atoms != bx.atoms) {
      throw AxisMismatchError("axis " + ax.name + " differs");
    }
  }
  double cells = kernels::ops().abs_diff_sum(a.data(), b.data(), a.num_cells());
  return 0.5 * (cells + std::fabs(a.mass_deficit() - b.mass_deficit()));
}

std::vector<int64_t> block_positions(int64_t lag, int width) {
  if (width < 1) throw Error("block width must be >= 1");
  if (lag < 1) throw Error("block lag must be >= 1");
  std::vector<int64_t> pos;
  for (int i = -width + 1; i <= 0; ++i) pos.push_back(i);
  for (int i = 0; i < width; ++i) pos.push_back(lag + i);
  return pos;
}

BlockBeta block_beta_oracle(const SourceModel& model, int64_t lag, int width) {
  std::vector<int64_t> pos = block_positions(lag, width);
  JointPmf joint = block_pmf(model, pos);
  std::vector<int> left(static_cast<std::size_t>(width));
  std::iota(left.begin(), left.end(), 0);
  return BlockBeta{beta_of_joint(joint, left), 0.0, 0.0};
}

namespace {

double beta_of_counts(const std::vector<double>& counts, std::size_t L,
                      std::size_t R, double n) {
  SplitTable t;
  t.left_size = L;
  t.right_size = R;
  t.cells.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) t.cells[i] = counts[i] / n;
  return beta_of_split(t);
}

}  // namespace

BlockBeta block_beta_empirical(
    const std::function<void(std::size_t rep, std::span<int> out)>& draw,
    int atoms_per_position, int64_t lag, int width, std::size_t samples,
    Seed seed, int bootstrap_resamples) {
  if (samples == 0) throw Error("block_beta_empirical needs samples > 0");
  std::size_t positions = static_cast<std::size_t>(2 * width);
  std::size_t side = 1;
  for (int i = 0; i < width; ++i) side *= static_cast<std::size_t>(atoms_per_position);
  std::size_t cells = side * side;
  std::vector<double> counts(cells, 0.0);
  std::vector<int> block(positions);
  for (std::size_t rep = 0; rep < samples; ++rep) {
    draw(rep, block);
    std::size_t idx = 0;
    for (std::size_t p = 0; p < positions; ++p) {
      int a = block[p];
      if (a < 0 || a >= atoms_per_position) throw Error("block atom out of range");
      idx = idx * static_cast<std::size_t>(atoms_per_position) +
            static_cast<std::size_t>(a);
    }
    counts[idx] += 1.0;
  }
  BlockBeta out;
  double n = static_cast<double>(samples);
  out.value = beta_of_counts(counts, side, side, n);
  out.bias_bound = (std::sqrt(static_cast<double>(cells)) +
                    2.0 * std::sqrt(static_cast<double>(side))) /
                   (2.0 * std::sqrt(n));

  // Multinomial bootstrap over the observed cell counts.
  if (bootstrap_resamples > 0) {
    std::vector<double> cdf(cells);
    double acc = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      acc += counts[i] / n;
      cdf[i] = acc;
    }
    std::vector<double> resampled(cells);
    std::vector<double> betas(static_cast<std::size_t>(bootstrap_resamples));
    for (int b = 0; b < bootstrap_resamples; ++b) {
      RandomStream rs(seed.derive("bootstrap").derive(static_cast<uint64_t>(b)));
      std::fill(resampled.begin(), resampled.end(), 0.0);
      for (std::size_t s = 0; s < samples; ++s) {
        double u = rs.next_uniform();
        std::size_t lo = 0, hi = cells - 1;
        while (lo < hi) {
          std::size_t mid = (lo + hi) / 2;
          if (cdf[mid] >= u) hi = mid;
          else lo = mid + 1;
        }
        resampled[lo] += 1.0;
      }
      betas[static_cast<std::size_t>(b)] = beta_of_counts(resampled, side, side, n);
    }
    double mean = kernels::ops().sum(betas.data(), betas.size()) /
                  static_cast<double>(bootstrap_resamples);
    double var = 0.0;
    for (double v : betas) var += (v - mean) * (v - mean);
    var /= std::max(1, bootstrap_resamples - 1);
    out.se = std::sqrt(var);
  }
  return out;
}

void MixingProfile::write_csv(std::ostream& os, bool header) const {
  if (header) os << "lag,value,se,method,width\n";
  for (std::size_t i = 0; i < lags.size(); ++i) {
    os << lags[i] << ',' << format_number(values[i]) << ','
       << format_number(se[i]) << ',' << method << ',' << width << '\n';
  }
}

MixingProfile beta_profile_oracle(const SourceModel& model,
                                  std::span<const int64_t> lags, int width) {
  MixingProfile p;
  p.method = "exact";
  p.width = width;
  for (int64_t lag : lags) {
    BlockBeta b = block_beta_oracle(model, lag, width);
    p.lags.push_back(lag);
    p.values.push_back(b.value);
    p.se.push_back(0.0);
  }
  return p;
}

MixingProfile beta_profile_empirical(
    const std::function<void(int64_t lag, std::size_t rep, std::span<int> out)>& draw,
    int atoms_per_position, std::span<const int64_t> lags, int width,
    std::size_t samples, Seed seed) {
  MixingProfile p;
  p.method = "empirical";
  p.width = width;
  for (int64_t lag : lags) {
    auto bound = [&](std::size_t rep, std::span<int> out) { draw(lag, rep, out); };
    BlockBeta b = block_beta_empirical(bound, atoms_per_position, lag, width,
                                       samples, seed.derive(static_cast<uint64_t>(lag)));
    p.lags.push_back(lag);
    p.values.push_back(b.value);
    p.se.push_back(b.se);
  }
  return p;
}

}  // namespace repstring
