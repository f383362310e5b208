#include "repstring/markov.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "repstring/errors.hpp"
#include "repstring/kernels.hpp"

namespace repstring {
namespace {

constexpr int kMaxStates = 64;
constexpr double kStationaryTol = 1e-10;

std::vector<int> reachable(const Mat& t, int start, bool transpose) {
  int n = t.rows();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w) {
      double p = transpose ? t(w, v) : t(v, w);
      if (p > 0.0 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

bool strongly_connected(const Mat& t) {
  auto fwd = reachable(t, 0, false);
  auto bwd = reachable(t, 0, true);
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    if (!fwd[i] || !bwd[i]) return false;
  }
  return true;
}

// gcd of return-time differences via BFS levels; assumes irreducibility.
int chain_period(const Mat& t) {
  int n = t.rows();
  std::vector<int64_t> level(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{0};
  level[0] = 0;
  int64_t g = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w = 0; w < n; ++w) {
      if (t(v, w) <= 0.0) continue;
      if (level[static_cast<std::size_t>(w)] < 0) {
        level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      } else {
        int64_t d = level[static_cast<std::size_t>(v)] + 1 -
                    level[static_cast<std::size_t>(w)];
        g = std::gcd(g, d < 0 ? -d : d);
      }
    }
  }
  return g == 0 ? 1 : static_cast<int>(g);
}

}  // namespace

ProbVec stationary_dist(const Mat& trans) {
  int n = trans.rows();
  if (trans.cols() != n) throw Error("transition matrix must be square");
  if (n > kMaxStates) {
    throw Error("state space too large for dense stationary solve (max 64)");
  }
  validate_row_stochastic(trans);
  if (!strongly_connected(trans)) {
    throw ReducibleError("chain is reducible: no unique positive stationary law");
  }
  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  Mat a(n, n);
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = trans(c, r) - (r == c ? 1.0 : 0.0);
  }
  for (int c = 0; c < n; ++c) a(n - 1, c) = 1.0;
  b[static_cast<std::size_t>(n - 1)] = 1.0;
  ProbVec pi = solve_linear(std::move(a), std::move(b));
  for (double& p : pi) {
    if (p < 0.0 && p > -1e-13) p = 0.0;
  }
  return pi;
}

MarkovChain MarkovChain::from_transition(Mat trans) {
  ProbVec pi = stationary_dist(trans);
  int n = trans.rows();
  for (double p : pi) {
    if (!(p > 0.0)) throw ReducibleError("stationary law has a zero entry");
  }
  Mat rev(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      rev(j, i) = pi[static_cast<std::size_t>(i)] * trans(i, j) /
                  pi[static_cast<std::size_t>(j)];
    }
  }
  validate_row_stochastic(rev, kStationaryTol);
  int period = chain_period(trans);
  return MarkovChain(std::move(trans), std::move(pi), std::move(rev), period);
}

MarkovChain MarkovChain::with_stationary(Mat trans, ProbVec pi) {
  validate_row_stochastic(trans);
  validate_pmf(pi, kStationaryTol);
  int n = trans.rows();
  if (static_cast<int>(pi.size()) != n) throw Error("pi size mismatch");
  // pi * trans = pi must still hold.
  std::vector<double> check = vec_mat(pi, trans);
  for (int i = 0; i < n; ++i) {
    if (std::fabs(check[static_cast<std::size_t>(i)] -
                  pi[static_cast<std::size_t>(i)]) > kStationaryTol) {
      throw Error("supplied pi is not stationary for trans");
    }
  }
  Mat rev(n, n);
  for (int j = 0; j < n; ++j) {
    double pj = pi[static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
      rev(j, i) = pj > 0.0 ? pi[static_cast<std::size_t>(i)] * trans(i, j) / pj
                           : (i == j ? 1.0 : 0.0);
    }
  }
  return MarkovChain(std::move(trans), std::move(pi), std::move(rev), 1);
}

double markov_beta_exact(const MarkovChain& chain, int64_t n) {
  if (n < 0) throw Error("markov_beta_exact needs n >= 0");
  const ProbVec& pi = chain.pi();
  Mat pn = chain.trans().pow(n);
  const auto& k = kernels::ops();
  std::vector<double> per_row(pi.size());
  for (int i = 0; i < pn.rows(); ++i) {
    auto row = pn.row(i);
    per_row[static_cast<std::size_t>(i)] =
        pi[static_cast<std::size_t>(i)] *
        k.abs_dev_scaled_sum(row.data(), 1.0, pi.data(), row.size());
  }
  return 0.5 * k.sum(per_row.data(), per_row.size());
}

}  // namespace repstring
