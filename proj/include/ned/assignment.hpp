#pragma once

// Exact minimum-cost perfect matching on square cost matrices
// (Kuhn-Munkres with potentials and a greedy warm start, O(n^3)), returning the lexicographically
// smallest optimal assignment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "ned/error.hpp"

namespace ned {

template <class T>
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t n, T fill = T(0)) : n_(n), w_(n * n, fill) {}

  CostMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    w_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw UsageError("cost matrix must be square");
      w_.insert(w_.end(), r.begin(), r.end());
    }
  }

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return w_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return w_[r * n_ + c]; }

  void resize(std::size_t n) {
    n_ = n;
    w_.assign(n * n, T(0));
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> w_;
};

template <class T>
struct Assignment {
  T cost{};
  std::vector<std::uint32_t> row_to_col;
};

namespace detail {

template <class T>
bool is_tight(const T& reduced) {
  if constexpr (std::is_floating_point_v<T>)
    return std::abs(reduced) <= T(1e-9);
  else
    return reduced == T(0);
}

// Among the perfect matchings of the tight subgraph (exactly the optimal
// assignments, by complementary slackness), pick the lexicographically
// smallest row_to_col. Rows are fixed in order; each row takes the smallest
// tight column that still admits a perfect matching of the remaining rows,
// found by one reverse alternating search from its current column.
inline void lexicographic_min(std::vector<std::vector<std::uint32_t>>& row_tight,
                              std::vector<std::vector<std::uint32_t>>& col_tight,
                              std::vector<std::uint32_t>& match,
                              std::vector<std::uint32_t>& match_inv) {
  const std::size_t n = match.size();
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<char> row_fixed(n, 0), col_fixed(n, 0);
  std::vector<std::uint32_t> row_seen(n, 0), col_seen(n, 0), next_col(n, kNone);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> queue;
  queue.reserve(n);

  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t y0 = match[x];
    std::uint32_t ymin = kNone;
    for (auto y : row_tight[x])
      if (!col_fixed[y]) {
        ymin = y;
        break;
      }
    if (ymin == y0) {
      row_fixed[x] = col_fixed[y0] = 1;
      continue;
    }

    ++epoch;
    queue.clear();
    queue.push_back(y0);
    col_seen[y0] = epoch;
    const std::uint32_t target_row = match_inv[ymin];
    bool early = false;
    for (std::size_t qi = 0; qi < queue.size() && !early; ++qi) {
      const std::uint32_t c = queue[qi];
      for (auto r : col_tight[c]) {
        if (row_fixed[r] || r == x || row_seen[r] == epoch || match[r] == c) continue;
        row_seen[r] = epoch;
        next_col[r] = c;
        if (r == target_row) {
          early = true;
          break;
        }
        const std::uint32_t c2 = match[r];
        if (col_seen[c2] != epoch) {
          col_seen[c2] = epoch;
          queue.push_back(c2);
        }
      }
    }

    std::uint32_t best = y0;
    if (early) {
      best = ymin;
    } else {
      for (auto y : row_tight[x]) {
        if (col_fixed[y]) continue;
        if (y == y0) break;
        if (row_seen[match_inv[y]] == epoch) {
          best = y;
          break;
        }
      }
    }

    if (best != y0) {
      // Rotate along best's row -> ... -> y0, then x takes best.
      std::uint32_t r = match_inv[best];
      match[x] = best;
      match_inv[best] = x;
      while (true) {
        const std::uint32_t c = next_col[r];
        const std::uint32_t displaced = match_inv[c];
        match[r] = c;
        match_inv[c] = r;
        if (c == y0) break;
        r = displaced;
      }
    }
    row_fixed[x] = col_fixed[best] = 1;
  }
}

}  // namespace detail

// Minimises sum_r w(r, f(r)) over bijections f. Entries must be
// non-negative. T may be an integer, floating or exact rational type.
template <class T>
Assignment<T> min_cost_perfect_matching(const CostMatrix<T>& w) {
  const std::size_t n = w.size();
  Assignment<T> out;
  out.cost = T(0);
  if (n == 0) return out;

  // 1-based e-maxx layout: column 0 is a virtual source.
  std::vector<T> u(n + 1, T(0)), v(n + 1, T(0)), minv(n + 1, T(0));
  std::vector<std::uint32_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0), has_min(n + 1, 0);

  // Warm start: column then row reduction gives feasible duals; rows then
  // greedily take a free zero-reduced-cost column. Only rows left over need
  // an augmenting path. On matrices with many repeated rows (few distinct
  // labels) this skips most of the work.
  for (std::uint32_t j = 1; j <= n; ++j) {
    T m = w(0, j - 1);
    for (std::size_t r = 1; r < n; ++r) m = std::min(m, w(r, j - 1));
    v[j] = m;
  }
  std::vector<char> row_done(n + 1, 0);
  for (std::uint32_t i = 1; i <= n; ++i) {
    T m = w(i - 1, 0) - v[1];
    for (std::uint32_t j = 2; j <= n; ++j) m = std::min(m, w(i - 1, j - 1) - v[j]);
    u[i] = m;
    for (std::uint32_t j = 1; j <= n; ++j)
      if (p[j] == 0 && detail::is_tight<T>(w(i - 1, j - 1) - u[i] - v[j])) {
        p[j] = i;
        row_done[i] = 1;
        break;
      }
  }

  for (std::uint32_t i = 1; i <= n; ++i) {
    if (row_done[i]) continue;
    p[0] = i;
    std::uint32_t j0 = 0;
    std::fill(has_min.begin(), has_min.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::uint32_t i0 = p[j0];
      T delta{};
      bool has_delta = false;
      std::uint32_t j1 = 0;
      const T ui0 = u[i0];
      for (std::uint32_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        T cur = w(i0 - 1, j - 1) - ui0 - v[j];
        if (!has_min[j] || cur < minv[j]) {
          minv[j] = cur;
          has_min[j] = 1;
          way[j] = j0;
        }
        if (!has_delta || minv[j] < delta) {
          delta = minv[j];
          has_delta = true;
          j1 = j;
        }
      }
      for (std::uint32_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::uint32_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::uint32_t> match(n), match_inv(n);
  for (std::uint32_t j = 1; j <= n; ++j) {
    match[p[j] - 1] = j - 1;
    match_inv[j - 1] = p[j] - 1;
  }

  std::vector<std::vector<std::uint32_t>> row_tight(n), col_tight(n);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < n; ++c)
      if (detail::is_tight<T>(w(r, c) - u[r + 1] - v[c + 1])) {
        row_tight[r].push_back(c);
        col_tight[c].push_back(r);
      }
  detail::lexicographic_min(row_tight, col_tight, match, match_inv);

  for (std::uint32_t r = 0; r < n; ++r) out.cost += w(r, match[r]);
  out.row_to_col = std::move(match);
  return out;
}

}  // namespace ned
