#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "palrich/words.hpp"

namespace palrich {

/// Suffix array with LCP table and O(1) range-minimum queries, giving
/// constant-time longest-common-extension lookups.
class SuffixIndex {
 public:
  SuffixIndex() = default;

  explicit SuffixIndex(std::vector<Letter> text) : text_(std::move(text)) {
    build_sa();
    build_lcp();
    build_rmq();
  }

  const std::vector<int>& sa() const { return sa_; }
  const std::vector<int>& rank() const { return rank_; }
  const std::vector<int>& lcp() const { return lcp_; }
  const std::vector<Letter>& text() const { return text_; }
  int size() const { return static_cast<int>(text_.size()); }

  /// Longest common prefix length of the suffixes starting at i and j.
  int lce(int i, int j) const {
    int n = size();
    if (i == j) return n - i;
    if (i >= n || j >= n) return 0;
    int a = rank_[i], b = rank_[j];
    if (a > b) std::swap(a, b);
    return lcp_min(a + 1, b);
  }

 private:
  void build_sa() {
    int n = static_cast<int>(text_.size());
    sa_.resize(n);
    rank_.resize(n);
    std::iota(sa_.begin(), sa_.end(), 0);
    std::vector<int> r(n), tmp(n);
    for (int i = 0; i < n; ++i) r[i] = text_[i];
    for (int k = 1;; k <<= 1) {
      auto cmp = [&](int a, int b) {
        if (r[a] != r[b]) return r[a] < r[b];
        int ra = a + k < n ? r[a + k] : -1;
        int rb = b + k < n ? r[b + k] : -1;
        return ra < rb;
      };
      std::sort(sa_.begin(), sa_.end(), cmp);
      tmp[sa_[0]] = 0;
      for (int i = 1; i < n; ++i) tmp[sa_[i]] = tmp[sa_[i - 1]] + (cmp(sa_[i - 1], sa_[i]) ? 1 : 0);
      r = tmp;
      if (n == 0 || r[sa_[n - 1]] == n - 1) break;
    }
    for (int i = 0; i < n; ++i) rank_[sa_[i]] = i;
  }

  void build_lcp() {  // Kasai
    int n = static_cast<int>(text_.size());
    lcp_.assign(n, 0);
    int h = 0;
    for (int i = 0; i < n; ++i) {
      if (rank_[i] == 0) {
        h = 0;
        continue;
      }
      int j = sa_[rank_[i] - 1];
      while (i + h < n && j + h < n && text_[i + h] == text_[j + h]) ++h;
      lcp_[rank_[i]] = h;
      if (h) --h;
    }
  }

  void build_rmq() {
    int n = static_cast<int>(lcp_.size());
    log_.assign(n + 1, 0);
    for (int i = 2; i <= n; ++i) log_[i] = log_[i / 2] + 1;
    if (n == 0) return;
    int levels = log_[n] + 1;
    rmq_.assign(levels, lcp_);
    for (int k = 1; k < levels; ++k)
      for (int i = 0; i + (1 << k) <= n; ++i)
        rmq_[k][i] = std::min(rmq_[k - 1][i], rmq_[k - 1][i + (1 << (k - 1))]);
  }

  /// min of lcp_[lo..hi] inclusive
  int lcp_min(int lo, int hi) const {
    int k = log_[hi - lo + 1];
    return std::min(rmq_[k][lo], rmq_[k][hi - (1 << k) + 1]);
  }

  std::vector<Letter> text_;
  std::vector<int> sa_, rank_, lcp_;
  std::vector<int> log_;
  std::vector<std::vector<int>> rmq_;
};

/// Maximal repetition [start, start+length) with the given period.
struct Run {
  int start;
  int length;
  int period;
};

/// All runs (maximal factors of exponent >= 2), found by probing every period
/// at block boundaries with forward and backward common extensions.
inline std::vector<Run> find_runs(const std::vector<Letter>& text) {
  int n = static_cast<int>(text.size());
  if (n < 2) return {};
  SuffixIndex fwd(text);
  std::vector<Letter> rev(text.rbegin(), text.rend());
  SuffixIndex bwd(std::move(rev));
  std::vector<Run> runs;
  for (int p = 1; 2 * p <= n; ++p) {
    for (int q = p; q < n; q += p) {
      int right = fwd.lce(q - p, q);
      // common suffix length of the prefixes ending at q-p-1 and q-1
      int left = (q - p == 0) ? 0 : bwd.lce(n - q + p, n - q);
      if (left >= p) left = p - 1;  // detected at an earlier boundary otherwise
      if (left + right >= p) {
        int start = q - p - left;
        int len = left + right + p;
        runs.push_back(Run{start, len, p});
      }
    }
  }
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) {
    return std::tie(a.start, a.length, a.period) < std::tie(b.start, b.length, b.period);
  });
  runs.erase(std::unique(runs.begin(), runs.end(),
                         [](const Run& a, const Run& b) {
                           return a.start == b.start && a.length == b.length &&
                                  a.period == b.period;
                         }),
             runs.end());
  return runs;
}

/// Index-backed maximum factor exponent; falls back to the quadratic scan when
/// no repetition of exponent >= 2 clears the length floor.
inline ExponentWitness max_factor_exponent(const Word& prefix, std::size_t min_len) {
  if (prefix.empty()) throw std::invalid_argument("empty prefix");
  if (min_len < 1 || min_len > prefix.size()) throw std::invalid_argument("bad min_len");
  auto runs = find_runs(prefix.letters);
  ExponentWitness best;
  best.value = 0;
  for (const Run& r : runs) {
    if (static_cast<std::size_t>(r.length) < min_len) continue;
    Rational e(r.length, r.period);
    e.canonicalize();
    bool take = best.witness.empty() ? true
                : e > best.value     ? true
                : e < best.value
                    ? false
                    : (static_cast<std::size_t>(r.length) < best.witness.size() ||
                       (static_cast<std::size_t>(r.length) == best.witness.size() &&
                        static_cast<std::size_t>(r.start) < best.position));
    if (take) {
      best.value = e;
      best.witness = prefix.substr(r.start, r.length);
      best.position = r.start;
    }
  }
  if (best.witness.empty() || best.value < 2) return max_factor_exponent_naive(prefix, min_len);
  return best;
}

}  // namespace palrich
