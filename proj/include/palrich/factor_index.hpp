#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "palrich/suffix.hpp"
#include "palrich/words.hpp"

namespace palrich {

struct Extensions {
  std::set<Letter> lext, rext;
  std::set<std::pair<Letter, Letter>> bext;
};

struct BispecialRecord {
  Word factor;
  Extensions ext;
  long bilateral_order = 0;
  bool palindromic = false;
};

struct ReturnWordSet {
  Word target;
  std::vector<std::pair<Word, int>> words;  // return word, multiplicity
  Word shortest;
};

/// Occurrence index over all factors of a prefix up to a trusted length
/// cutoff. Extension sets only count occurrences with both neighbors inside
/// the prefix, so clipped occurrences never shrink or fake an extension set.
class FactorIndex {
 public:
  FactorIndex(Word prefix, int max_factor_len)
      : prefix_(std::move(prefix)), cutoff_(max_factor_len), idx_(prefix_.letters) {
    if (cutoff_ < 1 || static_cast<std::size_t>(cutoff_) > prefix_.size() / 10)
      throw std::invalid_argument("untrusted cutoff");
  }

  const Word& prefix() const { return prefix_; }
  int cutoff() const { return cutoff_; }

  /// All occurrence start positions, sorted.
  std::vector<int> occurrences(const Word& w) const {
    const int n = idx_.size();
    if (w.empty()) {
      std::vector<int> occ(n + 1);
      for (int i = 0; i <= n; ++i) occ[i] = i;
      return occ;
    }
    auto [lb, rb] = sa_interval(w);
    std::vector<int> occ(idx_.sa().begin() + lb, idx_.sa().begin() + rb);
    std::sort(occ.begin(), occ.end());
    return occ;
  }

  Extensions extensions(const Word& w) const {
    check_trusted(w);
    return extensions_at(occurrences(w), static_cast<int>(w.size()));
  }

  long bilateral_order(const Word& w) const {
    Extensions e = extensions(w);
    return static_cast<long>(e.bext.size()) - static_cast<long>(e.lext.size()) -
           static_cast<long>(e.rext.size()) + 1;
  }

  /// All bispecial factors of length <= cutoff, ordered by length.
  std::vector<BispecialRecord> bispecials() const {
    std::vector<BispecialRecord> out;
    for (const auto& [len, lb, rb] : lcp_intervals()) {
      if (len > cutoff_) continue;
      std::vector<int> occ(idx_.sa().begin() + lb, idx_.sa().begin() + rb + 1);
      Extensions e = extensions_at(occ, len);
      if (e.lext.size() >= 2 && e.rext.size() >= 2) {
        Word w = (len == 0) ? Word({}, prefix_.alphabet_size)
                            : prefix_.substr(idx_.sa()[lb], len);
        BispecialRecord rec;
        rec.bilateral_order = static_cast<long>(e.bext.size()) -
                              static_cast<long>(e.lext.size()) -
                              static_cast<long>(e.rext.size()) + 1;
        rec.palindromic = is_palindrome(w);
        rec.factor = std::move(w);
        rec.ext = std::move(e);
        out.push_back(std::move(rec));
      }
    }
    std::sort(out.begin(), out.end(), [](const BispecialRecord& a, const BispecialRecord& b) {
      if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
      return a.factor.letters < b.factor.letters;
    });
    return out;
  }

  ReturnWordSet return_words(const Word& w) const {
    check_trusted(w);
    auto occ = occurrences(w);
    // only occurrences wholly inside the prefix count
    occ.erase(std::remove_if(occ.begin(), occ.end(),
                             [&](int pos) {
                               return pos + static_cast<int>(w.size()) >
                                      static_cast<int>(prefix_.size());
                             }),
              occ.end());
    if (occ.size() < 2) throw std::invalid_argument("insufficient occurrences");
    std::vector<std::pair<Word, int>> words;
    for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
      Word r = prefix_.substr(occ[k], occ[k + 1] - occ[k]);
      auto it = std::find_if(words.begin(), words.end(),
                             [&](const auto& p) { return p.first == r; });
      if (it == words.end())
        words.push_back({std::move(r), 1});
      else
        it->second += 1;
    }
    ReturnWordSet rs;
    rs.target = w;
    rs.shortest = words.front().first;
    for (const auto& [r, mult] : words) {
      (void)mult;
      if (r.size() < rs.shortest.size() ||
          (r.size() == rs.shortest.size() && r.letters < rs.shortest.letters))
        rs.shortest = r;
    }
    rs.words = std::move(words);
    return rs;
  }

  /// 1 + max over trusted bispecials of |w| / |shortest return word|; a lower
  /// bound for the critical exponent, monotone in cutoff and prefix length.
  Rational critical_exponent_estimate() const {
    if (exponent(prefix_) >= 3)
      throw std::invalid_argument("prefix looks periodic; estimate undefined");
    auto bs = bispecials();
    std::optional<Rational> best;
    for (const auto& rec : bs) {
      if (rec.factor.empty()) continue;
      ReturnWordSet rs;
      try {
        rs = return_words(rec.factor);
      } catch (const std::invalid_argument&) {
        continue;
      }
      Rational ratio(static_cast<long>(rec.factor.size()),
                     static_cast<long>(rs.shortest.size()));
      ratio.canonicalize();
      if (!best || ratio > *best) best = ratio;
    }
    if (!best) throw std::runtime_error("no bispecial factor found");
    return Rational(1) + *best;
  }

 private:
  Extensions extensions_at(const std::vector<int>& occ, int len) const {
    Extensions e;
    const auto& t = prefix_.letters;
    const int n = static_cast<int>(t.size());
    for (int pos : occ) {
      if (pos == 0 || pos + len >= n) continue;
      Letter a = t[pos - 1];
      Letter b = t[pos + len];
      e.lext.insert(a);
      e.rext.insert(b);
      e.bext.insert({a, b});
    }
    return e;
  }

  void check_trusted(const Word& w) const {
    if (static_cast<int>(w.size()) > cutoff_)
      throw std::invalid_argument("factor beyond the trusted cutoff");
  }

  /// SA interval [lb, rb) of suffixes starting with w; empty if absent.
  std::pair<int, int> sa_interval(const Word& w) const {
    const auto& sa = idx_.sa();
    const auto& t = idx_.text();
    const int n = idx_.size();
    auto cmp_prefix = [&](int pos) {  // compare suffix at pos against w
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (pos + static_cast<int>(k) >= n) return -1;
        if (t[pos + k] != w[k]) return t[pos + k] < w[k] ? -1 : 1;
      }
      return 0;
    };
    int lo = 0, hi = n;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (cmp_prefix(sa[mid]) < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    int lb = lo;
    hi = n;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (cmp_prefix(sa[mid]) <= 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return {lb, lo};
  }

  struct Interval {
    int len, lb, rb;  // inclusive SA range [lb, rb]
  };

  /// Internal suffix-tree nodes as lcp-intervals, plus the root.
  std::vector<Interval> lcp_intervals() const {
    const int n = idx_.size();
    std::vector<Interval> out;
    out.push_back({0, 0, n - 1});
    const auto& lcp = idx_.lcp();
    std::vector<std::pair<int, int>> stack;  // (lcp value, left bound)
    stack.push_back({0, 0});
    for (int i = 1; i < n; ++i) {
      int lb = i;
      while (!stack.empty() && stack.back().first > lcp[i]) {
        auto [val, left] = stack.back();
        stack.pop_back();
        if (val > 0) out.push_back({val, left, i - 1});
        lb = left;
      }
      if (stack.empty() || stack.back().first < lcp[i]) stack.push_back({lcp[i], lb});
    }
    while (!stack.empty()) {
      auto [val, left] = stack.back();
      stack.pop_back();
      if (val > 0) out.push_back({val, left, n - 1});
    }
    return out;
  }

  Word prefix_;
  int cutoff_;
  SuffixIndex idx_;
};

}  // namespace palrich
