#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "palrich/words.hpp"

namespace palrich {

/// Palindromic tree over the appended word: one node per distinct non-empty
/// palindromic factor, plus the two roots of length -1 and 0.
class Eertree {
 public:
  struct Node {
    int length = 0;
    int suffix_link = 0;
    int sample_end = -1;  // one position where this palindrome ends (exclusive)
    std::map<Letter, int> next;
  };

  Eertree() {
    nodes_.push_back(Node{-1, 0, -1, {}});  // root of length -1
    nodes_.push_back(Node{0, 0, -1, {}});   // root of length 0
    last_ = 1;
  }

  explicit Eertree(const Word& w) : Eertree() {
    for (Letter c : w.letters) append(c);
  }

  void append(Letter c) {
    text_.push_back(c);
    int pos = static_cast<int>(text_.size()) - 1;
    int cur = last_;
    while (true) {
      int len = nodes_[cur].length;
      if (pos - len - 1 >= 0 && text_[pos - len - 1] == c) break;
      cur = nodes_[cur].suffix_link;
    }
    auto it = nodes_[cur].next.find(c);
    if (it != nodes_[cur].next.end()) {
      last_ = it->second;
      new_at_.push_back(false);
      return;
    }
    int link;
    if (nodes_[cur].length + 2 == 1) {
      link = 1;
    } else {
      int s = nodes_[cur].suffix_link;
      while (true) {
        int len = nodes_[s].length;
        if (pos - len - 1 >= 0 && text_[pos - len - 1] == c) break;
        s = nodes_[s].suffix_link;
      }
      auto jt = nodes_[s].next.find(c);
      link = (jt == nodes_[s].next.end()) ? 1 : jt->second;
    }
    Node node;
    node.length = nodes_[cur].length + 2;
    node.suffix_link = link;
    node.sample_end = pos + 1;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    nodes_[cur].next[c] = id;
    last_ = id;
    new_at_.push_back(true);
  }

  /// Number of distinct non-empty palindromic factors seen so far.
  std::size_t distinct_palindromes() const { return nodes_.size() - 2; }

  std::size_t length() const { return text_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Letter>& text() const { return text_; }
  bool created_node_at(std::size_t pos) const { return new_at_[pos]; }

 private:
  std::vector<Node> nodes_;
  std::vector<Letter> text_;
  std::vector<bool> new_at_;
  int last_;
};

struct RichnessReport {
  std::size_t word_length = 0;
  std::size_t palindrome_count = 0;  // includes the empty word
  std::size_t defect = 0;            // |w| + 1 - palindrome_count
  std::optional<std::size_t> first_defect_position;
};

inline RichnessReport richness(const Word& w) {
  Eertree tree(w);
  RichnessReport rep;
  rep.word_length = w.size();
  rep.palindrome_count = tree.distinct_palindromes() + 1;
  rep.defect = w.size() + 1 - rep.palindrome_count;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!tree.created_node_at(i)) {
      rep.first_defect_position = i;
      break;
    }
  return rep;
}

namespace detail {
inline std::vector<std::size_t> occurrences(const std::vector<Letter>& text,
                                            const std::vector<Letter>& pat) {
  std::vector<std::size_t> occ;
  if (pat.empty()) {
    for (std::size_t i = 0; i <= text.size(); ++i) occ.push_back(i);
    return occ;
  }
  if (pat.size() > text.size()) return occ;
  for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
    if (text[i] != pat[0]) continue;
    bool hit = true;
    for (std::size_t k = 1; k < pat.size(); ++k)
      if (text[i + k] != pat[k]) {
        hit = false;
        break;
      }
    if (hit) occ.push_back(i);
  }
  return occ;
}
}  // namespace detail

/// Letters i such that i p i occurs in the prefix.
inline std::set<Letter> pext(const Word& prefix, const Word& p) {
  if (!is_palindrome(p)) throw std::invalid_argument("pext needs a palindromic p");
  auto occ = detail::occurrences(prefix.letters, p.letters);
  if (!p.empty() && occ.empty()) throw std::invalid_argument("p is not a factor of the prefix");
  std::set<Letter> out;
  for (std::size_t pos : occ) {
    if (pos == 0 || pos + p.size() >= prefix.size()) continue;
    if (prefix.letters[pos - 1] == prefix.letters[pos + p.size()])
      out.insert(prefix.letters[pos - 1]);
  }
  return out;
}

struct CrwCounterexample {
  Word palindrome;
  Word complete_return;
};

/// Checks that every complete return word (inside the prefix) to every
/// palindromic factor of length <= max_len is itself a palindrome.
inline std::optional<CrwCounterexample> richness_via_crw(const Word& prefix,
                                                         std::size_t max_len) {
  if (max_len > prefix.size() / 4)
    throw std::invalid_argument("max_len beyond the trusted margin |prefix|/4");
  Eertree tree(prefix);
  for (std::size_t id = 2; id < tree.nodes().size(); ++id) {
    const auto& node = tree.nodes()[id];
    if (static_cast<std::size_t>(node.length) > max_len) continue;
    Word p = prefix.substr(node.sample_end - node.length, node.length);
    auto occ = detail::occurrences(prefix.letters, p.letters);
    for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
      Word crw = prefix.substr(occ[k], occ[k + 1] - occ[k] + p.size());
      if (!is_palindrome(crw)) return CrwCounterexample{p, crw};
    }
  }
  return std::nullopt;
}

}  // namespace palrich
