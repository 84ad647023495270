#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace palrich {

using Letter = int;
using Rational = mpq_class;
using BigInt = mpz_class;

/// Letter-count vector; component i counts occurrences of letter i.
using ParikhVector = std::vector<BigInt>;

/// A finite word over the integer alphabet {0, ..., alphabet_size-1}.
struct Word {
  std::vector<Letter> letters;
  int alphabet_size = 1;

  Word() = default;
  Word(std::vector<Letter> ls, int sigma) : letters(std::move(ls)), alphabet_size(sigma) {
    for (Letter c : letters)
      if (c < 0 || c >= alphabet_size) throw std::invalid_argument("letter out of alphabet range");
  }

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  bool operator==(const Word& o) const {
    return letters == o.letters && alphabet_size == o.alphabet_size;
  }
  bool operator<(const Word& o) const { return letters < o.letters; }

  Word substr(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Letter>(letters.begin() + pos, letters.begin() + pos + len),
                alphabet_size);
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (i) s.push_back(alphabet_size > 10 ? '.' : '\0');
      if (s.size() && s.back() == '\0') s.pop_back();
      if (alphabet_size > 10) {
        if (i) s.push_back('.');
        s += std::to_string(letters[i]);
      } else {
        s.push_back(static_cast<char>('0' + letters[i]));
      }
    }
    return s;
  }
};

/// Digits map to 0..9, lowercase letters to 0..25; mixing is rejected.
inline Word word_from_string(const std::string& s, int alphabet_size = 0) {
  std::vector<Letter> ls;
  ls.reserve(s.size());
  int max_letter = -1;
  for (char c : s) {
    Letter v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'z')
      v = c - 'a';
    else
      throw std::invalid_argument("word_from_string: unsupported character");
    ls.push_back(v);
    max_letter = std::max(max_letter, v);
  }
  if (alphabet_size == 0) alphabet_size = max_letter + 1;
  if (alphabet_size <= 0) alphabet_size = 1;
  return Word(std::move(ls), alphabet_size);
}

inline Word mirror(const Word& w) {
  std::vector<Letter> ls(w.letters.rbegin(), w.letters.rend());
  return Word(std::move(ls), w.alphabet_size);
}

inline bool is_palindrome(const Word& w) {
  const auto& a = w.letters;
  for (std::size_t i = 0, j = a.size(); i + 1 < j; ++i, --j)
    if (a[i] != a[j - 1]) return false;
  return true;
}

inline ParikhVector parikh(const Word& w) {
  ParikhVector v(w.alphabet_size, 0);
  for (Letter c : w.letters) v[c] += 1;
  return v;
}

/// Failure function: border[i] = length of the longest proper border of w[0..i).
inline std::vector<int> border_array(const std::vector<Letter>& w) {
  int n = static_cast<int>(w.size());
  std::vector<int> b(n + 1, 0);
  b[0] = -1;
  for (int i = 1; i <= n; ++i) {
    int k = b[i - 1];
    while (k >= 0 && w[k] != w[i - 1]) k = b[k];
    b[i] = k + 1;
  }
  b[0] = 0;
  return b;
}

inline int minimal_period(const Word& w) {
  if (w.empty()) throw std::invalid_argument("empty word has no period");
  auto b = border_array(w.letters);
  int n = static_cast<int>(w.size());
  return n - b[n];
}

inline Rational exponent(const Word& w) {
  Rational e(static_cast<long>(w.size()), minimal_period(w));
  e.canonicalize();
  return e;
}

struct ExponentWitness {
  Rational value;
  Word witness;
  std::size_t position = 0;  // leftmost occurrence of the witness
};

/// Brute-force maximum over all factors with length >= min_len of |v|/per(v).
/// Ties broken by shortest witness, then leftmost occurrence.
inline ExponentWitness max_factor_exponent_naive(const Word& prefix, std::size_t min_len) {
  if (prefix.empty()) throw std::invalid_argument("empty prefix");
  if (min_len < 1 || min_len > prefix.size()) throw std::invalid_argument("bad min_len");
  const int n = static_cast<int>(prefix.size());
  ExponentWitness best;
  best.value = 0;
  // For each start, one pass of the failure function gives per(w[i..i+L)) for every L.
  std::vector<int> b(n + 1);
  for (int i = 0; i < n; ++i) {
    b[0] = -1;
    for (int L = 1; i + L <= n; ++L) {
      int k = b[L - 1];
      while (k >= 0 && prefix.letters[i + k] != prefix.letters[i + L - 1]) k = b[k];
      b[L] = k + 1;
      if (static_cast<std::size_t>(L) < min_len) continue;
      int per = L - std::max(b[L], 0);
      Rational e(L, per);
      e.canonicalize();
      bool take = best.witness.empty() ? true
                  : e > best.value     ? true
                  : e < best.value
                      ? false
                      : (static_cast<std::size_t>(L) < best.witness.size() ||
                         (static_cast<std::size_t>(L) == best.witness.size() &&
                          static_cast<std::size_t>(i) < best.position));
      if (take) {
        best.value = e;
        best.witness = prefix.substr(i, L);
        best.position = i;
      }
    }
  }
  return best;
}

}  // namespace palrich
