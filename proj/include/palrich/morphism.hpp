#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "palrich/matrix.hpp"
#include "palrich/words.hpp"

namespace palrich {

/// A non-erasing morphism between integer alphabets, given by its letter images.
struct Morphism {
  std::vector<Word> images;  // indexed by source letter
  int source_alphabet_size = 0;
  int target_alphabet_size = 0;

  Morphism() = default;
  Morphism(std::vector<Word> imgs, int source_size, int target_size)
      : images(std::move(imgs)), source_alphabet_size(source_size),
        target_alphabet_size(target_size) {
    if (static_cast<int>(images.size()) != source_alphabet_size)
      throw std::invalid_argument("image count must equal source alphabet size");
    for (const Word& img : images) {
      if (img.empty()) throw std::invalid_argument("erasing morphism rejected");
      for (Letter c : img.letters)
        if (c < 0 || c >= target_alphabet_size)
          throw std::invalid_argument("image letter out of target alphabet");
    }
  }
};

/// The family 0 -> 01, 1 -> 02, ..., (D-2) -> 0(D-1), (D-1) -> 0(D-1)(D-1).
inline Morphism make_phi(int D) {
  if (D < 3) throw std::invalid_argument("phi defined for d >= 3");
  std::vector<Word> images;
  for (int i = 0; i + 1 < D; ++i) images.push_back(Word({0, i + 1}, D));
  images.push_back(Word({0, D - 1, D - 1}, D));
  return Morphism(std::move(images), D, D);
}

inline Word apply(const Morphism& m, const Word& w) {
  std::vector<Letter> out;
  for (Letter c : w.letters) {
    if (c < 0 || c >= m.source_alphabet_size)
      throw std::invalid_argument("letter out of source alphabet");
    const auto& img = m.images[c].letters;
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out), m.target_alphabet_size);
}

/// First n letters of the fixed point starting with letter 0.
inline Word fixed_point_prefix(const Morphism& m, std::size_t n) {
  if (m.source_alphabet_size != m.target_alphabet_size)
    throw std::invalid_argument("fixed point needs an endomorphism");
  if (m.images[0].empty() || m.images[0][0] != 0 || m.images[0].size() < 2)
    throw std::invalid_argument("not prolongable at 0");
  Word w({0}, m.source_alphabet_size);
  while (w.size() < n) {
    Word next = apply(m, w);
    if (next.size() == w.size()) throw std::invalid_argument("not prolongable at 0");
    w = std::move(next);
  }
  w.letters.resize(n);
  return w;
}

/// (M)_{ij} = number of occurrences of letter i in the image of letter j.
inline IntMatrix incidence_matrix(const Morphism& m) {
  IntMatrix M(m.target_alphabet_size, m.source_alphabet_size);
  for (int j = 0; j < m.source_alphabet_size; ++j)
    for (Letter i : m.images[j].letters) M(i, j) += 1;
  return M;
}

inline bool is_primitive(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("primitivity needs a square matrix");
  const int n = M.rows();
  // Boolean reachability; positivity must appear by power (n-1)^2 + 1.
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = M(i, j) > 0;
  int limit = (n - 1) * (n - 1) + 1;
  auto positive = [&](const std::vector<std::vector<bool>>& x) {
    for (const auto& row : x)
      for (bool v : row)
        if (!v) return false;
    return true;
  };
  auto cur = a;
  for (int k = 1; k <= limit; ++k) {
    if (positive(cur)) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (cur[i][l])
          for (int j = 0; j < n; ++j)
            if (a[l][j]) next[i][j] = true;
    cur = std::move(next);
  }
  return false;
}

/// F_0 = empty, F_k = m(F_{k-1}) 0; every member must come out palindromic.
inline Word f_chain(const Morphism& m, int k) {
  if (k < 0) throw std::invalid_argument("f_chain needs k >= 0");
  Word F({}, m.source_alphabet_size);
  for (int i = 1; i <= k; ++i) {
    F = apply(m, F);
    F.letters.push_back(0);
  }
  if (!is_palindrome(F)) throw std::runtime_error("f_chain produced a non-palindrome");
  return F;
}

/// Palindromic letter images of lengths (1,...,1, 2^0, ..., 2^d) over pairwise
/// disjoint target letters, each image using the maximum number of distinct letters.
struct WeightedMorphism {
  Morphism base;
  std::vector<long> weights;  // h_i = |base.images[i]|
};

inline WeightedMorphism make_weighted_pi(int d) {
  if (d < 2) throw std::invalid_argument("weighted morphism needs d >= 2");
  std::vector<long> h;
  for (int i = 0; i < d; ++i) h.push_back(1);
  for (int j = 0; j <= d; ++j) h.push_back(1L << j);
  int target_size = d + (1 << d);
  std::vector<Word> images;
  int next_letter = 0;
  for (long len : h) {
    long m = len / 2;
    std::vector<Letter> fresh;
    for (long t = 0; t < m + (len % 2); ++t) fresh.push_back(next_letter++);
    std::vector<Letter> img;
    for (long t = 0; t < m; ++t) img.push_back(fresh[t]);
    if (len % 2) img.push_back(fresh[m]);
    for (long t = m - 1; t >= 0; --t) img.push_back(fresh[t]);
    images.emplace_back(std::move(img), target_size);
  }
  if (next_letter != target_size) throw std::logic_error("weighted morphism letter budget");
  WeightedMorphism pi;
  pi.base = Morphism(std::move(images), 2 * d + 1, target_size);
  pi.weights = std::move(h);
  return pi;
}

/// Unique placement of a factor inside images of pi, when it exists.
struct Decoding {
  std::size_t offset = 0;  // 0-based index of w[0] inside its containing image
  Word pre_image;          // source letters whose images lie fully inside w
  std::size_t tail = 0;    // length of the trailing proper image prefix
};

/// Images of distinct letters use disjoint letters, so each target letter pins
/// down its source letter; only the position inside that image can be ambiguous.
inline std::optional<Decoding> decode(const WeightedMorphism& pi, const Word& w) {
  if (w.empty()) return std::nullopt;
  const Morphism& m = pi.base;
  std::vector<int> owner(m.target_alphabet_size, -1);
  for (int a = 0; a < m.source_alphabet_size; ++a)
    for (Letter c : m.images[a].letters) owner[c] = a;
  for (Letter c : w.letters)
    if (c < 0 || c >= m.target_alphabet_size || owner[c] < 0)
      throw std::invalid_argument("not in codomain");

  int a0 = owner[w[0]];
  const auto& img0 = m.images[a0].letters;
  std::vector<Decoding> parses;
  for (std::size_t s = 0; s < img0.size(); ++s) {
    if (img0[s] != w[0]) continue;
    // Try to read w starting at position s of the image of a0.
    std::size_t i = 0, j = s;
    int cur = a0;
    Decoding dec;
    dec.offset = s;
    bool ok = true;
    bool first_partial = s > 0;
    while (i < w.size()) {
      const auto& img = m.images[cur].letters;
      if (w[i] != img[j]) {
        ok = false;
        break;
      }
      ++i;
      ++j;
      if (j == img.size()) {
        if (!first_partial) dec.pre_image.letters.push_back(cur);
        first_partial = false;
        j = 0;
        if (i < w.size()) cur = owner[w[i]];
      }
    }
    if (!ok) continue;
    if (j > 0) {
      if (first_partial) continue;  // w ends inside its first image piece: handled below
      dec.tail = j;
    }
    dec.pre_image.alphabet_size = m.source_alphabet_size;
    parses.push_back(std::move(dec));
  }
  // Placement strictly inside one image, touching neither end; the boundary
  // cases are already produced by the scan above.
  for (std::size_t s = 1; s + w.size() < img0.size(); ++s) {
    bool match = true;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (img0[s + i] != w[i]) {
        match = false;
        break;
      }
    if (match) {
      Decoding dec;
      dec.offset = s;
      dec.pre_image.alphabet_size = m.source_alphabet_size;
      parses.push_back(std::move(dec));
    }
  }
  if (parses.size() != 1) return std::nullopt;
  return parses.front();
}

/// Common-prefix palindrome p with images p q_i, q_i palindromic and
/// image(i) p a complete return word to p. Longest such p is returned.
inline std::optional<Word> is_P_ret(const Morphism& m) {
  if (m.images.empty()) return std::nullopt;
  // p must be a prefix of every image.
  std::size_t common = m.images[0].size();
  for (const Word& img : m.images) {
    std::size_t k = 0;
    while (k < common && k < img.size() && img[k] == m.images[0][k]) ++k;
    common = k;
  }
  auto occurrences = [](const std::vector<Letter>& text, const std::vector<Letter>& pat) {
    std::vector<std::size_t> occ;
    if (pat.empty() || pat.size() > text.size()) return occ;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i)
      if (std::equal(pat.begin(), pat.end(), text.begin() + i)) occ.push_back(i);
    return occ;
  };
  for (std::size_t plen = common + 1; plen-- > 0;) {
    Word p = m.images[0].substr(0, plen);
    if (!is_palindrome(p)) continue;
    bool ok = true;
    for (const Word& img : m.images) {
      Word q = img.substr(plen, img.size() - plen);
      if (!is_palindrome(q)) {
        ok = false;
        break;
      }
      std::vector<Letter> crw = img.letters;
      crw.insert(crw.end(), p.letters.begin(), p.letters.end());
      if (plen == 0) {
        // complete return words to the empty word are the single letters
        if (img.size() != 1) {
          ok = false;
          break;
        }
      } else {
        auto occ = occurrences(crw, p.letters);
        if (occ.size() != 2 || occ.front() != 0 || occ.back() != img.size()) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return p;
  }
  return std::nullopt;
}

}  // namespace palrich
