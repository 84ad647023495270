#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "palrich/suffix.hpp"
#include "palrich/words.hpp"

using namespace palrich;

namespace {

// oracle: smallest q with w[i] == w[i+q]
std::size_t brute_period(const Word& w) {
  for (std::size_t q = 1; q < w.size(); ++q) {
    bool ok = true;
    for (std::size_t i = 0; i + q < w.size(); ++i)
      if (w.letters[i] != w.letters[i + q]) {
        ok = false;
        break;
      }
    if (ok) return q;
  }
  return w.size();
}

Word random_word(std::mt19937& rng, std::size_t len, int sigma) {
  Word w;
  w.alphabet_size = sigma;
  std::uniform_int_distribution<int> pick(0, sigma - 1);
  for (std::size_t i = 0; i < len; ++i) w.letters.push_back(pick(rng));
  return w;
}

}  // namespace

TEST_CASE("mirror") {
  CHECK(mirror(word_from_string("012")).str() == "210");
  CHECK(mirror(Word{}).size() == 0);
  CHECK(mirror(word_from_string("0102010")).str() == "0102010");
}

TEST_CASE("mirror is an involution") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, t % 40, 4);
    CHECK(mirror(mirror(w)) == w);
  }
}

TEST_CASE("is_palindrome") {
  CHECK(is_palindrome(word_from_string("0102010")));
  CHECK_FALSE(is_palindrome(word_from_string("01")));
  CHECK(is_palindrome(Word{}));
}

TEST_CASE("parikh") {
  auto p = parikh(word_from_string("0102010"));
  CHECK(p == ParikhVector{4, 2, 1});
  CHECK(parikh(word_from_string("022")) == ParikhVector{1, 0, 2});
  Word empty;
  empty.alphabet_size = 3;
  CHECK(parikh(empty) == ParikhVector{0, 0, 0});
}

TEST_CASE("parikh is additive under concatenation") {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    Word u = random_word(rng, t % 25, 3), v = random_word(rng, (t * 7) % 25, 3);
    Word uv = u;
    uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
    auto pu = parikh(u), pv = parikh(v), puv = parikh(uv);
    for (int i = 0; i < 3; ++i) CHECK(puv[i] == pu[i] + pv[i]);
  }
}

TEST_CASE("minimal period and exponent") {
  CHECK(minimal_period(word_from_string("magma")) == 3);
  CHECK(exponent(word_from_string("magma")) == Rational(5, 3));
  CHECK(minimal_period(word_from_string("aaa")) == 1);
  CHECK(exponent(word_from_string("aaa")) == 3);
  CHECK(minimal_period(word_from_string("0102010")) == 4);
  CHECK(exponent(word_from_string("0102010")) == Rational(7, 4));
  CHECK_THROWS_WITH(minimal_period(Word{}), "empty word has no period");
}

TEST_CASE("border-array period agrees with brute force, exhaustive") {
  // all words over 3 letters up to length 12
  for (int n = 1; n <= 12; ++n) {
    Word w;
    w.alphabet_size = 3;
    w.letters.assign(n, 0);
    while (true) {
      CHECK(minimal_period(w) == brute_period(w));
      int i = n - 1;
      while (i >= 0 && w.letters[i] == 2) w.letters[i--] = 0;
      if (i < 0) break;
      ++w.letters[i];
    }
  }
}

TEST_CASE("square detection consistent with exponent") {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, 1 + t % 30, 2);
    std::size_t p = minimal_period(w);
    bool square_aligned = w.size() >= 2 * p;
    CHECK((exponent(w) >= 2) == square_aligned);
  }
}

TEST_CASE("max factor exponent, small examples") {
  auto r = max_factor_exponent_naive(word_from_string("010201022"), 1);
  CHECK(r.value == 2);
  CHECK(r.witness.str() == "22");
  r = max_factor_exponent_naive(word_from_string("01"), 1);
  CHECK(r.value == 1);
  CHECK(r.witness.str() == "0");
  r = max_factor_exponent_naive(word_from_string("aaa"), 1);
  CHECK(r.value == 3);
  CHECK(r.witness == word_from_string("aaa"));
}

TEST_CASE("indexed max factor exponent agrees with the naive oracle") {
  std::mt19937 rng(19);
  for (int t = 0; t < 40; ++t) {
    Word w = random_word(rng, 50 + t * 10, t % 2 ? 2 : 3);
    for (std::size_t min_len : {std::size_t(1), std::size_t(3)}) {
      auto naive = max_factor_exponent_naive(w, min_len);
      auto fast = max_factor_exponent(w, min_len);
      CHECK(naive.value == fast.value);
      CHECK(naive.witness == fast.witness);
      CHECK(naive.position == fast.position);
    }
  }
}
