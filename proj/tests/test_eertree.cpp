#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "palrich/eertree.hpp"
#include "palrich/morphism.hpp"

using namespace palrich;

namespace {

// oracle: distinct palindromic substrings via direct enumeration
std::size_t brute_palindromes(const Word& w) {
  std::set<std::vector<Letter>> seen;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t len = 1; i + len <= w.size(); ++len) {
      Word f = w.substr(i, len);
      if (is_palindrome(f)) seen.insert(f.letters);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("distinct palindrome counts") {
  CHECK(Eertree(word_from_string("aba")).distinct_palindromes() == 3);
  CHECK(Eertree(Word{}).distinct_palindromes() == 0);
  CHECK(Eertree(word_from_string("0102010")).distinct_palindromes() == 7);
}

TEST_CASE("richness report") {
  auto rep = richness(word_from_string("0102010"));
  CHECK(rep.palindrome_count == 8);
  CHECK(rep.defect == 0);
  CHECK_FALSE(rep.first_defect_position.has_value());
  CHECK(richness(Word{}).palindrome_count == 1);
  auto bad = richness(word_from_string("abca"));
  CHECK(bad.defect == 1);
  CHECK(bad.first_defect_position.has_value());
}

TEST_CASE("eertree agrees with brute force, exhaustive short words") {
  for (int n = 0; n <= 11; ++n) {
    std::vector<Letter> v(n, 0);
    while (true) {
      Word w{v, 3};
      CHECK(Eertree(w).distinct_palindromes() == brute_palindromes(w));
      int i = n - 1;
      while (i >= 0 && v[i] == 2) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
      if (n == 0) break;
    }
    if (n == 0) continue;
  }
}

TEST_CASE("defect of prefixes is non-decreasing") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int t = 0; t < 30; ++t) {
    Word w{{}, 3};
    std::size_t prev = 0;
    for (int i = 0; i < 60; ++i) {
      w.letters.push_back(pick(rng));
      std::size_t defect = richness(w).defect;
      CHECK(defect >= prev);
      prev = defect;
    }
  }
}

TEST_CASE("palindromic extensions") {
  Word u3 = fixed_point_prefix(make_phi(3), 10000);
  // letter 1 only ever appears in context 010, so "101" never occurs and the
  // only palindromic extension of "0" is "202" (inside "022022")
  auto ext0 = pext(u3, word_from_string("0"));
  CHECK(ext0 == std::set<Letter>{2});
  // empty p: letters i with "ii" a factor
  auto extEps = pext(u3, Word{{}, 3});
  CHECK(extEps == std::set<Letter>{2});  // only "22" occurs in u_3
  CHECK(pext(word_from_string("aba"), word_from_string("b")) == std::set<Letter>{0});
  CHECK_THROWS(pext(u3, word_from_string("01")));   // not a palindrome
  CHECK_THROWS(pext(word_from_string("aba"), word_from_string("c")));  // not a factor
}

TEST_CASE("complete return words of palindromes are palindromes on rich prefixes") {
  Word u3 = fixed_point_prefix(make_phi(3), 4000);
  CHECK_FALSE(richness_via_crw(u3, 50).has_value());
  CHECK_THROWS_WITH(richness_via_crw(u3, 2000), "max_len beyond the trusted margin |prefix|/4");
}

TEST_CASE("non-palindromic complete return word is caught") {
  Word w{{}, 3};
  for (int i = 0; i < 40; ++i) w.letters.push_back(i % 3);  // abcabc...
  auto cx = richness_via_crw(w, 4);
  REQUIRE(cx.has_value());
  CHECK(cx->palindrome.str() == "0");
  CHECK(cx->complete_return.str() == "0120");
}

TEST_CASE("crw test and defect agree on exhaustive short words") {
  for (int n = 8; n <= 10; ++n) {
    std::vector<Letter> v(n, 0);
    while (true) {
      Word w{v, 2};
      bool rich = richness(w).defect == 0;
      bool crw_ok = true;
      for (std::size_t plen = 1; plen <= w.size(); ++plen) {
        Word p = w.substr(0, plen);
        if (!richness_via_crw(p, p.size() / 4).has_value()) continue;
        crw_ok = false;
        break;
      }
      // full-depth crw failure implies a defect somewhere; richness implies no
      // counterexample at any trusted depth
      if (rich) CHECK(crw_ok);
      int i = n - 1;
      while (i >= 0 && v[i] == 1) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
    }
  }
}
