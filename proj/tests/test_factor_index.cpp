#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "palrich/eertree.hpp"
#include "palrich/factor_index.hpp"
#include "palrich/morphism.hpp"

using namespace palrich;

namespace {

std::vector<std::size_t> brute_occurrences(const Word& prefix, const Word& w) {
  std::vector<std::size_t> occ;
  for (std::size_t i = 0; i + w.size() <= prefix.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (prefix.letters[i + k] != w.letters[k]) {
        hit = false;
        break;
      }
    if (hit) occ.push_back(i);
  }
  return occ;
}

// oracle: extension sets by direct occurrence scan
Extensions brute_extensions(const Word& prefix, const Word& w) {
  Extensions e;
  for (std::size_t pos : brute_occurrences(prefix, w)) {
    if (pos == 0 || pos + w.size() >= prefix.size()) continue;
    Letter l = prefix.letters[pos - 1], r = prefix.letters[pos + w.size()];
    e.lext.insert(l);
    e.rext.insert(r);
    e.bext.insert({l, r});
  }
  return e;
}

}  // namespace

TEST_CASE("cutoff trust margin") {
  Word u3 = fixed_point_prefix(make_phi(3), 1000);
  CHECK_THROWS_WITH(FactorIndex(u3, 101), "untrusted cutoff");
  CHECK_NOTHROW(FactorIndex(u3, 100));
}

TEST_CASE("bispecial factors of small prefixes") {
  Word u3 = fixed_point_prefix(make_phi(3), 10000);
  FactorIndex idx(u3, 1000);
  auto bs = idx.bispecials();
  REQUIRE(!bs.empty());
  CHECK(bs[0].factor.size() == 0);  // the empty word
  CHECK(bs[0].ext.lext == std::set<Letter>{0, 1, 2});
  bool zero_found = false, single_letter_0 = false;
  for (const auto& rec : bs) {
    if (rec.factor.size() == 1 && rec.factor[0] == 0) single_letter_0 = true;
    if (rec.factor.size() == 0) zero_found = true;
  }
  CHECK(zero_found);
  CHECK(single_letter_0);

  Word u7 = fixed_point_prefix(make_phi(7), 10000);
  FactorIndex idx7(u7, 1000);
  bool six = false;
  for (const auto& rec : idx7.bispecials())
    if (rec.factor.size() == 1 && rec.factor[0] == 6) six = true;
  CHECK(six);

  Word aaa{std::vector<Letter>(50, 0), 2};
  FactorIndex idxa(aaa, 5);
  CHECK(idxa.bispecials().empty());
}

TEST_CASE("extension sets match the occurrence-scan oracle") {
  Word u5 = fixed_point_prefix(make_phi(5), 5000);
  FactorIndex idx(u5, 400);
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> pos(0, u5.size() - 40);
  for (int t = 0; t < 60; ++t) {
    Word w = u5.substr(pos(rng), 1 + t % 30);
    Extensions got = idx.extensions(w);
    Extensions want = brute_extensions(u5, w);
    CHECK(got.lext == want.lext);
    CHECK(got.rext == want.rext);
    CHECK(got.bext == want.bext);
  }
}

TEST_CASE("bilateral order follows the richness law") {
  Word u3 = fixed_point_prefix(make_phi(3), 20000);
  FactorIndex idx(u3, 500);
  for (const auto& rec : idx.bispecials()) {
    if (!rec.palindromic) {
      CHECK(rec.bilateral_order == 0);
    } else {
      long pext_count = static_cast<long>(pext(u3, rec.factor).size());
      CHECK(rec.bilateral_order == pext_count - 1);
    }
    // plain sanity on extension set sizes
    CHECK(rec.ext.bext.size() >= rec.ext.lext.size());
    CHECK(rec.ext.bext.size() >= rec.ext.rext.size());
  }
}

TEST_CASE("return words") {
  Word u3 = fixed_point_prefix(make_phi(3), 20000);
  FactorIndex idx(u3, 500);
  auto rs = idx.return_words(word_from_string("0"));
  CHECK(rs.words.size() == 3);

  Word u7 = fixed_point_prefix(make_phi(7), 60000);
  FactorIndex idx7(u7, 500);
  auto rs6 = idx7.return_words(Word{{6}, 7});
  CHECK(parikh(rs6.shortest) == ParikhVector{0, 0, 0, 0, 0, 0, 1});

  // a factor occurring once cannot have return words
  Word once = u3.substr(u3.size() - 400, 300);
  bool unique_occ = idx.occurrences(once).size() < 2;
  if (unique_occ) CHECK_THROWS(idx.return_words(once));
}

TEST_CASE("every trusted factor of the fixed point has alphabet-many return words") {
  for (int D : {3, 5}) {
    Word u = fixed_point_prefix(make_phi(D), 30000);
    FactorIndex idx(u, 60);
    std::set<std::vector<Letter>> factors;
    for (std::size_t i = 0; i + 12 <= u.size(); ++i)
      for (std::size_t len = 1; len <= 12; ++len) factors.insert(u.substr(i, len).letters);
    for (const auto& f : factors) {
      auto rs = idx.return_words(Word{f, D});
      CHECK(rs.words.size() == static_cast<std::size_t>(D));
    }
  }
}

TEST_CASE("critical exponent estimate") {
  Word u3 = fixed_point_prefix(make_phi(3), 30000);
  FactorIndex small(u3, 100), large(u3, 1000);
  Rational a = small.critical_exponent_estimate();
  Rational b = large.critical_exponent_estimate();
  CHECK(a >= 1);
  CHECK(b >= a);  // monotone in cutoff

  Word periodic{{}, 2};
  for (int i = 0; i < 600; ++i) periodic.letters.push_back(i % 2);
  FactorIndex pidx(periodic, 30);
  CHECK_THROWS_WITH(pidx.critical_exponent_estimate(),
                    "prefix looks periodic; estimate undefined");
}
