#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "d0l/core.hpp"
#include "fixtures.hpp"

using namespace d0l;
using fixtures::w;

TEST_CASE("apply concatenates letter images") {
  auto tm = fixtures::tm();
  CHECK(tm.system.morphism().apply(w(tm, "01")) == w(tm, "0110"));
  CHECK(tm.system.morphism().apply(Word{}) == Word{});

  auto s = fixtures::sys_s();
  CHECK(s.system.morphism().apply(w(s, "012")) == w(s, "00122012"));
}

TEST_CASE("apply rejects letters outside the alphabet") {
  auto tm = fixtures::tm();
  Word bad(1, static_cast<Letter>(7));
  CHECK_THROWS_AS(tm.system.morphism().apply(bad), InputError);
}

TEST_CASE("iterate") {
  auto tm = fixtures::tm();
  const Morphism& m = tm.system.morphism();
  CHECK(m.iterate(w(tm, "0"), 3) == w(tm, "01101001"));
  CHECK(m.iterate(w(tm, "0110"), 0) == w(tm, "0110"));
  CHECK_THROWS_AS(m.iterate(w(tm, "0"), 40, 1000), ResourceError);
}

TEST_CASE("fixed point prefix") {
  auto tm = fixtures::tm();
  CHECK(tm.system.fixed_point_prefix(10) == w(tm, "0110100110"));
  // Prefix stability.
  for (std::size_t k = 1; k < 40; ++k) {
    Word a = tm.system.fixed_point_prefix(k);
    Word b = tm.system.fixed_point_prefix(k + 1);
    CHECK(b.substr(0, k) == a);
  }
  auto bad = fixtures::periodic_ones();  // image(1) = 11 starts with 1: fine
  CHECK(bad.system.fixed_point_prefix(5) == w(bad, "11111"));
  auto notseed = d0l::parse_system("0 -> 10\n1 -> 01\naxiom 0\n");
  CHECK_THROWS_AS(notseed.system.fixed_point_prefix(4), PreconditionError);
}

TEST_CASE("homomorphism law on random words") {
  auto e = fixtures::sys_e();
  const Morphism& m = e.system.morphism();
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> len(0, 12);
  for (int round = 0; round < 300; ++round) {
    Word u, v;
    for (int i = len(rng); i > 0; --i) u.push_back(static_cast<Letter>(letter(rng)));
    for (int i = len(rng); i > 0; --i) v.push_back(static_cast<Letter>(letter(rng)));
    CHECK(m.apply(u + v) == m.apply(u) + m.apply(v));
  }
}

namespace {

// Independent boundedness oracle: iterate image lengths through letter
// counts (saturating); a letter is bounded iff its length sequence is the
// same at steps n .. 3n+2.
bool bounded_by_length_oracle(const Morphism& m, Letter b) {
  int n = m.alphabet_size();
  std::vector<unsigned long long> counts(n, 0);
  counts[static_cast<unsigned char>(b)] = 1;
  auto length = [&](const std::vector<unsigned long long>& c) {
    unsigned long long total = 0;
    for (int a = 0; a < n; ++a) {
      total += c[a] > 1'000'000 ? 1'000'000 : c[a];
    }
    return std::min<unsigned long long>(total, 1'000'000);
  };
  std::vector<unsigned long long> lengths;
  for (int step = 0; step <= 3 * n + 2; ++step) {
    lengths.push_back(length(counts));
    std::vector<unsigned long long> next(n, 0);
    for (int a = 0; a < n; ++a) {
      if (counts[a] == 0) continue;
      for (char c : m.image(static_cast<Letter>(a))) {
        auto& slot = next[static_cast<unsigned char>(c)];
        slot = std::min<unsigned long long>(slot + counts[a], 2'000'000);
      }
    }
    counts = std::move(next);
  }
  for (int step = n; step + 1 < static_cast<int>(lengths.size()); ++step) {
    if (lengths[step] != lengths[n]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("letter classification") {
  auto chacon = fixtures::chacon();
  LetterClassification cls = classify_letters(chacon.system.morphism());
  CHECK(cls.bounded(w(chacon, "1")[0]));
  CHECK(cls.growing(w(chacon, "0")[0]));

  auto tm = fixtures::tm();
  LetterClassification tmc = classify_letters(tm.system.morphism());
  CHECK(tmc.growing(0));
  CHECK(tmc.growing(1));

  auto r = fixtures::rep_010_22_11();
  LetterClassification rc = classify_letters(r.system.morphism());
  for (int a = 0; a < 3; ++a) CHECK(rc.growing(static_cast<Letter>(a)));
}

TEST_CASE("letter classification agrees with the length oracle") {
  for (const auto& spec : {fixtures::tm(), fixtures::chacon(), fixtures::sys_e(),
                           fixtures::sys_s(), fixtures::sys_p(), fixtures::pushy_001_1(),
                           fixtures::rep_001_11(), fixtures::rep_010_22_11()}) {
    const Morphism& m = spec.system.morphism();
    LetterClassification cls = classify_letters(m);
    for (int a = 0; a < m.alphabet_size(); ++a) {
      CHECK(cls.bounded(static_cast<Letter>(a)) ==
            bounded_by_length_oracle(m, static_cast<Letter>(a)));
    }
  }
}

TEST_CASE("prefix and suffix freeness") {
  auto s = fixtures::sys_s();
  CHECK(s.system.morphism().is_prefix_free());
  CHECK_FALSE(s.system.morphism().is_suffix_free());

  auto p = fixtures::sys_p();
  CHECK(p.system.morphism().is_prefix_free());
  CHECK(p.system.morphism().is_suffix_free());
}

TEST_CASE("primitivity") {
  CHECK(fixtures::sys_s().system.morphism().is_primitive());
  CHECK_FALSE(fixtures::chacon().system.morphism().is_primitive());
  CHECK_FALSE(fixtures::rep_01_11().system.morphism().is_primitive());
}

TEST_CASE("periodic points") {
  auto p = fixtures::sys_p();
  auto pts = p.system.morphism().periodic_points();
  auto has = [&](const std::string& seed, int period) {
    Letter l = w(p, seed)[0];
    return std::any_of(pts.begin(), pts.end(), [&](const PeriodicSeed& ps) {
      return ps.seed == l && ps.period == period;
    });
  };
  CHECK(pts.size() == 5);
  CHECK(has("1", 1));
  CHECK(has("4", 1));
  CHECK(has("5", 1));
  CHECK(has("2", 2));
  CHECK(has("3", 2));

  auto tm = fixtures::tm();
  CHECK(tm.system.morphism().periodic_points().size() == 2);

  auto s = fixtures::sys_s();
  auto spts = s.system.morphism().periodic_points();
  REQUIRE(spts.size() == 1);
  CHECK(spts[0].seed == w(s, "0")[0]);
  CHECK(spts[0].period == 1);

  // Reported seeds really restart their own image power.
  for (const PeriodicSeed& ps : pts) {
    Word it = p.system.morphism().iterate(Word(1, ps.seed), ps.period);
    CHECK(it.size() >= 2);
    CHECK(it[0] == ps.seed);
  }
}

TEST_CASE("occurring letters") {
  auto ones = fixtures::periodic_ones();
  LetterSet occ = occurring_letters(ones.system);
  CHECK(occ.size() == 1);
  CHECK(occ.contains(w(ones, "1")[0]));
}
