#include <doctest.h>

#include <set>

#include "matcount/enumerate.hpp"
#include "matcount/erection.hpp"
#include "oracles.hpp"

using namespace matcount;

namespace {

SubsetWord w(std::initializer_list<int> elems) { return word_from_elements(std::vector<int>(elems)); }

SetFamily singletons(int n) {
  std::vector<SubsetWord> m;
  for (int e = 1; e <= n; ++e) m.push_back(element_bit(e));
  return SetFamily::of(n, m);
}

// truncate via the rank oracle: bases are the independent k-sets
std::vector<SubsetWord> oracle_truncate(int n, const std::vector<SubsetWord>& bases, int k) {
  std::vector<SubsetWord> out;
  for (SubsetWord a : oracle::all_subsets_of_size(n, k))
    if (oracle::rank(bases, a) == k) out.push_back(a);
  return out;
}

}  // namespace

TEST_CASE("expand") {
  CHECK(expand(SetFamily::of(3, {w({1}), w({2})})).members ==
        std::vector<SubsetWord>{w({1, 2}), w({1, 3}), w({2, 3})});
  CHECK(expand(SetFamily::of(4, {full_set(4)})).members.empty());
  const auto lines = SetFamily::of(7, oracle::fano_line_words());
  const auto e = expand(lines);
  CHECK(e.members.size() == 28);
  for (SubsetWord x : e.members) CHECK(popcount(x) == 4);
}

TEST_CASE("refine") {
  const auto t = SetFamily::of(4, {w({1, 2, 3}), w({1, 2, 4})});
  CHECK(refine(t, singletons(4)).members == std::vector<SubsetWord>{w({1, 2, 3, 4})});
  const auto fixed = SetFamily::of(4, {w({1, 2}), w({1, 3}), w({2, 3, 4})});
  CHECK(refine(fixed, singletons(4)) == fixed);
  const auto lines = SetFamily::of(7, oracle::fano_line_words());
  CHECK(refine(expand(lines), lines).members == std::vector<SubsetWord>{full_set(7)});
}

TEST_CASE("refine is confluent on random inputs") {
  PolicyRng rng(5);
  for (int n = 3; n <= 7; ++n)
    for (int inst = 0; inst < 40; ++inst) {
      RandomPolicy p;
      p.seed = rng.next();
      const FlatLattice lat = knuth_random_lattice(n, p);
      const int level = static_cast<int>(rng.below(static_cast<std::uint64_t>(lat.rank())));
      const SetFamily prev{n, lat.levels[level]};
      SetFamily t = expand(prev);
      const SetFamily extra = random_supersets(prev, p, rng);
      t.members.insert(t.members.end(), extra.members.begin(), extra.members.end());
      t = SetFamily::of(n, t.members);
      const SetFamily expected = refine(t, prev);
      for (int order = 0; order < 5; ++order) REQUIRE(refine_random_order(t, prev, rng.next()) == expected);
    }
}

TEST_CASE("random matroids") {
  RandomPolicy none;
  none.count_distribution = CountDistribution::none;
  CHECK(knuth_random_matroid(3, none) == Matroid::uniform(3, 3));
  for (int n = 1; n <= 7; ++n)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomPolicy p;
      p.seed = seed;
      p.superset_rule = seed % 2 ? SupersetRule::single_element : SupersetRule::uniform_subset;
      const FlatLattice lat = knuth_random_lattice(n, p);
      REQUIRE_NOTHROW(check_flat_axioms(lat));
      const Matroid m = from_flats(lat);
      REQUIRE(validate_bases(n, m.bases()));
      REQUIRE(flat_lattice(m) == lat);
      REQUIRE(classify(m).loopless);
      REQUIRE(knuth_random_matroid(n, p) == m);
    }
  RandomPolicy p;
  p.seed = 42;
  CHECK(p.describe() == "geometric:p=1/2,superset=uniform-subset,max=64");
}

TEST_CASE("policy rng") {
  PolicyRng a(9);
  PolicyRng b(9);
  for (int i = 0; i < 100; ++i) {
    const auto v = a.below(7);
    CHECK(v < 7);
    CHECK(v == b.below(7));
  }
  CHECK_THROWS(a.below(0));
}

TEST_CASE("every loopless matroid with n <= 4 is reached by targeted injection") {
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= n; ++r)
      for (const Matroid& target : enumerate_matroids(n, r, 1)) {
        const FlatLattice want = flat_lattice(target);
        const FlatLattice got = knuth_lattice(n, [&](const SetFamily&, int i) {
          return SetFamily{n, want.levels[std::min(i + 1, want.rank())]};
        });
        REQUIRE(got == want);
      }
}

TEST_CASE("free erection") {
  CHECK(std::get<Matroid>(free_erection(Matroid::uniform(2, 3))) == Matroid::uniform(3, 3));
  CHECK(std::get<Matroid>(free_erection(Matroid::uniform(3, 4))) == Matroid::uniform(4, 4));
  CHECK(is_trivial(free_erection(oracle::fano())));
  CHECK(is_trivial(free_erection(Matroid::uniform(3, 3))));
  CHECK_THROWS(free_erection(oracle::from_elements(3, {{1}, {2}})));
}

TEST_CASE("erections") {
  const auto u23 = erections(Matroid::uniform(2, 3));
  REQUIRE(u23.size() == 1);
  CHECK(u23.front() == Matroid::uniform(3, 3));
  CHECK(erections(oracle::fano()).empty());
  CHECK_THROWS(erections(Matroid::uniform(3, 3)));
}

TEST_CASE("erections agree with the brute-force oracle, n <= 5") {
  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r < n; ++r) {
      const auto above = oracle::all_matroids(n, r + 1);
      for (const Matroid& m : enumerate_matroids(n, r, 1)) {
        std::set<std::vector<SubsetWord>> expected;
        for (const auto& b : above)
          if (oracle_truncate(n, b, r) == m.bases()) expected.insert(b);
        std::set<std::vector<SubsetWord>> got;
        for (const auto& e : erections(m)) got.insert(e.bases());
        REQUIRE(got == expected);
      }
    }
}

TEST_CASE("erections truncate back, and the free erection is one of them, n <= 6") {
  for (int n = 4; n <= 6; ++n)
    for (const Matroid& m : enumerate_matroids(n, 3, 2)) {
      const auto ups = erections(m);
      for (const auto& up : ups) {
        REQUIRE(truncate(up, 3) == m);
        REQUIRE(is_erection(up, m));
      }
      const auto free = free_erection(m);
      if (is_trivial(free)) {
        REQUIRE(ups.empty());
      } else {
        REQUIRE(std::find(ups.begin(), ups.end(), std::get<Matroid>(free)) != ups.end());
        const auto w3 = whitney(std::get<Matroid>(free), 3);
        for (const auto& up : ups) REQUIRE(whitney(up, 3) <= w3);
      }
    }
}

TEST_CASE("is_erection") {
  CHECK(is_erection(Matroid::uniform(3, 3), Matroid::uniform(2, 3)));
  CHECK_FALSE(is_erection(Matroid::uniform(3, 4), oracle::from_elements(4, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}})));
  CHECK_THROWS(is_erection(Matroid::uniform(4, 5), Matroid::uniform(2, 5)));
  for (int r = 1; r <= 6; ++r)
    for (const Matroid& n : enumerate_matroids(6, r, 0)) REQUIRE(is_erection(n, truncate(n, r - 1)));
}
