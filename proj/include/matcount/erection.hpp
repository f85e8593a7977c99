#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "matcount/matroid.hpp"

namespace matcount {

struct SetFamily {
  int n = 0;
  std::vector<SubsetWord> members;  // sorted, duplicate-free

  static SetFamily of(int n, std::vector<SubsetWord> members);
  friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

// {A + a : A in T, a outside A}
SetFamily expand(const SetFamily& t);

// Merges A, B into A|B while A&B lies in no member of prev. Scans pairs in
// ascending word order; the fixed point does not depend on the order.
SetFamily refine(const SetFamily& t, const SetFamily& prev);

// Same rule, but each step merges an offending pair drawn uniformly at random.
SetFamily refine_random_order(const SetFamily& t, const SetFamily& prev, std::uint64_t seed);

enum class CountDistribution {
  none,            // Random(T) is always empty
  geometric_half,  // P(c) = 2^-(c+1)
};

enum class SupersetRule {
  uniform_subset,  // member plus a uniform nonempty subset of its complement
  single_element,  // member plus one uniform element of its complement
};

// Parameters of the Random(T) step.
struct RandomPolicy {
  std::uint64_t seed = 0;
  CountDistribution count_distribution = CountDistribution::geometric_half;
  SupersetRule superset_rule = SupersetRule::uniform_subset;
  int max_per_level = 64;

  // "geometric:p=1/2,superset=uniform-subset,max=64"
  std::string describe() const;
};

// Bit-exact across platforms: uses only raw mt19937_64 output.
class PolicyRng {
 public:
  explicit PolicyRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

SetFamily random_supersets(const SetFamily& t, const RandomPolicy& policy, PolicyRng& rng);

// Runs the Expand / Random / Refine loop from F_0 = {empty} until the full set
// appears. random(F_i, i) supplies the injected sets at each level.
FlatLattice knuth_lattice(int n, const std::function<SetFamily(const SetFamily&, int)>& random);
FlatLattice knuth_random_lattice(int n, const RandomPolicy& policy);
Matroid knuth_random_matroid(int n, const RandomPolicy& policy);

struct TrivialErection {
  friend bool operator==(TrivialErection, TrivialErection) { return true; }
};
using FreeErectionResult = std::variant<Matroid, TrivialErection>;

// Refine(Expand(H), H) over the hyperplanes H of a loopless matroid.
FreeErectionResult free_erection(const Matroid& m);
bool is_trivial(const FreeErectionResult& result);

// Calls visit with the sorted new rank-r level of every nontrivial erection of
// the rank-r lattice (loops allowed). The erection's levels are the lattice's
// levels 0..r-1, then the visited level, then the full set.
void for_each_erection(const FlatLattice& lattice,
                       const std::function<void(std::span<const SubsetWord>)>& visit);

FlatLattice erect(const FlatLattice& lattice, std::span<const SubsetWord> new_level);

// All N of rank r+1 with truncate(N, r) == m, in search order.
std::vector<Matroid> erections(const Matroid& m);

// Whether n is an erection of m: truncate(n, rank(m)) == m.
bool is_erection(const Matroid& n, const Matroid& m);

}  // namespace matcount
