#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matcount/bigcomb.hpp"
#include "matcount/subset.hpp"

namespace matcount {

// Flats grouped by rank: levels[i] holds the rank-i flats, sorted ascending.
struct FlatLattice {
  int n = 0;
  std::vector<std::vector<SubsetWord>> levels;

  int rank() const { return static_cast<int>(levels.size()) - 1; }
  friend bool operator==(const FlatLattice&, const FlatLattice&) = default;
};

struct MatroidClass {
  bool loopless = false;
  bool simple = false;
  bool paving = false;
  bool uniform = false;
  // Largest k <= rank with every k-subset independent.
  int k_level = 0;
  friend bool operator==(const MatroidClass&, const MatroidClass&) = default;
};

class InvalidMatroid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by from_flats; identifies the offending level and flat.
class FlatAxiomError : public std::invalid_argument {
 public:
  FlatAxiomError(const std::string& what, int level, SubsetWord flat)
      : std::invalid_argument(what), level_(level), flat_(flat) {}
  int level() const { return level_; }
  SubsetWord flat() const { return flat_; }

 private:
  int level_;
  SubsetWord flat_;
};

// Immutable matroid given by its sorted basis family.
class Matroid {
 public:
  // Validates popcounts, duplicates and basis exchange.
  static Matroid from_bases(int n, std::vector<SubsetWord> bases);
  // Caller guarantees a sorted, valid basis family of popcount r.
  static Matroid from_sorted_bases_unchecked(int n, int r, std::vector<SubsetWord> bases);
  static Matroid uniform(int r, int n);

  int ground_size() const { return n_; }
  int rank() const { return r_; }
  SubsetWord ground_set() const { return full_set(n_); }
  const std::vector<SubsetWord>& bases() const { return bases_; }
  bool is_basis(SubsetWord w) const;

  friend bool operator==(const Matroid&, const Matroid&) = default;
  friend auto operator<=>(const Matroid&, const Matroid&) = default;

 private:
  Matroid(int n, int r, std::vector<SubsetWord> bases) : n_(n), r_(r), bases_(std::move(bases)) {}
  int n_ = 0;
  int r_ = 0;
  std::vector<SubsetWord> bases_;
};

// Rank of every subset of the ground set, for repeated queries on one matroid.
class RankTable {
 public:
  explicit RankTable(const Matroid& m);
  int rank(SubsetWord a) const { return ranks_[a]; }
  bool independent(SubsetWord a) const { return ranks_[a] == std::popcount(a); }
  SubsetWord closure(SubsetWord a) const;
  bool is_flat(SubsetWord a) const;
  int ground_size() const { return n_; }

 private:
  int n_;
  std::vector<std::uint8_t> ranks_;
};

bool validate_bases(int n, std::span<const SubsetWord> family);

bool independent(const Matroid& m, SubsetWord a);
// Greedy over ascending elements.
int subset_rank(const Matroid& m, SubsetWord a);
SubsetWord closure(const Matroid& m, SubsetWord a);
std::vector<SubsetWord> flats_of_rank(const Matroid& m, int k);
FlatLattice flat_lattice(const Matroid& m);
BigCount whitney(const Matroid& m, int k);

Matroid dual(const Matroid& m);
// Re-indexed onto {1..|x|} preserving element order.
Matroid restriction(const Matroid& m, SubsetWord x);
Matroid truncate(const Matroid& m, int k);

MatroidClass classify(const Matroid& m);
MatroidClass classify(const FlatLattice& lattice);
int k_level(const FlatLattice& lattice);

// Checks the cover-partition axiom and the level invariants; throws FlatAxiomError.
void check_flat_axioms(const FlatLattice& lattice);
Matroid from_flats(const FlatLattice& lattice);
// Bases of a lattice already known to be geometric (no validation).
std::vector<SubsetWord> bases_from_flats_unchecked(const FlatLattice& lattice);

}  // namespace matcount
