#include "matcount/matroid.hpp"

#include <algorithm>

namespace matcount {
namespace {

void check_ground_size(int n) {
  if (n < 0 || n > kMaxGroundSet)
    throw InvalidMatroid("ground set size " + std::to_string(n) + " outside [0, 16]");
}

std::vector<std::uint8_t> basis_bitmap(int n, std::span<const SubsetWord> family) {
  std::vector<std::uint8_t> member(std::size_t{1} << n, 0);
  for (SubsetWord b : family) member[b] = 1;
  return member;
}

// Maps the elements of x, in ascending order, onto bits 0..|x|-1.
SubsetWord compress(SubsetWord w, SubsetWord x) {
  SubsetWord out = 0;
  int pos = 0;
  for (SubsetWord rest = x; rest; rest &= rest - 1, ++pos)
    if (w & lowest_bit(rest)) out |= SubsetWord{1} << pos;
  return out;
}

}  // namespace

Matroid Matroid::from_bases(int n, std::vector<SubsetWord> bases) {
  check_ground_size(n);
  if (bases.empty()) throw InvalidMatroid("empty basis family");
  std::sort(bases.begin(), bases.end());
  if (std::adjacent_find(bases.begin(), bases.end()) != bases.end())
    throw InvalidMatroid("duplicate basis");
  for (SubsetWord b : bases)
    if (!is_subset(b, full_set(n))) throw InvalidMatroid("basis outside ground set");
  const int r = popcount(bases.front());
  for (SubsetWord b : bases)
    if (popcount(b) != r) throw InvalidMatroid("bases of unequal size");
  if (!validate_bases(n, bases)) throw InvalidMatroid("basis exchange fails");
  return Matroid(n, r, std::move(bases));
}

Matroid Matroid::from_sorted_bases_unchecked(int n, int r, std::vector<SubsetWord> bases) {
  return Matroid(n, r, std::move(bases));
}

Matroid Matroid::uniform(int r, int n) {
  check_ground_size(n);
  if (r < 0 || r > n) throw InvalidMatroid("uniform matroid needs 0 <= r <= n");
  return Matroid(n, r, k_subsets(n, r));
}

bool Matroid::is_basis(SubsetWord w) const {
  return std::binary_search(bases_.begin(), bases_.end(), w);
}

RankTable::RankTable(const Matroid& m) : n_(m.ground_size()), ranks_(std::size_t{1} << n_, 0) {
  std::vector<std::uint8_t> indep(ranks_.size(), 0);
  for (SubsetWord b : m.bases()) {
    // every subset of a basis
    SubsetWord s = b;
    while (true) {
      indep[s] = 1;
      if (s == 0) break;
      s = (s - 1) & b;
    }
  }
  for (std::size_t a = 1; a < ranks_.size(); ++a) {
    if (indep[a]) {
      ranks_[a] = static_cast<std::uint8_t>(std::popcount(a));
      continue;
    }
    std::uint8_t best = 0;
    for (SubsetWord rest = static_cast<SubsetWord>(a); rest; rest &= rest - 1)
      best = std::max(best, ranks_[a & ~lowest_bit(rest)]);
    ranks_[a] = best;
  }
}

SubsetWord RankTable::closure(SubsetWord a) const {
  const int ra = rank(a);
  SubsetWord out = a;
  for (SubsetWord rest = full_set(n_) & ~a; rest; rest &= rest - 1)
    if (rank(a | lowest_bit(rest)) == ra) out |= lowest_bit(rest);
  return out;
}

bool RankTable::is_flat(SubsetWord a) const { return closure(a) == a; }

bool validate_bases(int n, std::span<const SubsetWord> family) {
  if (family.empty() || n < 0 || n > kMaxGroundSet) return false;
  const int r = popcount(family.front());
  for (SubsetWord b : family)
    if (popcount(b) != r || !is_subset(b, full_set(n))) return false;
  const auto member = basis_bitmap(n, family);
  for (SubsetWord x : family) {
    for (SubsetWord y : family) {
      for (SubsetWord out = x & ~y; out; out &= out - 1) {
        const SubsetWord without = x & ~lowest_bit(out);
        bool found = false;
        for (SubsetWord in = y & ~x; in && !found; in &= in - 1)
          found = member[without | lowest_bit(in)] != 0;
        if (!found) return false;
      }
    }
  }
  return true;
}

bool independent(const Matroid& m, SubsetWord a) {
  return std::any_of(m.bases().begin(), m.bases().end(),
                     [a](SubsetWord b) { return is_subset(a, b); });
}

int subset_rank(const Matroid& m, SubsetWord a) {
  SubsetWord chosen = 0;
  for (SubsetWord rest = a; rest; rest &= rest - 1)
    if (independent(m, chosen | lowest_bit(rest))) chosen |= lowest_bit(rest);
  return popcount(chosen);
}

SubsetWord closure(const Matroid& m, SubsetWord a) {
  const int ra = subset_rank(m, a);
  SubsetWord out = a;
  for (SubsetWord rest = m.ground_set() & ~a; rest; rest &= rest - 1)
    if (subset_rank(m, a | lowest_bit(rest)) == ra) out |= lowest_bit(rest);
  return out;
}

FlatLattice flat_lattice(const Matroid& m) {
  const RankTable table(m);
  FlatLattice lattice{m.ground_size(), std::vector<std::vector<SubsetWord>>(m.rank() + 1)};
  const SubsetWord ground = m.ground_set();
  for (SubsetWord a = 0;; ++a) {
    if (table.is_flat(a)) lattice.levels[table.rank(a)].push_back(a);
    if (a == ground) break;
  }
  return lattice;
}

std::vector<SubsetWord> flats_of_rank(const Matroid& m, int k) {
  if (k < 0 || k > m.rank()) throw std::out_of_range("flats_of_rank: k outside [0, rank]");
  return flat_lattice(m).levels[k];
}

BigCount whitney(const Matroid& m, int k) { return BigCount(flats_of_rank(m, k).size()); }

Matroid dual(const Matroid& m) {
  std::vector<SubsetWord> comp;
  comp.reserve(m.bases().size());
  for (SubsetWord b : m.bases()) comp.push_back(m.ground_set() & ~b);
  std::sort(comp.begin(), comp.end());
  return Matroid::from_sorted_bases_unchecked(m.ground_size(), m.ground_size() - m.rank(),
                                              std::move(comp));
}

Matroid restriction(const Matroid& m, SubsetWord x) {
  if (!is_subset(x, m.ground_set())) throw std::invalid_argument("restriction: set outside ground set");
  const RankTable table(m);
  const int k = table.rank(x);
  std::vector<SubsetWord> bases;
  SubsetWord s = x;
  while (true) {
    if (popcount(s) == k && table.independent(s)) bases.push_back(compress(s, x));
    if (s == 0) break;
    s = (s - 1) & x;
  }
  std::sort(bases.begin(), bases.end());
  return Matroid::from_sorted_bases_unchecked(popcount(x), k, std::move(bases));
}

Matroid truncate(const Matroid& m, int k) {
  if (k < 0 || k > m.rank()) throw std::out_of_range("truncate: k outside [0, rank]");
  if (k == m.rank()) return m;
  std::vector<SubsetWord> bases;
  for (SubsetWord b : m.bases()) {
    SubsetWord s = b;
    while (true) {
      if (popcount(s) == k) bases.push_back(s);
      if (s == 0) break;
      s = (s - 1) & b;
    }
  }
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  return Matroid::from_sorted_bases_unchecked(m.ground_size(), k, std::move(bases));
}

int k_level(const FlatLattice& lattice) {
  const int r = lattice.rank();
  for (int i = 0; i < r; ++i)
    for (SubsetWord f : lattice.levels[i])
      if (popcount(f) > i) return i;
  return r;
}

MatroidClass classify(const FlatLattice& lattice) {
  MatroidClass c;
  const int r = lattice.rank();
  c.k_level = k_level(lattice);
  c.loopless = lattice.levels[0].front() == 0;
  c.simple = c.loopless;
  if (c.simple && r >= 1)
    for (SubsetWord f : lattice.levels[1]) c.simple = c.simple && popcount(f) == 1;
  c.paving = c.k_level >= r - 1;
  c.uniform = c.k_level == r;
  return c;
}

MatroidClass classify(const Matroid& m) { return classify(flat_lattice(m)); }

void check_flat_axioms(const FlatLattice& lattice) {
  const int n = lattice.n;
  if (n < 0 || n > kMaxGroundSet) throw FlatAxiomError("ground set size outside [0, 16]", -1, 0);
  if (lattice.levels.empty()) throw FlatAxiomError("lattice has no levels", -1, 0);
  const SubsetWord ground = full_set(n);
  const int r = lattice.rank();
  if (lattice.levels[r] != std::vector<SubsetWord>{ground})
    throw FlatAxiomError("top level must be the full set alone", r, ground);
  if (lattice.levels[0].size() != 1) throw FlatAxiomError("level 0 must hold exactly one flat", 0, 0);
  for (int i = 0; i <= r; ++i) {
    const auto& level = lattice.levels[i];
    for (std::size_t a = 0; a < level.size(); ++a) {
      if (!is_subset(level[a], ground)) throw FlatAxiomError("flat outside ground set", i, level[a]);
      if (a > 0 && level[a - 1] >= level[a])
        throw FlatAxiomError("level not sorted or has duplicates", i, level[a]);
      for (std::size_t b = 0; b < a; ++b)
        if (is_subset(level[a], level[b]) || is_subset(level[b], level[a]))
          throw FlatAxiomError("comparable flats within a level", i, level[a]);
    }
  }
  for (int i = 0; i < r; ++i) {
    for (SubsetWord f : lattice.levels[i]) {
      SubsetWord covered = 0;
      for (SubsetWord x : lattice.levels[i + 1]) {
        if (!is_subset(f, x)) continue;
        if (x == f) throw FlatAxiomError("flat repeated across levels", i + 1, x);
        if (covered & (x & ~f)) throw FlatAxiomError("covers of a flat overlap", i, f);
        covered |= x & ~f;
      }
      if (covered != (ground & ~f))
        throw FlatAxiomError("covers of a flat do not partition its complement", i, f);
    }
    for (SubsetWord x : lattice.levels[i + 1]) {
      const bool covers_something =
          std::any_of(lattice.levels[i].begin(), lattice.levels[i].end(),
                      [x](SubsetWord f) { return is_proper_subset(f, x); });
      if (!covers_something) throw FlatAxiomError("flat covers no flat of the level below", i + 1, x);
    }
  }
}

std::vector<SubsetWord> bases_from_flats_unchecked(const FlatLattice& lattice) {
  const int r = lattice.rank();
  if (r == 0) return {0};
  const auto& hyperplanes = lattice.levels[r - 1];
  std::vector<SubsetWord> bases;
  for (SubsetWord a : k_subsets(lattice.n, r)) {
    const bool spans = std::none_of(hyperplanes.begin(), hyperplanes.end(),
                                    [a](SubsetWord h) { return is_subset(a, h); });
    if (spans) bases.push_back(a);
  }
  return bases;
}

Matroid from_flats(const FlatLattice& lattice) {
  check_flat_axioms(lattice);
  auto bases = bases_from_flats_unchecked(lattice);
  if (bases.empty() || !validate_bases(lattice.n, bases))
    throw FlatAxiomError("derived family fails basis exchange", lattice.rank() - 1, 0);
  auto m = Matroid::from_sorted_bases_unchecked(lattice.n, lattice.rank(), std::move(bases));
  const FlatLattice back = flat_lattice(m);
  if (back.rank() != lattice.rank())
    throw FlatAxiomError("derived matroid has a different rank", lattice.rank(), 0);
  for (int i = 0; i <= lattice.rank(); ++i) {
    if (back.levels[i] == lattice.levels[i]) continue;
    std::vector<SubsetWord> diff;
    std::set_symmetric_difference(back.levels[i].begin(), back.levels[i].end(),
                                  lattice.levels[i].begin(), lattice.levels[i].end(),
                                  std::back_inserter(diff));
    throw FlatAxiomError("levels are not the flats of any matroid", i, diff.front());
  }
  return m;
}

}  // namespace matcount
