#include "matcount/erection.hpp"

#include <algorithm>
#include <stdexcept>

namespace matcount {
namespace {

bool inside_some(SubsetWord x, const std::vector<SubsetWord>& family) {
  return std::any_of(family.begin(), family.end(), [x](SubsetWord c) { return is_subset(x, c); });
}

void normalize(std::vector<SubsetWord>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void merge_pair(std::vector<SubsetWord>& t, std::size_t i, std::size_t j) {
  const SubsetWord joined = t[i] | t[j];
  t.erase(t.begin() + static_cast<std::ptrdiff_t>(j));
  t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
  t.push_back(joined);
  normalize(t);
}

// Spreads the low bits of value over the set bits of mask.
SubsetWord deposit(std::uint64_t value, SubsetWord mask) {
  SubsetWord out = 0;
  for (SubsetWord rest = mask; rest; rest &= rest - 1, value >>= 1)
    if (value & 1) out |= lowest_bit(rest);
  return out;
}

class ErectionSearch {
 public:
  ErectionSearch(const FlatLattice& lattice,
                 const std::function<void(std::span<const SubsetWord>)>& visit)
      : ground_(full_set(lattice.n)), visit_(visit) {
    const int r = lattice.rank();
    lower_ = lattice.levels[r - 1];
    std::vector<std::uint8_t> low_rank(std::size_t{1} << lattice.n, 0);
    if (r >= 2) {
      for (SubsetWord k : lattice.levels[r - 2]) {
        SubsetWord s = k;
        while (true) {
          low_rank[s] = 1;
          if (s == 0) break;
          s = (s - 1) & k;
        }
      }
    }
    // A new hyperplane X must contain every rank-(r-1) flat it meets in rank r-1.
    for (SubsetWord x = 0; x < ground_; ++x) {
      std::vector<int> inside;
      bool valid = true;
      for (std::size_t j = 0; j < lower_.size() && valid; ++j) {
        if (is_subset(lower_[j], x)) {
          if (lower_[j] != x) inside.push_back(static_cast<int>(j));
          else valid = false;
        } else if (!low_rank[lower_[j] & x]) {
          valid = false;
        }
      }
      if (valid && !inside.empty()) candidates_.push_back({x, std::move(inside)});
    }
    covered_ = lower_;
  }

  void run() { descend(); }

 private:
  struct Candidate {
    SubsetWord set;
    std::vector<int> contains;
  };

  bool compatible(const Candidate& c) const {
    for (int j : c.contains)
      if ((covered_[j] & c.set) != lower_[j]) return false;
    return true;
  }

  void descend() {
    std::size_t open = 0;
    while (open < covered_.size() && covered_[open] == ground_) ++open;
    if (open == covered_.size()) {
      std::vector<SubsetWord> level = chosen_;
      std::sort(level.begin(), level.end());
      visit_(level);
      return;
    }
    const SubsetWord pair = lower_[open] | lowest_bit(ground_ & ~covered_[open]);
    for (const auto& c : candidates_) {
      if (!is_subset(pair, c.set) || !compatible(c)) continue;
      for (int j : c.contains) covered_[j] |= c.set;
      chosen_.push_back(c.set);
      descend();
      chosen_.pop_back();
      for (int j : c.contains) covered_[j] &= ~(c.set & ~lower_[j]);
    }
  }

  SubsetWord ground_;
  const std::function<void(std::span<const SubsetWord>)>& visit_;
  std::vector<SubsetWord> lower_;
  std::vector<SubsetWord> covered_;
  std::vector<Candidate> candidates_;
  std::vector<SubsetWord> chosen_;
};

}  // namespace

SetFamily SetFamily::of(int n, std::vector<SubsetWord> members) {
  normalize(members);
  for (SubsetWord m : members)
    if (!is_subset(m, full_set(n))) throw std::invalid_argument("set family member outside ground set");
  return SetFamily{n, std::move(members)};
}

SetFamily expand(const SetFamily& t) {
  std::vector<SubsetWord> out;
  const SubsetWord ground = full_set(t.n);
  for (SubsetWord a : t.members)
    for (SubsetWord rest = ground & ~a; rest; rest &= rest - 1) out.push_back(a | lowest_bit(rest));
  normalize(out);
  return SetFamily{t.n, std::move(out)};
}

SetFamily refine(const SetFamily& t, const SetFamily& prev) {
  std::vector<SubsetWord> cur = t.members;
  normalize(cur);
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < cur.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < cur.size() && !merged; ++j)
        if (!inside_some(cur[i] & cur[j], prev.members)) {
          merge_pair(cur, i, j);
          merged = true;
        }
  }
  return SetFamily{t.n, std::move(cur)};
}

SetFamily refine_random_order(const SetFamily& t, const SetFamily& prev, std::uint64_t seed) {
  PolicyRng rng(seed);
  std::vector<SubsetWord> cur = t.members;
  normalize(cur);
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> offending;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (!inside_some(cur[i] & cur[j], prev.members)) offending.emplace_back(i, j);
    if (offending.empty()) break;
    const auto [i, j] = offending[rng.below(offending.size())];
    merge_pair(cur, i, j);
  }
  return SetFamily{t.n, std::move(cur)};
}

std::string RandomPolicy::describe() const {
  std::string s = count_distribution == CountDistribution::none ? "none" : "geometric:p=1/2";
  s += superset_rule == SupersetRule::uniform_subset ? ",superset=uniform-subset"
                                                     : ",superset=single-element";
  s += ",max=" + std::to_string(max_per_level);
  return s;
}

std::uint64_t PolicyRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("PolicyRng::below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % bound;
}

SetFamily random_supersets(const SetFamily& t, const RandomPolicy& policy, PolicyRng& rng) {
  std::vector<SubsetWord> out;
  if (policy.count_distribution == CountDistribution::none || t.members.empty())
    return SetFamily{t.n, {}};
  int count = 0;
  while (count < policy.max_per_level && rng.coin()) ++count;
  const SubsetWord ground = full_set(t.n);
  for (int i = 0; i < count; ++i) {
    const SubsetWord base = t.members[rng.below(t.members.size())];
    const SubsetWord outside = ground & ~base;
    if (outside == 0) continue;
    const int k = popcount(outside);
    SubsetWord extra = 0;
    if (policy.superset_rule == SupersetRule::uniform_subset) {
      extra = deposit(1 + rng.below((std::uint64_t{1} << k) - 1), outside);
    } else {
      extra = deposit(std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(k)), outside);
    }
    out.push_back(base | extra);
  }
  normalize(out);
  return SetFamily{t.n, std::move(out)};
}

FlatLattice knuth_lattice(int n, const std::function<SetFamily(const SetFamily&, int)>& random) {
  if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("knuth_random_matroid: n outside [1, 16]");
  const SubsetWord ground = full_set(n);
  FlatLattice lattice{n, {{0}}};
  while (true) {
    const SetFamily current{n, lattice.levels.back()};
    SetFamily candidates = expand(current);
    const SetFamily injected = random(current, lattice.rank());
    candidates.members.insert(candidates.members.end(), injected.members.begin(),
                              injected.members.end());
    normalize(candidates.members);
    SetFamily next = refine(candidates, current);
    if (std::binary_search(next.members.begin(), next.members.end(), ground)) {
      lattice.levels.push_back({ground});
      return lattice;
    }
    lattice.levels.push_back(std::move(next.members));
  }
}

FlatLattice knuth_random_lattice(int n, const RandomPolicy& policy) {
  PolicyRng rng(policy.seed);
  return knuth_lattice(n, [&](const SetFamily& current, int) { return random_supersets(current, policy, rng); });
}

Matroid knuth_random_matroid(int n, const RandomPolicy& policy) {
  return from_flats(knuth_random_lattice(n, policy));
}

FreeErectionResult free_erection(const Matroid& m) {
  const FlatLattice lattice = flat_lattice(m);
  if (lattice.levels[0].front() != 0) throw std::invalid_argument("free_erection: matroid has loops");
  const int r = lattice.rank();
  if (r == 0) return TrivialErection{};
  const SetFamily hyperplanes{lattice.n, lattice.levels[r - 1]};
  const SetFamily next = refine(expand(hyperplanes), hyperplanes);
  if (next.members == std::vector<SubsetWord>{m.ground_set()}) return TrivialErection{};
  return from_flats(erect(lattice, next.members));
}

bool is_trivial(const FreeErectionResult& result) {
  return std::holds_alternative<TrivialErection>(result);
}

FlatLattice erect(const FlatLattice& lattice, std::span<const SubsetWord> new_level) {
  FlatLattice out{lattice.n, {}};
  out.levels.reserve(lattice.levels.size() + 1);
  out.levels.assign(lattice.levels.begin(), lattice.levels.end() - 1);
  out.levels.emplace_back(new_level.begin(), new_level.end());
  out.levels.push_back({full_set(lattice.n)});
  return out;
}

void for_each_erection(const FlatLattice& lattice,
                       const std::function<void(std::span<const SubsetWord>)>& visit) {
  const SubsetWord ground = full_set(lattice.n);
  if (lattice.rank() == 0) {
    // rank 1: any proper subset may be the loop set
    for (SubsetWord loops = 0; loops < ground; ++loops) {
      const SubsetWord level[1] = {loops};
      visit(level);
    }
    return;
  }
  ErectionSearch(lattice, visit).run();
}

std::vector<Matroid> erections(const Matroid& m) {
  if (m.rank() >= m.ground_size()) throw std::invalid_argument("erections: rank must be below n");
  const FlatLattice lattice = flat_lattice(m);
  if (lattice.levels[0].front() != 0) throw std::invalid_argument("erections: matroid has loops");
  std::vector<Matroid> out;
  for_each_erection(lattice, [&](std::span<const SubsetWord> level) {
    const FlatLattice up = erect(lattice, level);
    out.push_back(Matroid::from_sorted_bases_unchecked(up.n, up.rank(), bases_from_flats_unchecked(up)));
  });
  return out;
}

bool is_erection(const Matroid& n, const Matroid& m) {
  if (n.ground_size() != m.ground_size() || n.rank() != m.rank() + 1)
    throw std::invalid_argument("is_erection: needs same ground set and a rank gap of one");
  return truncate(n, m.rank()) == m;
}

}  // namespace matcount
