#include "matcount/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace matcount {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Perm = std::array<int, kMaxGroundSet>;

std::vector<SubsetWord> apply_labeling(const std::vector<SubsetWord>& bases, const int* labeling, int n) {
  std::vector<SubsetWord> out;
  out.reserve(bases.size());
  for (SubsetWord b : bases) {
    SubsetWord w = 0;
    for (int e = 0; e < n; ++e)
      if (b >> e & 1) w |= SubsetWord{1} << labeling[e];
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

class Labeler {
 public:
  Labeler(const FlatLattice& lattice, std::vector<SubsetWord> bases)
      : n_(lattice.n), r_(lattice.rank()), bases_(std::move(bases)), element_flats_(n_) {
    for (int rank = 0; rank <= r_; ++rank)
      for (SubsetWord f : lattice.levels[rank]) {
        const int id = static_cast<int>(flats_.size());
        flats_.push_back({rank, f});
        for (SubsetWord rest = f; rest; rest &= rest - 1)
          element_flats_[std::countr_zero(rest)].push_back(id);
      }
  }

  Canonicalization run() {
    std::vector<int> colors(n_, 0);
    refine(colors);
    std::vector<int> prefix;
    search(colors, prefix, true);

    Canonicalization out;
    out.form = CanonicalForm{n_, r_, best_code_};
    out.labeling.assign(best_lab_.begin(), best_lab_.begin() + n_);
    // |Aut| = product of orbit sizes along the first path.
    std::uint64_t order = 1;
    for (std::size_t d = 0; d < first_cells_.size(); ++d) {
      std::vector<int> fixed(first_path_.begin(), first_path_.begin() + static_cast<std::ptrdiff_t>(d));
      UnionFind orbits = orbits_fixing(fixed);
      const int root = orbits.find(first_path_[d]);
      std::uint64_t size = 0;
      for (int w : first_cells_[d]) size += orbits.find(w) == root ? 1 : 0;
      order *= size;
    }
    out.automorphisms = order;
    return out;
  }

 private:
  struct Flat {
    int rank;
    SubsetWord set;
  };

  int count_colors(const std::vector<int>& colors) const {
    return n_ == 0 ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  // Equitable-style refinement on the element/flat incidence. Hash collisions
  // only weaken the split; the result stays a function of the isomorphism class.
  void refine(std::vector<int>& colors) const {
    int cells = count_colors(colors);
    std::vector<std::uint64_t> flat_hash(flats_.size());
    std::vector<std::pair<std::pair<int, std::uint64_t>, int>> keyed(n_);
    while (true) {
      for (std::size_t f = 0; f < flats_.size(); ++f) {
        std::uint64_t h = mix(0x1000u + static_cast<std::uint64_t>(flats_[f].rank));
        for (SubsetWord rest = flats_[f].set; rest; rest &= rest - 1)
          h += mix(static_cast<std::uint64_t>(colors[std::countr_zero(rest)]) + 0x77);
        flat_hash[f] = mix(h);
      }
      for (int e = 0; e < n_; ++e) {
        std::uint64_t h = 0;
        for (int f : element_flats_[e]) h += mix(flat_hash[f]);
        keyed[e] = {{colors[e], h}, e};
      }
      std::vector<std::pair<int, std::uint64_t>> keys;
      keys.reserve(n_);
      for (const auto& k : keyed) keys.push_back(k.first);
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      for (int e = 0; e < n_; ++e)
        colors[e] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), keyed[e].first) - keys.begin());
      const int next = static_cast<int>(keys.size());
      if (next == cells) return;
      cells = next;
    }
  }

  UnionFind orbits_fixing(const std::vector<int>& fixed) const {
    UnionFind uf(n_);
    for (const Perm& g : generators_) {
      const bool fixes = std::all_of(fixed.begin(), fixed.end(), [&](int p) { return g[p] == p; });
      if (!fixes) continue;
      for (int e = 0; e < n_; ++e) uf.unite(e, g[e]);
    }
    return uf;
  }

  void leaf(const std::vector<int>& colors) {
    Perm lab{};
    for (int e = 0; e < n_; ++e) lab[e] = colors[e];
    auto code = apply_labeling(bases_, lab.data(), n_);
    if (!have_first_) {
      have_first_ = true;
      first_code_ = code;
      first_lab_ = lab;
      best_code_ = std::move(code);
      best_lab_ = lab;
      return;
    }
    if (code == first_code_) {
      add_generator(first_lab_, lab);
    } else if (code == best_code_) {
      add_generator(best_lab_, lab);
    } else if (code < best_code_) {
      best_code_ = std::move(code);
      best_lab_ = lab;
    }
  }

  // g(e) = target^-1(lab(e)) maps the basis family onto itself.
  void add_generator(const Perm& target, const Perm& lab) {
    Perm inverse{};
    for (int e = 0; e < n_; ++e) inverse[target[e]] = e;
    Perm g{};
    bool identity = true;
    for (int e = 0; e < n_; ++e) {
      g[e] = inverse[lab[e]];
      identity = identity && g[e] == e;
    }
    if (!identity) generators_.push_back(g);
  }

  void search(const std::vector<int>& colors, std::vector<int>& prefix, bool first_path) {
    const int cells = count_colors(colors);
    if (cells == n_) {
      leaf(colors);
      return;
    }
    std::vector<int> size(cells, 0);
    for (int c : colors) ++size[c];
    int target = 0;
    while (size[target] < 2) ++target;
    std::vector<int> members;
    for (int e = 0; e < n_; ++e)
      if (colors[e] == target) members.push_back(e);

    if (first_path) {
      first_cells_.push_back(members);
      first_path_.push_back(members.front());
    }

    std::vector<int> explored;
    for (int w : members) {
      if (!explored.empty()) {
        UnionFind orbits = orbits_fixing(prefix);
        const int root = orbits.find(w);
        const bool equivalent = std::any_of(explored.begin(), explored.end(),
                                            [&](int x) { return orbits.find(x) == root; });
        if (equivalent) continue;
      }
      std::vector<int> child(colors);
      for (int e = 0; e < n_; ++e)
        if (child[e] > target || (child[e] == target && e != w)) ++child[e];
      refine(child);
      prefix.push_back(w);
      search(child, prefix, first_path && explored.empty());
      prefix.pop_back();
      explored.push_back(w);
    }
  }

  int n_;
  int r_;
  std::vector<SubsetWord> bases_;
  std::vector<Flat> flats_;
  std::vector<std::vector<int>> element_flats_;

  bool have_first_ = false;
  std::vector<SubsetWord> first_code_;
  Perm first_lab_{};
  std::vector<SubsetWord> best_code_;
  Perm best_lab_{};
  std::vector<Perm> generators_;
  std::vector<std::vector<int>> first_cells_;
  std::vector<int> first_path_;
};

}  // namespace

Canonicalization canonicalize(const FlatLattice& lattice) {
  return Labeler(lattice, bases_from_flats_unchecked(lattice)).run();
}

Canonicalization canonicalize(const Matroid& m) {
  return Labeler(flat_lattice(m), m.bases()).run();
}

CanonicalForm canonical_form(const Matroid& m) { return canonicalize(m).form; }

Canonicalization canonicalize_bruteforce(const Matroid& m) {
  const int n = m.ground_size();
  if (n > 9) throw std::invalid_argument("canonicalize_bruteforce: n > 9");
  std::vector<int> lab(n);
  std::iota(lab.begin(), lab.end(), 0);
  Canonicalization out;
  out.form = CanonicalForm{n, m.rank(), m.bases()};
  out.labeling = lab;
  out.automorphisms = 0;
  do {
    auto code = apply_labeling(m.bases(), lab.data(), n);
    if (code == m.bases()) ++out.automorphisms;
    if (code < out.form.code) {
      out.form.code = std::move(code);
      out.labeling = lab;
    }
  } while (std::next_permutation(lab.begin(), lab.end()));
  return out;
}

Matroid relabel(const Matroid& m, const std::vector<int>& labeling) {
  if (static_cast<int>(labeling.size()) != m.ground_size())
    throw std::invalid_argument("relabel: labeling size differs from n");
  return Matroid::from_sorted_bases_unchecked(m.ground_size(), m.rank(),
                                              apply_labeling(m.bases(), labeling.data(), m.ground_size()));
}

}  // namespace matcount
