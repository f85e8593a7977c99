#pragma once

#include <cstdint>
#include <vector>

#include "matcount/matroid.hpp"

namespace matcount {

// Relabeled, sorted basis family. Equal forms <=> isomorphic matroids.
struct CanonicalForm {
  int n = 0;
  int r = 0;
  std::vector<SubsetWord> code;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct Canonicalization {
  CanonicalForm form;
  // labeling[e-1] is the 0-based position element e takes in the form.
  std::vector<int> labeling;
  std::uint64_t automorphisms = 1;
};

// Minimum encoding over the leaves of an individualization-refinement tree on
// the flat incidence structure, with automorphism pruning.
Canonicalization canonicalize(const FlatLattice& lattice);
Canonicalization canonicalize(const Matroid& m);
CanonicalForm canonical_form(const Matroid& m);

// Minimum over all n! relabelings and the exact automorphism count. n <= 9.
Canonicalization canonicalize_bruteforce(const Matroid& m);

Matroid relabel(const Matroid& m, const std::vector<int>& labeling);

}  // namespace matcount
