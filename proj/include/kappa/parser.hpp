#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kappa/group.hpp"

namespace kappa {

struct CorpusEntry {
  std::string name;        // trailing "# name" comment, or the descriptor text
  std::string descriptor;
  int line = 0;            // 1-based line in the corpus file
};

// Descriptor grammar:
//   cyclic(n)
//   abelian[k1,k2,...]
//   direct(D1, D2)
//   semidirect(abelian[...], q, action{a->b, b->a*b^2, ...})
//   perm(degree){(0 1 2)(3 4), (0 1), ...}
//   catalog(name, params...)        params: ints or name=int
//   cayley(path)                    whitespace-separated n x n index matrix
// Generators in action words are letters a, b, c, ... in base-factor order;
// "1" denotes the identity word. cayley paths resolve against base_dir.
FiniteGroup parse_group(const std::string& descriptor, const RunCaps& caps = {},
                        const std::filesystem::path& base_dir = ".");

// One descriptor per line; blank lines and full-line # comments skipped;
// a trailing "# name" names the entry.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path);

FiniteGroup load_cayley_table(const std::filesystem::path& path, const RunCaps& caps);

}  // namespace kappa
