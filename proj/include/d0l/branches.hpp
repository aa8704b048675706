#ifndef D0L_BRANCHES_HPP
#define D0L_BRANCHES_HPP

#include <cstddef>
#include <vector>

#include "d0l/forky.hpp"
#include "d0l/language.hpp"

namespace d0l {

// A cycle of the (out-degree one) prolongation graph. labels[i] is the label
// of the edge leaving vertices[i]; following that edge reaches
// vertices[(i + 1) % length].
struct Cycle {
  std::vector<int> vertices;  // graph vertex indices, rotated to start at the smallest
  std::vector<Word> labels;

  std::size_t length() const { return vertices.size(); }
  bool all_labels_empty() const;
};

// Every component of a functional graph carries exactly one cycle.
std::vector<Cycle> cycles(const ProlongationGraph& g);

// The accumulated label word for one full turn of the cycle rooted at
// vertices[start]: the last traversed label raw, earlier labels pushed
// through increasing powers of the morphism. For the left side the branch
// satisfies w = s . image^length(w); mirrored for the right side.
Word cycle_prefix_s(const Cycle& cycle, const ProlongationGraph& g, std::size_t start);

struct BranchGenerator {
  enum class Kind { PeriodicPoint, Equation };
  Kind kind = Kind::PeriodicPoint;
  // PeriodicPoint: branch = the periodic point of image^period seeded at `seed`.
  Letter seed = 0;
  int period = 0;
  // Equation: unique solution of w = s . image^ell(w)  (side L)
  //           resp.              w = image^ell(w) . s  (side R).
  Word s;
  int ell = 0;
};

// An infinite special branch with a witnessing prolongation pair: every
// prefix (side L) / suffix (side R) of the branch, extended by either pair
// word, stays a factor.
struct InfiniteSpecialPair {
  Side side = Side::L;
  PPair vertex;               // canonical host (smallest verified)
  std::vector<PPair> hosts;   // all cycle vertices that verified
  BranchGenerator gen;
  std::size_t verified_to = 0;
};

// All infinite left-special pairs read off the cycles of the left graph:
// vertices of all-empty-label cycles host periodic points of the morphism
// (kept when prefix verification up to verify_len succeeds; such branches
// are reported once with every hosting vertex), and each vertex of a cycle
// with a nonempty label hosts the unique solution of its branch equation
// (verification failure there is a hard inconsistency).
std::vector<InfiniteSpecialPair> infinite_ls_pairs(const D0LSystem& sys, const FactorSet& f,
                                                   const ProlongationGraph& gl,
                                                   std::size_t verify_len);

// Mirror, on the right graph, for right-special branches (infinite to the
// left; materialized as suffixes).
std::vector<InfiniteSpecialPair> infinite_rs_pairs(const D0LSystem& sys, const FactorSet& f,
                                                   const ProlongationGraph& gr,
                                                   std::size_t verify_len);

// First len letters of the branch (side L), or last len letters (side R).
Word branch_prefix(const InfiniteSpecialPair& pair, const Morphism& m, std::size_t len);

// The pair one cycle edge back: its f-image reproduces this pair's branch.
InfiniteSpecialPair f_preimage_pair(const ProlongationGraph& g, const InfiniteSpecialPair& pair);

}  // namespace d0l

#endif  // D0L_BRANCHES_HPP
