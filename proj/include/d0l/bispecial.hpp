#ifndef D0L_BISPECIAL_HPP
#define D0L_BISPECIAL_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "d0l/forky.hpp"
#include "d0l/language.hpp"

namespace d0l {

// Which pairings of the surrounding words are realized in the language:
// parallel pairs (left.a ... right.a, left.b ... right.b), crossed pairs
// (left.a ... right.b, left.b ... right.a). At least one must hold.
struct Orientations {
  bool parallel = false;
  bool crossed = false;

  bool any() const { return parallel || crossed; }
  friend auto operator<=>(const Orientations&, const Orientations&) = default;
};

// A bispecial factor together with a left and a right prolongation pair
// realized around it. The center is bispecial automatically: the pairs'
// distinct boundary letters witness two extensions on each side.
struct BSTriplet {
  PPair left;
  Word center;
  PPair right;
  Orientations orient;

  friend auto operator<=>(const BSTriplet&, const BSTriplet&) = default;
};

// Membership test of the four surrounding words; requires the lengths to fit
// inside the horizon.
Orientations fill_orientations(const FactorSet& f, const PPair& left, const Word& center,
                               const PPair& right);

inline bool is_bs_triplet(const FactorSet& f, const BSTriplet& t) {
  return fill_orientations(f, t.left, t.center, t.right).any();
}

// (g_L(left), f_L(left) . image(center) . f_R(right), g_R(right)), with the
// orientation carried through the edges' continuation bits.
BSTriplet f_image(const ProlongationGraph& gl, const ProlongationGraph& gr, const BSTriplet& t);

// n-fold image in closed form: the left/right vertices walk n edges, the
// center becomes
//   f_L(image^{n-1} of left words) . image^n(center) . f_R(image^{n-1} of right words).
// Must agree with n successive f_image applications.
BSTriplet f_image_n(const ProlongationGraph& gl, const ProlongationGraph& gr, const BSTriplet& t,
                    int n);

// Cut positions inside the center common to every interpretation of every
// realized surrounding word (both words of each active orientation),
// rebased to the center's span. Word boundaries of the center count.
std::vector<std::size_t> bs_sync_cuts(const FactorSet& f, const BSTriplet& t);

inline bool is_initial(const FactorSet& f, const BSTriplet& t) {
  return bs_sync_cuts(f, t).empty();
}

struct NonsyncDecomposition {
  Word prefix;  // before the shortest cut
  Word middle;  // between the outermost cuts
  Word suffix;  // after the longest cut
};

// Requires a non-initial triplet.
NonsyncDecomposition nonsync_decomposition(const FactorSet& f, const BSTriplet& t);

// Some triplet whose f-image reproduces t (words and vertices); the cut
// structure pins the label material, the synchronized middle has a unique
// image preimage. Empty for initial triplets. Preimages need not be unique;
// the first candidate in canonical edge order is returned.
std::optional<BSTriplet> f_preimage(const FactorSet& f, const ProlongationGraph& gl,
                                    const ProlongationGraph& gr, const BSTriplet& t);

// All triplets around bispecial factors of length <= delay with no
// BS-synchronizing point. Requires a fixed-point seed and a certified delay.
std::vector<BSTriplet> initial_triplets(const D0LSystem& sys, const FactorSet& f,
                                        const ProlongationGraph& gl, const ProlongationGraph& gr,
                                        std::size_t delay);

// Replaces every empty-centered triplet by its f-image (nonempty-centered
// ones are kept), deduplicating by the surrounding words.
std::vector<BSTriplet> replace_epsilon_centers(const std::vector<BSTriplet>& initials,
                                               const ProlongationGraph& gl,
                                               const ProlongationGraph& gr);

struct GenerationRecord {
  int initial_id = 0;  // index into the initial list
  int steps = 0;       // how many f-images away from it
  BSTriplet triplet;
  bool degenerate = false;  // chain re-entered a seen triplet without growing
};

struct GenerationResult {
  std::vector<BSTriplet> initials;
  std::vector<GenerationRecord> records;  // breadth-first, deduplicated
};

// Breadth-first f-image closure of the initial triplets, keeping every
// triplet whose center has length <= max_len. Center lengths never shrink
// under the image, so pruning at max_len is exhaustive. Every recorded
// center is re-checked bispecial against the factor set.
GenerationResult generate_bispecials(const std::vector<BSTriplet>& initials,
                                     const ProlongationGraph& gl, const ProlongationGraph& gr,
                                     const FactorSet& f, std::size_t max_len);

}  // namespace d0l

#endif  // D0L_BISPECIAL_HPP
