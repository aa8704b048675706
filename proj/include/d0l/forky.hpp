#ifndef D0L_FORKY_HPP
#define D0L_FORKY_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d0l/core.hpp"
#include "d0l/language.hpp"

namespace d0l {

enum class Side { L, R };

inline const char* side_name(Side s) { return s == Side::L ? "L" : "R"; }

// Unordered pair of nonempty words, stored in lexicographic order.
struct PPair {
  Word a, b;

  PPair() = default;
  PPair(Word x, Word y);

  std::size_t max_len() const { return std::max(a.size(), b.size()); }

  friend auto operator<=>(const PPair&, const PPair&) = default;
};

// Longest common suffix (L) or prefix (R) of the images of the pair's words.
Word f_value(const Morphism& m, Side side, const PPair& p);

// Two pairs are aligned when they can be matched (directly or crosswise) so
// that in each matched slot one word is a suffix (L) / prefix (R) of the
// other.
bool aligned(Side side, const PPair& p, const PPair& q);

struct ForkySet {
  Side side = Side::L;
  std::vector<PPair> pairs;  // sorted

  bool contains(const PPair& p) const;
  std::size_t max_word_len() const;
};

struct ForkyViolation {
  int condition = 0;  // 1..4, per the defining conditions
  PPair pair;
  std::string detail;
};

struct ForkyCheck {
  bool ok = true;
  std::vector<ForkyViolation> violations;
};

// Validates the four defining conditions against the factor set:
//   (1) distinct boundary letters in every pair,
//   (2) no two distinct members aligned,
//   (3) every pair of nonempty factors with distinct boundary letters is
//       aligned with some member (checked for words up to max member length
//       + 1; longer pairs reduce to this case by truncating to suffixes /
//       prefixes of that length, which are again factors with the same
//       boundary letters),
//   (4) stripping the pair's f-value from the images leaves a pair that has
//       some member as a suffix/prefix pair.
ForkyCheck is_forky(const ForkySet& set, const FactorSet& f, const Morphism& m);

// All pairs of length-len factors with distinct boundary letters. For a
// circular non-pushy system, len = delay * growth constant always yields a
// forky set.
ForkySet uniform_forky_set(const FactorSet& f, Side side, std::size_t len);

// Iterative construction: start from all occurring letter pairs and repair
// condition-(4) failures by extending the deficient word(s) one letter
// outward to all factor-valid prolongations. If a word would exceed
// max_word_len, falls back to the uniform set of all length-M factor pairs
// with distinct boundary letters (M = delay * growth constant unless
// overridden) and revalidates.
ForkySet build_forky_set(const D0LSystem& sys, const FactorSet& f, Side side,
                         std::size_t max_word_len,
                         std::optional<std::size_t> fallback_len = std::nullopt);

struct GraphEdge {
  int target = -1;
  Word label;
  bool crossed = false;  // target.a continues the source's second word
};

// Functional graph on a forky set: each vertex carries exactly one out-edge,
// labeled by its f-value; the edge records which target word continues which
// source word.
struct ProlongationGraph {
  Side side = Side::L;
  Morphism morphism;
  std::vector<PPair> vertices;  // sorted
  std::vector<GraphEdge> edges;  // edges[i] leaves vertices[i]

  int index_of(const PPair& p) const;
  const GraphEdge& edge_at(const PPair& p) const;
};

ProlongationGraph build_graph(const ForkySet& set, const Morphism& m);

// Deterministic DOT rendering; fmt maps internal words to display strings.
std::string to_dot(const ProlongationGraph& g, const std::function<std::string(WordView)>& fmt);

}  // namespace d0l

#endif  // D0L_FORKY_HPP
