#ifndef D0L_CLASSIFY_HPP
#define D0L_CLASSIFY_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "d0l/core.hpp"
#include "d0l/language.hpp"

namespace d0l {

// One way of reading a factor w inside the image of a factor z: w occurs in
// image(z) at the given offset, meeting both the first and the last image
// block (minimal cover). cuts lists the positions i in [0, |w|] where a block
// boundary of image(z) falls, including the two word boundaries when they
// line up with block boundaries.
struct Interpretation {
  Word cover;
  std::size_t offset = 0;
  std::vector<std::size_t> cuts;
};

// All interpretations of a factor w (w nonempty, |w| <= horizon). Covers are
// factors of length <= |w|; a missing interpretation for a genuine factor of
// a fixed-point system indicates an internal inconsistency.
std::vector<Interpretation> interpretations(const FactorSet& f, WordView w);

// Positions common to the cut sets of all interpretations. A position i means
// the split (w[..i], w[i..]) is forced onto an image boundary in every
// admissible decomposition; this is the directly computable counterpart of
// quantifying over all two-sided completions inside the image language.
// Boundary positions (i = 0, i = |w|) count.
std::vector<std::size_t> synchronizing_cuts(const FactorSet& f, WordView w);

struct DelayResult {
  bool certified = false;
  std::size_t delay = 0;  // valid when certified
  std::size_t cap = 0;    // the search bound that was used
};

// Smallest D <= cap such that every factor of length exactly D has a
// nonempty synchronizing cut set. A cut survives every two-sided extension
// (extensions only restrict the interpretation set), so certifying length
// exactly D covers all longer factors.
DelayResult synchronizing_delay(const D0LSystem& sys, const FactorSet& f, std::size_t cap);

struct InjectivityResult {
  bool certified = false;
  std::size_t horizon = 0;
  std::optional<std::pair<Word, Word>> counterexample;
};

// Pairwise-distinct images over all factors up to h.
InjectivityResult injectivity_check(const D0LSystem& sys, const FactorSet& f, std::size_t h);

struct PushyResult {
  bool pushy = false;
  std::size_t q = 0;  // max bounded-letter block length; valid when !pushy
};

// Pushy iff arbitrarily long factors of bounded (rank-zero) letters exist.
// Decided on the growing-letter boundary maps: bounded material pumps up
// exactly when a boundary-map cycle keeps contributing a nonempty bounded
// prefix or suffix. When non-pushy, q is read off iterates of the axiom once
// the observed maximum is stable for two consecutive iterates.
PushyResult is_pushy(const D0LSystem& sys);

// Least C such that every factor v with |image(v)| = |v| has |v| < C;
// within the horizon this is 1 + the longest run of letters whose image has
// length 1. Requires a non-pushy system.
std::size_t growth_constant(const D0LSystem& sys, const FactorSet& f);

struct RepetitivenessResult {
  bool evidence = false;
  Word witness;               // shortest witness found by the scan, if any
  Rational power;             // its observed index
  std::size_t max_word_len = 0;
  Rational threshold;
};

// Bounded semi-decision: evidence when the system is pushy or some word up
// to max_word_len reaches the power threshold inside the horizon.
RepetitivenessResult repetitiveness_bounded(const D0LSystem& sys, const FactorSet& f,
                                            Rational power_threshold, std::size_t max_word_len);

struct ClassificationCaps {
  std::size_t delay_cap = 30;
  Rational power_threshold{6, 1};
  std::size_t repetitiveness_max_word_len = 20;
};

enum class Verdict {
  CircularNonPushy,     // non-pushy, no repetitiveness evidence (delay corroborates)
  RejectedPushy,        //
  RejectedRepetitive,   //
};

const char* verdict_name(Verdict v);

struct ClassificationReport {
  LetterClassification letters;
  PushyResult pushy;
  std::optional<std::size_t> growth_c;  // set when non-pushy
  InjectivityResult injectivity;
  DelayResult delay;
  RepetitivenessResult repetitiveness;
  Verdict verdict = Verdict::CircularNonPushy;
  std::size_t horizon = 0;
  ClassificationCaps caps;

  bool accepted() const { return verdict == Verdict::CircularNonPushy; }
};

// Assembles the full verdict. Non-pushy with no repetitiveness evidence is
// reported circular (certified up to the caps): within the scanned bounds
// the language is power-free enough, and power-freeness forces circularity.
ClassificationReport circularity_report(const D0LSystem& sys, const FactorSet& f,
                                        ClassificationCaps caps = {});

}  // namespace d0l

#endif  // D0L_CLASSIFY_HPP
