#ifndef D0L_LANGUAGE_HPP
#define D0L_LANGUAGE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "d0l/core.hpp"

namespace d0l {

namespace detail {
struct WordHash {
  using is_transparent = void;
  std::size_t operator()(WordView w) const noexcept { return std::hash<WordView>{}(w); }
  std::size_t operator()(const Word& w) const noexcept { return std::hash<WordView>{}(w); }
};
struct WordEq {
  using is_transparent = void;
  bool operator()(WordView a, WordView b) const noexcept { return a == b; }
};
}  // namespace detail

struct FactorSetOptions {
  std::size_t max_factors = 5'000'000;
  std::size_t max_seed_iterations = 10'000;
};

// Exact set of all factors of length <= horizon of the system's language,
// with eager left/right single-letter extension indexes.
class FactorSet {
 public:
  static FactorSet build(const D0LSystem& sys, std::size_t horizon, FactorSetOptions opts = {});

  std::size_t horizon() const { return horizon_; }
  const D0LSystem& system() const { return sys_; }

  bool contains(WordView w) const { return w.size() <= horizon_ && factors_.count(w) != 0; }

  // Number of factors of the given length; length must be <= horizon.
  std::size_t complexity(std::size_t len) const;
  // Sorted factors of one length.
  const std::vector<Word>& of_length(std::size_t len) const;

  // Exact extension sets; require |w| + 1 <= horizon and w a factor.
  LetterSet lext(WordView w) const;
  LetterSet rext(WordView w) const;

  bool left_special(WordView w) const { return lext(w).size() >= 2; }
  bool right_special(WordView w) const { return rext(w).size() >= 2; }
  bool bispecial(WordView w) const { return left_special(w) && right_special(w); }

  LetterSet occurring() const;

  std::size_t total_factors() const { return factors_.size(); }

  // Mirror image: every factor reversed, extension sides swapped.
  FactorSet reversed() const;

 private:
  explicit FactorSet(D0LSystem sys) : sys_(std::move(sys)) {}

  struct Ext {
    std::uint64_t l = 0, r = 0;
  };

  D0LSystem sys_;
  std::size_t horizon_ = 0;
  std::unordered_set<Word, detail::WordHash, detail::WordEq> factors_;
  std::unordered_map<Word, Ext, detail::WordHash, detail::WordEq> ext_;
  std::vector<std::vector<Word>> by_length_;
};

struct BispecialRecord {
  Word word;
  LetterSet lext, rext;
  friend bool operator==(const BispecialRecord&, const BispecialRecord&) = default;
};

// All bispecial factors of length <= maxlen with their extension sets,
// straight from the indexed language. Requires maxlen + 2 <= horizon so the
// surrounding material is exact. Includes the empty word when bispecial.
std::vector<BispecialRecord> bispecial_bruteforce(const FactorSet& f, std::size_t maxlen);

// Exact nonnegative rational, normalized.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
};

struct IndexResult {
  Rational index;   // largest p/|w| with the length-p prefix of w^inf a factor
  bool truncated;   // the search stopped at the cap or the horizon
  bool cap_hit;     // truncation happened at the cap (not just the horizon)
};

IndexResult index_of(const FactorSet& f, WordView w, Rational cap);

struct WordIndexEntry {
  Word word;
  Rational index;
  bool cap_hit;
};

struct ExponentReport {
  std::vector<WordIndexEntry> entries;  // all nonempty factors up to max_word_len
  Rational max_index;
  Word argmax;
  bool unbounded_evidence = false;  // some word reached the cap
  Word witness;                     // first such word
  std::size_t max_word_len = 0;
  Rational cap;
};

ExponentReport critical_exponent_estimate(const FactorSet& f, std::size_t max_word_len,
                                          Rational cap);

}  // namespace d0l

#endif  // D0L_LANGUAGE_HPP
