#ifndef D0L_CORE_HPP
#define D0L_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace d0l {

// A letter is a dense id in [0, alphabet_size). Words are byte strings of
// letter ids (not printable text; see SymbolTable for rendering).
using Letter = char;
using Word = std::string;
using WordView = std::string_view;

inline constexpr std::size_t kMaxAlphabet = 64;  // LetterSet is a 64-bit mask
inline constexpr std::size_t kDefaultMaxWordLen = 10'000'000;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: unknown letter, malformed file, empty word where a
// nonempty one is required.
class InputError : public Error {
 public:
  using Error::Error;
};

// A stated contract was violated (horizon too small, wrong system shape).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured budget (word length, factor count, iteration cap) was hit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// The implementation detected an inconsistency that should be impossible
// for valid inputs; indicates a defect or an undersized certificate.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Small set of letters backed by a bitmask.
class LetterSet {
 public:
  constexpr LetterSet() = default;
  static LetterSet single(Letter a) {
    LetterSet s;
    s.insert(a);
    return s;
  }

  void insert(Letter a) { bits_ |= bit(a); }
  bool contains(Letter a) const { return (bits_ & bit(a)) != 0; }
  int size() const { return __builtin_popcountll(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  std::vector<Letter> letters() const;

  friend bool operator==(const LetterSet&, const LetterSet&) = default;
  LetterSet operator&(LetterSet o) const { return from_bits(bits_ & o.bits_); }
  LetterSet operator|(LetterSet o) const { return from_bits(bits_ | o.bits_); }

 private:
  static LetterSet from_bits(std::uint64_t b) {
    LetterSet s;
    s.bits_ = b;
    return s;
  }
  static std::uint64_t bit(Letter a) { return std::uint64_t{1} << static_cast<unsigned char>(a); }
  std::uint64_t bits_ = 0;
};

// Renders a word with one character per letter (0-9, then a-z, A-Z).
// Diagnostic only; user-facing output goes through SymbolTable.
std::string debug_word(WordView w);

struct PeriodicSeed {
  Letter seed;
  int period;  // minimal l >= 1 with image^l(seed) starting in seed
  friend bool operator==(const PeriodicSeed&, const PeriodicSeed&) = default;
};

// A non-erasing morphism over a dense alphabet, given by its letter images.
class Morphism {
 public:
  explicit Morphism(std::vector<Word> images);

  int alphabet_size() const { return static_cast<int>(images_.size()); }
  const Word& image(Letter a) const;
  const std::vector<Word>& images() const { return images_; }

  std::size_t max_image_len() const { return max_image_len_; }
  std::size_t min_image_len() const { return min_image_len_; }

  Word apply(WordView w) const;
  // Applies the morphism n times. Throws ResourceError when the result would
  // exceed max_len letters.
  Word iterate(WordView w, int n, std::size_t max_len = kDefaultMaxWordLen) const;

  // No image is a (proper or equal) prefix/suffix of another letter's image.
  bool is_prefix_free() const;
  bool is_suffix_free() const;

  // Some power of the incidence matrix is entrywise positive.
  bool is_primitive() const;

  // All letters b whose minimal period l <= alphabet_size satisfies
  // image^l(b) = b.v with v nonempty; these seed infinite periodic points.
  std::vector<PeriodicSeed> periodic_points() const;

  // Letter-wise reversal: image'(a) = reverse(image(a)). Mirror helper.
  Morphism reversed() const;

 private:
  std::vector<Word> images_;
  std::size_t max_image_len_ = 0;
  std::size_t min_image_len_ = 0;
};

class D0LSystem {
 public:
  D0LSystem(Morphism morphism, Word axiom);

  const Morphism& morphism() const { return morphism_; }
  const Word& axiom() const { return axiom_; }
  int alphabet_size() const { return morphism_.alphabet_size(); }

  // True when the axiom is a single letter a with image(a) = a.v, v nonempty,
  // so the system generates the one-sided infinite fixed point from a.
  bool has_fixed_point_seed() const;

  // First len letters of the infinite fixed point. Requires a fixed-point
  // seed; result is prefix-stable in len.
  Word fixed_point_prefix(std::size_t len, std::size_t max_word_len = kDefaultMaxWordLen) const;

  D0LSystem reversed() const;

 private:
  Morphism morphism_;
  Word axiom_;
};

enum class LetterGrowth : std::uint8_t { Bounded, Growing };

struct LetterClassification {
  std::vector<LetterGrowth> growth;  // indexed by letter

  bool bounded(Letter a) const { return growth[static_cast<unsigned char>(a)] == LetterGrowth::Bounded; }
  bool growing(Letter a) const { return !bounded(a); }
  LetterSet bounded_set() const;
};

// A letter is Bounded exactly when it cannot reach (in the occurrence graph)
// a cycle containing a letter with image length >= 2; equivalently the
// language generated from it is finite.
LetterClassification classify_letters(const Morphism& m);

// Letters reachable from the axiom in the occurrence graph, i.e. exactly the
// letters occurring in some iterate of the axiom.
LetterSet occurring_letters(const D0LSystem& sys);

}  // namespace d0l

#endif  // D0L_CORE_HPP
