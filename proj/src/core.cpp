#include "d0l/core.hpp"

#include <algorithm>
#include <array>

namespace d0l {

namespace {

std::uint64_t all_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

}  // namespace

std::vector<Letter> LetterSet::letters() const {
  std::vector<Letter> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<Letter>(__builtin_ctzll(b)));
  }
  return out;
}

std::string debug_word(WordView w) {
  static const char* digits =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ??";
  std::string out;
  out.reserve(w.size());
  for (char c : w) out.push_back(digits[static_cast<unsigned char>(c)]);
  return out;
}

Morphism::Morphism(std::vector<Word> images) : images_(std::move(images)) {
  if (images_.empty()) throw InputError("morphism needs at least one letter");
  if (images_.size() > kMaxAlphabet) {
    throw InputError("alphabet size exceeds supported maximum of 64");
  }
  min_image_len_ = images_[0].size();
  for (const Word& img : images_) {
    if (img.empty()) throw InputError("erasing image: all letter images must be nonempty");
    for (char c : img) {
      if (static_cast<std::size_t>(static_cast<unsigned char>(c)) >= images_.size()) {
        throw InputError("image letter out of alphabet");
      }
    }
    max_image_len_ = std::max(max_image_len_, img.size());
    min_image_len_ = std::min(min_image_len_, img.size());
  }
}

const Word& Morphism::image(Letter a) const {
  auto idx = static_cast<std::size_t>(static_cast<unsigned char>(a));
  if (idx >= images_.size()) throw InputError("letter out of alphabet");
  return images_[idx];
}

Word Morphism::apply(WordView w) const {
  std::size_t total = 0;
  for (char c : w) total += image(c).size();
  Word out;
  out.reserve(total);
  for (char c : w) out += image(c);
  return out;
}

Word Morphism::iterate(WordView w, int n, std::size_t max_len) const {
  if (n < 0) throw InputError("iteration count must be nonnegative");
  Word cur(w);
  for (int i = 0; i < n; ++i) {
    std::size_t next_len = 0;
    for (char c : cur) next_len += image(c).size();
    if (next_len > max_len) {
      throw ResourceError("iterate would exceed the configured word-length bound of " +
                          std::to_string(max_len) + " letters");
    }
    cur = apply(cur);
  }
  return cur;
}

bool Morphism::is_prefix_free() const {
  int n = alphabet_size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const Word& u = images_[a];
      const Word& v = images_[b];
      if (u.size() <= v.size() && v.compare(0, u.size(), u) == 0) return false;
    }
  }
  return true;
}

bool Morphism::is_suffix_free() const {
  int n = alphabet_size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const Word& u = images_[a];
      const Word& v = images_[b];
      if (u.size() <= v.size() && v.compare(v.size() - u.size(), u.size(), u) == 0) return false;
    }
  }
  return true;
}

bool Morphism::is_primitive() const {
  int n = alphabet_size();
  std::vector<std::uint64_t> step(n, 0);
  for (int a = 0; a < n; ++a) {
    for (char c : images_[a]) step[a] |= std::uint64_t{1} << static_cast<unsigned char>(c);
  }
  std::uint64_t full = all_mask(n);
  std::vector<std::uint64_t> cur = step;
  int max_power = (n - 1) * (n - 1) + 1;
  for (int k = 1; k <= max_power; ++k) {
    bool all = true;
    for (int a = 0; a < n; ++a) {
      if (cur[a] != full) {
        all = false;
        break;
      }
    }
    if (all) return true;
    std::vector<std::uint64_t> next(n, 0);
    for (int a = 0; a < n; ++a) {
      for (std::uint64_t b = cur[a]; b != 0; b &= b - 1) {
        next[a] |= step[__builtin_ctzll(b)];
      }
    }
    cur = std::move(next);
  }
  return false;
}

std::vector<PeriodicSeed> Morphism::periodic_points() const {
  int n = alphabet_size();
  std::vector<PeriodicSeed> out;
  for (int b = 0; b < n; ++b) {
    // Walk the first-letter map; b seeds a periodic point iff it returns to
    // itself and some image along the orbit has length >= 2 (otherwise the
    // orbit is a plain letter cycle with no infinite word behind it).
    Letter cur = static_cast<Letter>(b);
    bool grows = false;
    for (int l = 1; l <= n; ++l) {
      const Word& img = image(cur);
      if (img.size() >= 2) grows = true;
      cur = img[0];
      if (static_cast<unsigned char>(cur) == b) {
        if (grows) out.push_back({static_cast<Letter>(b), l});
        break;
      }
    }
  }
  return out;
}

Morphism Morphism::reversed() const {
  std::vector<Word> imgs = images_;
  for (Word& w : imgs) std::reverse(w.begin(), w.end());
  return Morphism(std::move(imgs));
}

D0LSystem::D0LSystem(Morphism morphism, Word axiom)
    : morphism_(std::move(morphism)), axiom_(std::move(axiom)) {
  if (axiom_.empty()) throw InputError("axiom must be nonempty");
  for (char c : axiom_) {
    if (static_cast<std::size_t>(static_cast<unsigned char>(c)) >=
        static_cast<std::size_t>(morphism_.alphabet_size())) {
      throw InputError("axiom letter out of alphabet");
    }
  }
}

bool D0LSystem::has_fixed_point_seed() const {
  if (axiom_.size() != 1) return false;
  const Word& img = morphism_.image(axiom_[0]);
  return img.size() >= 2 && img[0] == axiom_[0];
}

Word D0LSystem::fixed_point_prefix(std::size_t len, std::size_t max_word_len) const {
  if (!has_fixed_point_seed()) {
    throw PreconditionError(
        "fixed-point prefix requires a one-letter axiom a with image(a) = a.v, v nonempty");
  }
  if (len > max_word_len) throw ResourceError("requested prefix exceeds the word-length bound");
  Word cur = axiom_;
  // image(prefix of the fixed point) is again a prefix of the fixed point and
  // strictly longer, so truncated re-application converges.
  while (cur.size() < len) {
    cur = morphism_.apply(cur);
    if (cur.size() > len) cur.resize(len);
  }
  return cur;
}

D0LSystem D0LSystem::reversed() const {
  Word ax = axiom_;
  std::reverse(ax.begin(), ax.end());
  return D0LSystem(morphism_.reversed(), std::move(ax));
}

LetterSet LetterClassification::bounded_set() const {
  LetterSet s;
  for (std::size_t i = 0; i < growth.size(); ++i) {
    if (growth[i] == LetterGrowth::Bounded) s.insert(static_cast<Letter>(i));
  }
  return s;
}

LetterClassification classify_letters(const Morphism& m) {
  int n = m.alphabet_size();
  // Occurrence graph: a -> c when c occurs in image(a). reach[a] is the set
  // of letters reachable in >= 1 steps.
  std::vector<std::uint64_t> adj(n, 0);
  for (int a = 0; a < n; ++a) {
    for (char c : m.image(static_cast<Letter>(a))) {
      adj[a] |= std::uint64_t{1} << static_cast<unsigned char>(c);
    }
  }
  std::vector<std::uint64_t> reach = adj;
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      std::uint64_t acc = reach[a];
      for (std::uint64_t b = reach[a]; b != 0; b &= b - 1) {
        acc |= reach[__builtin_ctzll(b)];
      }
      if (acc != reach[a]) {
        reach[a] = acc;
        changed = true;
      }
    }
    if (!changed) break;
  }
  // A pump is a letter on a cycle whose own image has length >= 2; a letter
  // grows iff it is or reaches a pump.
  std::uint64_t pumps = 0;
  for (int a = 0; a < n; ++a) {
    bool on_cycle = (reach[a] >> a) & 1;
    if (on_cycle && m.image(static_cast<Letter>(a)).size() >= 2) {
      pumps |= std::uint64_t{1} << a;
    }
  }
  LetterClassification out;
  out.growth.resize(n, LetterGrowth::Bounded);
  for (int a = 0; a < n; ++a) {
    std::uint64_t cone = reach[a] | (std::uint64_t{1} << a);
    if (cone & pumps) out.growth[a] = LetterGrowth::Growing;
  }
  return out;
}

LetterSet occurring_letters(const D0LSystem& sys) {
  const Morphism& m = sys.morphism();
  int n = m.alphabet_size();
  std::uint64_t seen = 0;
  std::vector<Letter> stack;
  auto push = [&](Letter a) {
    std::uint64_t b = std::uint64_t{1} << static_cast<unsigned char>(a);
    if (!(seen & b)) {
      seen |= b;
      stack.push_back(a);
    }
  };
  for (char c : sys.axiom()) push(c);
  while (!stack.empty()) {
    Letter a = stack.back();
    stack.pop_back();
    for (char c : m.image(a)) push(c);
  }
  LetterSet out;
  for (int a = 0; a < n; ++a) {
    if ((seen >> a) & 1) out.insert(static_cast<Letter>(a));
  }
  return out;
}

}  // namespace d0l
