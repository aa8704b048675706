#include "d0l/classify.hpp"

#include <algorithm>
#include <unordered_map>

namespace d0l {

namespace {

std::vector<std::size_t> cut_positions(const Morphism& m, const Word& cover, std::size_t offset,
                                       std::size_t wlen) {
  std::vector<std::size_t> cuts;
  std::size_t boundary = 0;
  for (std::size_t i = 0; i <= cover.size(); ++i) {
    if (boundary >= offset && boundary <= offset + wlen) cuts.push_back(boundary - offset);
    if (i < cover.size()) boundary += m.image(cover[i]).size();
  }
  return cuts;
}

}  // namespace

std::vector<Interpretation> interpretations(const FactorSet& f, WordView w) {
  if (w.empty()) throw InputError("interpretations need a nonempty factor");
  if (!f.contains(w)) throw InputError("interpretations query on a non-factor");
  const Morphism& m = f.system().morphism();
  std::vector<Interpretation> out;

  Word cover;
  // Invariant in the search: cover is a factor, all blocks after the first
  // are fully matched against w, and matched counts the letters of w
  // consumed so far (the first block may overhang on the left by offset).
  auto emit = [&](std::size_t offset) {
    Interpretation interp;
    interp.cover = cover;
    interp.offset = offset;
    interp.cuts = cut_positions(m, cover, offset, w.size());
    out.push_back(std::move(interp));
  };

  auto extend = [&](auto&& self, std::size_t matched, std::size_t offset) -> void {
    for (int c = 0; c < m.alphabet_size(); ++c) {
      cover.push_back(static_cast<Letter>(c));
      if (f.contains(cover)) {
        const Word& img = m.image(static_cast<Letter>(c));
        std::size_t rest = w.size() - matched;
        if (img.size() < rest) {
          if (w.compare(matched, img.size(), img) == 0) self(self, matched + img.size(), offset);
        } else if (img.compare(0, rest, w.substr(matched)) == 0) {
          emit(offset);
        }
      }
      cover.pop_back();
    }
  };

  for (int c = 0; c < m.alphabet_size(); ++c) {
    cover.assign(1, static_cast<Letter>(c));
    if (!f.contains(cover)) continue;
    const Word& img = m.image(static_cast<Letter>(c));
    for (std::size_t o = 0; o < img.size(); ++o) {
      std::size_t k = std::min(img.size() - o, w.size());
      if (img.compare(o, k, w.substr(0, k)) != 0) continue;
      if (img.size() - o >= w.size()) {
        emit(o);
      } else {
        extend(extend, k, o);
      }
    }
  }
  if (out.empty()) {
    throw InternalError("no interpretation found for factor " + debug_word(w) +
                        "; the factor set or horizon is inconsistent");
  }
  return out;
}

std::vector<std::size_t> synchronizing_cuts(const FactorSet& f, WordView w) {
  std::vector<Interpretation> interps = interpretations(f, w);
  std::vector<char> common(w.size() + 1, 1);
  for (const Interpretation& interp : interps) {
    std::vector<char> here(w.size() + 1, 0);
    for (std::size_t c : interp.cuts) here[c] = 1;
    for (std::size_t i = 0; i <= w.size(); ++i) common[i] &= here[i];
  }
  std::vector<std::size_t> cuts;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    if (common[i]) cuts.push_back(i);
  }
  return cuts;
}

DelayResult synchronizing_delay(const D0LSystem& sys, const FactorSet& f, std::size_t cap) {
  if (cap > f.horizon()) {
    throw PreconditionError("delay search needs cap <= horizon");
  }
  InjectivityResult inj = injectivity_check(sys, f, f.horizon());
  if (!inj.certified) {
    throw PreconditionError("delay search requires the morphism injective on the language");
  }
  for (std::size_t d = 1; d <= cap; ++d) {
    bool all_have_cut = true;
    for (const Word& w : f.of_length(d)) {
      if (synchronizing_cuts(f, w).empty()) {
        all_have_cut = false;
        break;
      }
    }
    if (all_have_cut) return {true, d, cap};
  }
  return {false, 0, cap};
}

InjectivityResult injectivity_check(const D0LSystem& sys, const FactorSet& f, std::size_t h) {
  if (h > f.horizon()) throw PreconditionError("injectivity check beyond the horizon");
  const Morphism& m = sys.morphism();
  std::unordered_map<Word, Word, detail::WordHash, detail::WordEq> by_image;
  for (std::size_t len = 1; len <= h; ++len) {
    for (const Word& w : f.of_length(len)) {
      auto [it, fresh] = by_image.try_emplace(m.apply(w), w);
      if (!fresh) {
        return {false, h, std::make_pair(it->second, w)};
      }
    }
  }
  return {true, h, std::nullopt};
}

namespace {

struct BoundaryMaps {
  // Per growing letter: the outermost growing letter of its image and the
  // bounded-letter margin beyond it.
  std::vector<Letter> next;        // lambda (suffix side) or rho (prefix side)
  std::vector<bool> has_margin;    // nonempty bounded suffix/prefix
};

BoundaryMaps boundary_maps(const Morphism& m, const LetterClassification& cls, bool suffix_side) {
  int n = m.alphabet_size();
  BoundaryMaps maps;
  maps.next.assign(n, 0);
  maps.has_margin.assign(n, false);
  for (int a = 0; a < n; ++a) {
    if (cls.bounded(static_cast<Letter>(a))) continue;
    const Word& img = m.image(static_cast<Letter>(a));
    if (suffix_side) {
      for (std::size_t i = img.size(); i-- > 0;) {
        if (cls.growing(img[i])) {
          maps.next[a] = img[i];
          maps.has_margin[a] = i + 1 < img.size();
          break;
        }
      }
    } else {
      for (std::size_t i = 0; i < img.size(); ++i) {
        if (cls.growing(img[i])) {
          maps.next[a] = img[i];
          maps.has_margin[a] = i > 0;
          break;
        }
      }
    }
  }
  return maps;
}

// Does some growing letter in `start_set` reach, under the functional map,
// a cycle containing a letter with margin?
bool pumps_bounded_margin(const BoundaryMaps& maps, const LetterClassification& cls,
                          LetterSet start_set) {
  for (Letter a : start_set.letters()) {
    if (cls.bounded(a)) continue;
    // Walk into the cycle, then scan one full cycle for a margin letter.
    Letter cur = a;
    std::uint64_t seen = 0;
    while (!(seen & (std::uint64_t{1} << static_cast<unsigned char>(cur)))) {
      seen |= std::uint64_t{1} << static_cast<unsigned char>(cur);
      cur = maps.next[static_cast<unsigned char>(cur)];
    }
    Letter probe = cur;
    do {
      if (maps.has_margin[static_cast<unsigned char>(probe)]) return true;
      probe = maps.next[static_cast<unsigned char>(probe)];
    } while (probe != cur);
  }
  return false;
}

std::size_t max_bounded_block(const Word& w, const LetterClassification& cls) {
  std::size_t best = 0, run = 0;
  for (char c : w) {
    if (cls.bounded(c)) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

}  // namespace

PushyResult is_pushy(const D0LSystem& sys) {
  const Morphism& m = sys.morphism();
  LetterClassification cls = classify_letters(m);
  LetterSet occ = occurring_letters(sys);

  bool any_growing = false;
  for (Letter a : occ.letters()) {
    if (cls.growing(a)) any_growing = true;
  }
  bool has_bounded = !cls.bounded_set().empty();

  bool pushy = false;
  if (any_growing && has_bounded) {
    BoundaryMaps lambda = boundary_maps(m, cls, /*suffix_side=*/true);
    BoundaryMaps rho = boundary_maps(m, cls, /*suffix_side=*/false);
    pushy = pumps_bounded_margin(lambda, cls, occ) || pumps_bounded_margin(rho, cls, occ);
  }
  if (pushy) return {true, 0};

  PushyResult out{false, 0};
  if (!has_bounded) return out;

  // q: observed maximum bounded block, accepted once stable across two
  // consecutive iterates.
  Word w = sys.axiom();
  std::size_t prev = max_bounded_block(w, cls);
  for (int k = 0; k < 64; ++k) {
    std::size_t next_len = 0;
    for (char c : w) next_len += m.image(c).size();
    if (next_len > kDefaultMaxWordLen) {
      throw ResourceError("bounded-block stabilization exceeded the word-length budget");
    }
    w = m.apply(w);
    std::size_t cur = max_bounded_block(w, cls);
    if (cur == prev) {
      out.q = cur;
      return out;
    }
    prev = cur;
  }
  throw ResourceError("bounded-block length did not stabilize; pushiness criterion disagrees");
}

std::size_t growth_constant(const D0LSystem& sys, const FactorSet& f) {
  PushyResult p = is_pushy(sys);
  if (p.pushy) throw PreconditionError("growth constant is defined for non-pushy systems only");
  const Morphism& m = sys.morphism();
  std::size_t best = 0;
  for (std::size_t len = 1; len <= f.horizon(); ++len) {
    for (const Word& w : f.of_length(len)) {
      std::size_t run = 0;
      for (char c : w) {
        if (m.image(c).size() == 1) {
          best = std::max(best, ++run);
        } else {
          run = 0;
        }
      }
    }
  }
  if (best >= f.horizon()) {
    throw PreconditionError("horizon too small to certify the growth constant");
  }
  return best + 1;
}

RepetitivenessResult repetitiveness_bounded(const D0LSystem& sys, const FactorSet& f,
                                            Rational power_threshold, std::size_t max_word_len) {
  RepetitivenessResult out;
  out.max_word_len = max_word_len;
  out.threshold = power_threshold;
  out.power = Rational(0, 1);
  std::size_t scan_len = std::min(max_word_len, f.horizon());
  for (std::size_t len = 1; len <= scan_len && !out.evidence; ++len) {
    for (const Word& w : f.of_length(len)) {
      IndexResult r = index_of(f, w, power_threshold);
      if (power_threshold <= r.index) {
        out.evidence = true;
        out.witness = w;
        out.power = r.index;
        break;
      }
    }
  }
  if (!out.evidence && is_pushy(sys).pushy) {
    // Pushy systems are strongly repetitive even when the bounded scan found
    // no witness inside the horizon.
    out.evidence = true;
  }
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CircularNonPushy:
      return "circular-non-pushy";
    case Verdict::RejectedPushy:
      return "rejected-pushy";
    case Verdict::RejectedRepetitive:
      return "rejected-repetitive";
  }
  return "?";
}

ClassificationReport circularity_report(const D0LSystem& sys, const FactorSet& f,
                                        ClassificationCaps caps) {
  ClassificationReport rep;
  rep.caps = caps;
  rep.horizon = f.horizon();
  rep.letters = classify_letters(sys.morphism());
  rep.pushy = is_pushy(sys);
  rep.injectivity = injectivity_check(sys, f, f.horizon());
  rep.repetitiveness =
      repetitiveness_bounded(sys, f, caps.power_threshold, caps.repetitiveness_max_word_len);
  if (rep.pushy.pushy && !rep.repetitiveness.evidence) {
    throw InternalError("pushy system without repetitiveness evidence; verdicts are inconsistent");
  }
  if (!rep.pushy.pushy) rep.growth_c = growth_constant(sys, f);
  if (rep.injectivity.certified) {
    rep.delay = synchronizing_delay(sys, f, std::min(caps.delay_cap, f.horizon()));
  }
  if (rep.pushy.pushy) {
    rep.verdict = Verdict::RejectedPushy;
  } else if (rep.repetitiveness.evidence) {
    rep.verdict = Verdict::RejectedRepetitive;
  } else {
    rep.verdict = Verdict::CircularNonPushy;
  }
  return rep;
}

}  // namespace d0l
