#include "d0l/language.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace d0l {

FactorSet FactorSet::build(const D0LSystem& sys, std::size_t horizon, FactorSetOptions opts) {
  if (horizon < 1) throw PreconditionError("horizon must be >= 1");
  FactorSet f(sys);
  f.horizon_ = horizon;
  const Morphism& m = sys.morphism();

  // Frontier of "maximal" words: windows of length exactly min(horizon, |w|).
  // Any window of length t over a concatenation of nonempty blocks meets at
  // most t blocks, so every factor of image^{k+1}(axiom) of length <= horizon
  // already sits inside the image of a length-<=horizon factor of
  // image^k(axiom); iterating window extraction over the frontier therefore
  // reaches the exact bounded-horizon language.
  std::unordered_set<Word, detail::WordHash, detail::WordEq> frontier;
  std::deque<Word> queue;
  auto add_windows = [&](const Word& w) {
    std::size_t len = std::min(horizon, w.size());
    if (len == 0) return;
    for (std::size_t i = 0; i + len <= w.size(); ++i) {
      WordView view(w.data() + i, len);
      if (frontier.find(view) == frontier.end()) {
        auto [it, fresh] = frontier.emplace(view);
        if (fresh) queue.emplace_back(*it);
        if (frontier.size() > opts.max_factors) {
          throw ResourceError("factor budget exceeded while closing the language (partial result)");
        }
      }
    }
  };

  // Seed with iterates of the axiom until one reaches the horizon or the
  // iterate sequence cycles (finite or stalled languages). Short iterates
  // must be seeded individually: their factors need not survive into later
  // iterates.
  {
    Word w = sys.axiom();
    std::unordered_set<Word, detail::WordHash, detail::WordEq> seen_iterates;
    std::size_t rounds = 0;
    for (;;) {
      add_windows(w);
      if (w.size() >= horizon) break;
      if (!seen_iterates.insert(w).second) break;
      if (++rounds > opts.max_seed_iterations) {
        throw ResourceError("axiom iteration did not reach the horizon within the iteration cap");
      }
      w = m.apply(w);
    }
  }

  while (!queue.empty()) {
    Word x = std::move(queue.front());
    queue.pop_front();
    add_windows(m.apply(x));
  }

  // Close under taking factors: each word pushes its two maximal proper
  // subwords, so each distinct factor is visited once.
  std::vector<Word> stack(frontier.begin(), frontier.end());
  f.factors_.insert(frontier.begin(), frontier.end());
  f.factors_.emplace();  // the empty word
  while (!stack.empty()) {
    Word w = std::move(stack.back());
    stack.pop_back();
    if (w.size() <= 1) continue;
    Word head = w.substr(0, w.size() - 1);
    Word tail = w.substr(1);
    if (f.factors_.insert(head).second) stack.push_back(std::move(head));
    if (f.factors_.insert(tail).second) stack.push_back(std::move(tail));
    if (f.factors_.size() > opts.max_factors) {
      throw ResourceError("factor budget exceeded while closing the language (partial result)");
    }
  }

  f.by_length_.assign(horizon + 1, {});
  for (const Word& w : f.factors_) f.by_length_[w.size()].push_back(w);
  for (auto& bucket : f.by_length_) std::sort(bucket.begin(), bucket.end());

  // Extension index: every factor aw records a in lext(w), every wb records
  // b in rext(w). Exact for |w| + 1 <= horizon.
  for (const Word& w : f.factors_) {
    if (w.empty()) continue;
    f.ext_[w.substr(1)].l |= std::uint64_t{1} << static_cast<unsigned char>(w.front());
    f.ext_[w.substr(0, w.size() - 1)].r |= std::uint64_t{1} << static_cast<unsigned char>(w.back());
  }
  return f;
}

std::size_t FactorSet::complexity(std::size_t len) const {
  if (len > horizon_) throw PreconditionError("complexity query beyond the horizon");
  return by_length_[len].size();
}

const std::vector<Word>& FactorSet::of_length(std::size_t len) const {
  if (len > horizon_) throw PreconditionError("length query beyond the horizon");
  return by_length_[len];
}

LetterSet FactorSet::lext(WordView w) const {
  if (w.size() + 1 > horizon_) {
    throw PreconditionError("extension query needs |w| + 1 <= horizon");
  }
  if (factors_.find(w) == factors_.end()) throw InputError("extension query on a non-factor");
  LetterSet out;
  auto it = ext_.find(w);
  if (it == ext_.end()) return out;
  for (std::uint64_t b = it->second.l; b != 0; b &= b - 1) {
    out.insert(static_cast<Letter>(__builtin_ctzll(b)));
  }
  return out;
}

LetterSet FactorSet::rext(WordView w) const {
  if (w.size() + 1 > horizon_) {
    throw PreconditionError("extension query needs |w| + 1 <= horizon");
  }
  if (factors_.find(w) == factors_.end()) throw InputError("extension query on a non-factor");
  LetterSet out;
  auto it = ext_.find(w);
  if (it == ext_.end()) return out;
  for (std::uint64_t b = it->second.r; b != 0; b &= b - 1) {
    out.insert(static_cast<Letter>(__builtin_ctzll(b)));
  }
  return out;
}

LetterSet FactorSet::occurring() const {
  LetterSet out;
  for (const Word& w : by_length_[std::min<std::size_t>(1, horizon_)]) {
    if (!w.empty()) out.insert(w[0]);
  }
  return out;
}

FactorSet FactorSet::reversed() const {
  FactorSet out(sys_.reversed());
  out.horizon_ = horizon_;
  for (const Word& w : factors_) {
    Word r(w.rbegin(), w.rend());
    out.factors_.insert(std::move(r));
  }
  out.by_length_.assign(horizon_ + 1, {});
  for (const Word& w : out.factors_) out.by_length_[w.size()].push_back(w);
  for (auto& bucket : out.by_length_) std::sort(bucket.begin(), bucket.end());
  for (const auto& [w, e] : ext_) {
    Word r(w.rbegin(), w.rend());
    auto& re = out.ext_[std::move(r)];
    re.l = e.r;
    re.r = e.l;
  }
  return out;
}

std::vector<BispecialRecord> bispecial_bruteforce(const FactorSet& f, std::size_t maxlen) {
  if (maxlen + 2 > f.horizon()) {
    throw PreconditionError("bispecial enumeration needs maxlen + 2 <= horizon");
  }
  std::vector<BispecialRecord> out;
  for (std::size_t len = 0; len <= maxlen; ++len) {
    for (const Word& w : f.of_length(len)) {
      LetterSet l = f.lext(w);
      if (l.size() < 2) continue;
      LetterSet r = f.rext(w);
      if (r.size() < 2) continue;
      out.push_back({w, l, r});
    }
  }
  return out;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

IndexResult index_of(const FactorSet& f, WordView w, Rational cap) {
  if (w.empty()) throw InputError("index of the empty word is undefined");
  std::size_t cap_len = static_cast<std::size_t>(
      (static_cast<__int128>(cap.num) * static_cast<long long>(w.size())) / cap.den);
  std::size_t pmax = std::min(f.horizon(), cap_len);
  // Prefixes of w^inf are nested and the factor set is factor-closed, so the
  // best p is found by extending letter by letter.
  Word prefix;
  prefix.reserve(pmax);
  std::size_t best = 0;
  for (std::size_t p = 1; p <= pmax; ++p) {
    prefix.push_back(w[(p - 1) % w.size()]);
    if (f.contains(prefix)) {
      best = p;
    } else {
      break;
    }
  }
  bool truncated = best == pmax;
  bool cap_hit = truncated && cap_len <= f.horizon();
  return {Rational(static_cast<long long>(best), static_cast<long long>(w.size())), truncated,
          cap_hit};
}

ExponentReport critical_exponent_estimate(const FactorSet& f, std::size_t max_word_len,
                                          Rational cap) {
  if (max_word_len > f.horizon()) {
    throw PreconditionError("exponent scan needs max_word_len <= horizon");
  }
  ExponentReport rep;
  rep.max_word_len = max_word_len;
  rep.cap = cap;
  rep.max_index = Rational(0, 1);
  for (std::size_t len = 1; len <= max_word_len; ++len) {
    for (const Word& w : f.of_length(len)) {
      IndexResult r = index_of(f, w, cap);
      rep.entries.push_back({w, r.index, r.cap_hit});
      if (rep.max_index < r.index) {
        rep.max_index = r.index;
        rep.argmax = w;
      }
      if (r.cap_hit && !rep.unbounded_evidence) {
        rep.unbounded_evidence = true;
        rep.witness = w;
      }
    }
  }
  return rep;
}

}  // namespace d0l
