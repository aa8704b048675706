#include "d0l/forky.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "d0l/classify.hpp"

namespace d0l {

namespace {

bool is_suffix(WordView x, WordView y) {  // x suffix of y
  return x.size() <= y.size() && y.compare(y.size() - x.size(), x.size(), x) == 0;
}

bool is_prefix(WordView x, WordView y) {
  return x.size() <= y.size() && y.compare(0, x.size(), x) == 0;
}

bool comparable(Side side, WordView x, WordView y) {
  if (side == Side::L) return is_suffix(x, y) || is_suffix(y, x);
  return is_prefix(x, y) || is_prefix(y, x);
}

bool ends_with(Side side, WordView inner, WordView outer) {
  return side == Side::L ? is_suffix(inner, outer) : is_prefix(inner, outer);
}

Letter boundary_letter(Side side, const Word& w) { return side == Side::L ? w.back() : w.front(); }

// Strips the f-value from both images; for side L the value is a common
// suffix, for side R a common prefix.
std::pair<Word, Word> stripped_images(const Morphism& m, Side side, const PPair& p) {
  Word ia = m.apply(p.a);
  Word ib = m.apply(p.b);
  Word f = f_value(m, side, p);
  if (side == Side::L) {
    ia.resize(ia.size() - f.size());
    ib.resize(ib.size() - f.size());
  } else {
    ia.erase(0, f.size());
    ib.erase(0, f.size());
  }
  return {std::move(ia), std::move(ib)};
}

struct Fit {
  int member = -1;
  bool crossed = false;
};

// Members that sit inside (x1, x2) as a componentwise suffix/prefix pair.
std::vector<Fit> fitting_members(Side side, const std::vector<PPair>& members, const Word& x1,
                                 const Word& x2) {
  std::vector<Fit> fits;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const PPair& q = members[i];
    if (ends_with(side, q.a, x1) && ends_with(side, q.b, x2)) fits.push_back({(int)i, false});
    else if (ends_with(side, q.a, x2) && ends_with(side, q.b, x1)) fits.push_back({(int)i, true});
  }
  return fits;
}

}  // namespace

PPair::PPair(Word x, Word y) {
  if (x.empty() || y.empty()) throw InputError("prolongation pair words must be nonempty");
  if (x == y) throw InputError("prolongation pair words must be distinct");
  if (y < x) std::swap(x, y);
  a = std::move(x);
  b = std::move(y);
}

Word f_value(const Morphism& m, Side side, const PPair& p) {
  Word u = m.apply(p.a);
  Word v = m.apply(p.b);
  std::size_t k = 0;
  std::size_t lim = std::min(u.size(), v.size());
  if (side == Side::L) {
    while (k < lim && u[u.size() - 1 - k] == v[v.size() - 1 - k]) ++k;
    return u.substr(u.size() - k);
  }
  while (k < lim && u[k] == v[k]) ++k;
  return u.substr(0, k);
}

bool aligned(Side side, const PPair& p, const PPair& q) {
  if (comparable(side, p.a, q.a) && comparable(side, p.b, q.b)) return true;
  return comparable(side, p.a, q.b) && comparable(side, p.b, q.a);
}

bool ForkySet::contains(const PPair& p) const {
  return std::binary_search(pairs.begin(), pairs.end(), p);
}

std::size_t ForkySet::max_word_len() const {
  std::size_t best = 0;
  for (const PPair& p : pairs) best = std::max(best, p.max_len());
  return best;
}

ForkyCheck is_forky(const ForkySet& set, const FactorSet& f, const Morphism& m) {
  ForkyCheck check;
  auto fail = [&](int cond, const PPair& p, std::string detail) {
    check.ok = false;
    check.violations.push_back({cond, p, std::move(detail)});
  };

  for (const PPair& p : set.pairs) {
    if (!f.contains(p.a) || !f.contains(p.b)) {
      fail(1, p, "pair word is not a factor");
    } else if (boundary_letter(set.side, p.a) == boundary_letter(set.side, p.b)) {
      fail(1, p, "boundary letters coincide");
    }
  }

  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < set.pairs.size(); ++j) {
      if (aligned(set.side, set.pairs[i], set.pairs[j])) {
        fail(2, set.pairs[i], "aligned with another member");
      }
    }
  }

  // Coverage is checked for factor pairs up to max member length + 1; a
  // longer word truncates to its boundary-side window of that length, which
  // is a factor with the same boundary letter, and any member aligned with
  // the truncation is aligned with the original.
  std::size_t cover_len = std::min(set.max_word_len() + 1, f.horizon());
  std::vector<Word> pool;
  for (std::size_t len = 1; len <= cover_len; ++len) {
    const auto& bucket = f.of_length(len);
    pool.insert(pool.end(), bucket.begin(), bucket.end());
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (boundary_letter(set.side, pool[i]) == boundary_letter(set.side, pool[j])) continue;
      PPair probe(pool[i], pool[j]);
      bool covered = false;
      for (const PPair& q : set.pairs) {
        if (aligned(set.side, q, probe)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        fail(3, probe, "factor pair aligned with no member");
        if (check.violations.size() > 64) return check;
      }
    }
  }

  for (const PPair& p : set.pairs) {
    auto [x1, x2] = stripped_images(m, set.side, p);
    if (fitting_members(set.side, set.pairs, x1, x2).empty()) {
      fail(4, p, "no member continues the stripped image pair");
    }
  }
  return check;
}

namespace {

std::vector<Word> prolongations(const FactorSet& f, Side side, const Word& w) {
  std::vector<Word> out;
  if (w.size() + 1 > f.horizon()) return out;
  for (Letter c : (side == Side::L ? f.lext(w) : f.rext(w)).letters()) {
    Word ext = side == Side::L ? (Word(1, c) + w) : (w + Word(1, c));
    out.push_back(std::move(ext));
  }
  return out;
}

}  // namespace

ForkySet uniform_forky_set(const FactorSet& f, Side side, std::size_t len) {
  if (len < 1 || len > f.horizon()) {
    throw PreconditionError("uniform forky construction needs 1 <= length <= horizon");
  }
  ForkySet set;
  set.side = side;
  const auto& bucket = f.of_length(len);
  for (std::size_t i = 0; i < bucket.size(); ++i) {
    for (std::size_t j = i + 1; j < bucket.size(); ++j) {
      if (boundary_letter(side, bucket[i]) != boundary_letter(side, bucket[j])) {
        set.pairs.emplace_back(bucket[i], bucket[j]);
      }
    }
  }
  std::sort(set.pairs.begin(), set.pairs.end());
  return set;
}

ForkySet build_forky_set(const D0LSystem& sys, const FactorSet& f, Side side,
                         std::size_t max_word_len, std::optional<std::size_t> fallback_len) {
  const Morphism& m = sys.morphism();
  std::set<PPair> members;
  for (Letter a : f.occurring().letters()) {
    for (Letter c : f.occurring().letters()) {
      if (a < c) members.insert(PPair(Word(1, a), Word(1, c)));
    }
  }

  bool need_fallback = false;
  for (int round = 0; !need_fallback; ++round) {
    if (round >= 256) {
      need_fallback = true;
      break;
    }
    std::vector<PPair> pairs(members.begin(), members.end());

    // First condition-(4) failure in canonical order.
    const PPair* failing = nullptr;
    Word x1, x2;
    for (const PPair& p : pairs) {
      std::tie(x1, x2) = stripped_images(m, side, p);
      if (fitting_members(side, pairs, x1, x2).empty()) {
        failing = &p;
        break;
      }
    }
    if (failing == nullptr) {
      // Repair coverage gaps introduced by replacements before accepting.
      ForkySet candidate{side, pairs};
      ForkyCheck check = is_forky(candidate, f, m);
      bool reseeded = false;
      for (const ForkyViolation& v : check.violations) {
        if (v.condition == 3 && members.insert(v.pair).second) reseeded = true;
      }
      if (!reseeded) {
        if (!check.ok) {
          throw PreconditionError(std::string("no ") + side_name(side) +
                                  "-forky set within limits: condition " +
                                  std::to_string(check.violations.front().condition) +
                                  " failed (" + check.violations.front().detail + ")");
        }
        return candidate;
      }
      continue;
    }

    // Decide which side(s) of the failing pair are deficient.
    bool extend_a = false, extend_b = false;
    if (x1.empty()) extend_a = true;
    if (x2.empty()) extend_b = true;
    if (!extend_a && !extend_b) {
      bool found = false;
      for (const PPair& q : pairs) {
        if (comparable(side, q.a, x1) && comparable(side, q.b, x2)) {
          if (x1.size() < q.a.size()) extend_a = true;
          if (x2.size() < q.b.size()) extend_b = true;
          found = true;
        } else if (comparable(side, q.a, x2) && comparable(side, q.b, x1)) {
          if (x2.size() < q.a.size()) extend_b = true;
          if (x1.size() < q.b.size()) extend_a = true;
          found = true;
        }
        if (found) break;
      }
      if (!found) {
        extend_a = extend_b = true;
      }
    }

    std::vector<Word> exts_a =
        extend_a ? prolongations(f, side, failing->a) : std::vector<Word>{failing->a};
    std::vector<Word> exts_b =
        extend_b ? prolongations(f, side, failing->b) : std::vector<Word>{failing->b};
    if (exts_a.empty() || exts_b.empty() ||
        (extend_a && failing->a.size() >= max_word_len) ||
        (extend_b && failing->b.size() >= max_word_len)) {
      need_fallback = true;
      break;
    }

    PPair removed = *failing;
    members.erase(removed);
    for (const Word& wa : exts_a) {
      for (const Word& wb : exts_b) {
        if (wa == wb) continue;
        PPair np(wa, wb);
        bool dup = false;
        for (const PPair& q : members) {
          if (aligned(side, q, np)) {
            dup = true;
            break;
          }
        }
        if (!dup) members.insert(std::move(np));
      }
    }
  }

  std::size_t len;
  if (fallback_len.has_value()) {
    len = *fallback_len;
  } else {
    DelayResult d = synchronizing_delay(sys, f, std::min<std::size_t>(f.horizon(), 30));
    if (!d.certified) {
      throw PreconditionError("forky fallback needs a certified synchronizing delay");
    }
    len = d.delay * growth_constant(sys, f);
  }
  ForkySet uniform = uniform_forky_set(f, side, len);
  ForkyCheck check = is_forky(uniform, f, m);
  if (!check.ok) {
    throw PreconditionError(std::string("no ") + side_name(side) +
                            "-forky set within limits: condition " +
                            std::to_string(check.violations.front().condition) + " failed (" +
                            check.violations.front().detail + ")");
  }
  return uniform;
}

int ProlongationGraph::index_of(const PPair& p) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it == vertices.end() || *it != p) return -1;
  return static_cast<int>(it - vertices.begin());
}

const GraphEdge& ProlongationGraph::edge_at(const PPair& p) const {
  int i = index_of(p);
  if (i < 0) throw InputError("pair is not a vertex of the prolongation graph");
  return edges[i];
}

ProlongationGraph build_graph(const ForkySet& set, const Morphism& m) {
  ProlongationGraph g{set.side, m, set.pairs, {}};
  std::sort(g.vertices.begin(), g.vertices.end());
  g.edges.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const PPair& p = g.vertices[i];
    auto [x1, x2] = stripped_images(m, set.side, p);
    std::vector<Fit> fits = fitting_members(set.side, g.vertices, x1, x2);
    if (fits.size() != 1) {
      throw InternalError("forky set does not induce a unique out-edge at (" + debug_word(p.a) +
                          "," + debug_word(p.b) + "): " + std::to_string(fits.size()) +
                          " continuations");
    }
    g.edges[i] = {fits[0].member, f_value(m, set.side, p), fits[0].crossed};
  }
  return g;
}

std::string to_dot(const ProlongationGraph& g, const std::function<std::string(WordView)>& fmt) {
  std::ostringstream os;
  os << "digraph " << (g.side == Side::L ? "GL" : "GR") << " {\n";
  os << "  rankdir=LR;\n";
  auto name = [&](const PPair& p) { return "(" + fmt(p.a) + "," + fmt(p.b) + ")"; };
  for (const PPair& p : g.vertices) {
    os << "  \"" << name(p) << "\";\n";
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const GraphEdge& e = g.edges[i];
    os << "  \"" << name(g.vertices[i]) << "\" -> \"" << name(g.vertices[e.target])
       << "\" [label=\"" << (e.label.empty() ? std::string("eps") : fmt(e.label)) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace d0l
