#include "d0l/bispecial.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "d0l/classify.hpp"

namespace d0l {

namespace {

void require_fits(const FactorSet& f, const PPair& left, const Word& center, const PPair& right) {
  if (left.max_len() + center.size() + right.max_len() > f.horizon()) {
    throw PreconditionError("triplet words exceed the horizon");
  }
}

// The two surrounding words of one orientation.
std::pair<Word, Word> orientation_words(const PPair& left, const Word& center, const PPair& right,
                                        bool crossed) {
  if (!crossed) return {left.a + center + right.a, left.b + center + right.b};
  return {left.a + center + right.b, left.b + center + right.a};
}

}  // namespace

Orientations fill_orientations(const FactorSet& f, const PPair& left, const Word& center,
                               const PPair& right) {
  require_fits(f, left, center, right);
  Orientations o;
  {
    auto [u, v] = orientation_words(left, center, right, false);
    o.parallel = f.contains(u) && f.contains(v);
  }
  {
    auto [u, v] = orientation_words(left, center, right, true);
    o.crossed = f.contains(u) && f.contains(v);
  }
  return o;
}

BSTriplet f_image(const ProlongationGraph& gl, const ProlongationGraph& gr, const BSTriplet& t) {
  const GraphEdge& el = gl.edge_at(t.left);
  const GraphEdge& er = gr.edge_at(t.right);
  BSTriplet out;
  out.left = gl.vertices[el.target];
  out.right = gr.vertices[er.target];
  out.center = el.label + gl.morphism.apply(t.center) + er.label;
  // A crossed edge swaps which target word continues which source word; the
  // pairing of left and right continuations flips when exactly one side
  // crosses.
  bool flip = el.crossed != er.crossed;
  out.orient.parallel = (t.orient.parallel && !flip) || (t.orient.crossed && flip);
  out.orient.crossed = (t.orient.crossed && !flip) || (t.orient.parallel && flip);
  return out;
}

BSTriplet f_image_n(const ProlongationGraph& gl, const ProlongationGraph& gr, const BSTriplet& t,
                    int n) {
  if (n < 0) throw InputError("image power must be nonnegative");
  if (n == 0) return t;
  const Morphism& m = gl.morphism;

  BSTriplet out;
  // Walk the two functional graphs n steps for the vertices and the
  // orientation; the center comes from the closed form.
  int li = gl.index_of(t.left);
  int ri = gr.index_of(t.right);
  if (li < 0 || ri < 0) throw InputError("triplet pair is not a graph vertex");
  bool flip_total = false;
  for (int i = 0; i < n; ++i) {
    flip_total ^= (gl.edges[li].crossed != gr.edges[ri].crossed);
    li = gl.edges[li].target;
    ri = gr.edges[ri].target;
  }
  out.left = gl.vertices[li];
  out.right = gr.vertices[ri];
  out.orient.parallel = (t.orient.parallel && !flip_total) || (t.orient.crossed && flip_total);
  out.orient.crossed = (t.orient.crossed && !flip_total) || (t.orient.parallel && flip_total);

  Word la = m.iterate(t.left.a, n - 1);
  Word lb = m.iterate(t.left.b, n - 1);
  Word ra = m.iterate(t.right.a, n - 1);
  Word rb = m.iterate(t.right.b, n - 1);
  out.center = f_value(m, Side::L, PPair(la, lb)) + m.iterate(t.center, n) +
               f_value(m, Side::R, PPair(ra, rb));
  return out;
}

std::vector<std::size_t> bs_sync_cuts(const FactorSet& f, const BSTriplet& t) {
  require_fits(f, t.left, t.center, t.right);
  if (!t.orient.any()) throw InputError("triplet has no realized orientation");
  std::vector<char> common(t.center.size() + 1, 1);
  auto restrict_to = [&](const Word& surrounding, std::size_t span_begin) {
    std::vector<char> here(t.center.size() + 1, 0);
    for (std::size_t c : synchronizing_cuts(f, surrounding)) {
      if (c >= span_begin && c <= span_begin + t.center.size()) here[c - span_begin] = 1;
    }
    for (std::size_t i = 0; i < common.size(); ++i) common[i] &= here[i];
  };
  for (bool crossed : {false, true}) {
    if (crossed ? !t.orient.crossed : !t.orient.parallel) continue;
    auto [u, v] = orientation_words(t.left, t.center, t.right, crossed);
    restrict_to(u, t.left.a.size());
    restrict_to(v, t.left.b.size());
  }
  std::vector<std::size_t> cuts;
  for (std::size_t i = 0; i < common.size(); ++i) {
    if (common[i]) cuts.push_back(i);
  }
  return cuts;
}

NonsyncDecomposition nonsync_decomposition(const FactorSet& f, const BSTriplet& t) {
  std::vector<std::size_t> cuts = bs_sync_cuts(f, t);
  if (cuts.empty()) {
    throw PreconditionError("initial triplet has no synchronized decomposition");
  }
  NonsyncDecomposition d;
  std::size_t lo = cuts.front();
  std::size_t hi = cuts.back();
  d.prefix = t.center.substr(0, lo);
  d.middle = t.center.substr(lo, hi - lo);
  d.suffix = t.center.substr(hi);
  return d;
}

namespace {

// All ways of reading w as a concatenation of letter images whose source is
// itself a factor.
std::vector<Word> image_parses(const FactorSet& f, const Morphism& m, WordView w) {
  std::vector<Word> parses;
  Word source;
  auto walk = [&](auto&& self, std::size_t pos) -> void {
    if (pos == w.size()) {
      parses.push_back(source);
      return;
    }
    for (int c = 0; c < m.alphabet_size(); ++c) {
      const Word& img = m.image(static_cast<Letter>(c));
      if (pos + img.size() > w.size()) continue;
      if (w.compare(pos, img.size(), img) != 0) continue;
      source.push_back(static_cast<Letter>(c));
      if (f.contains(source)) self(self, pos + img.size());
      source.pop_back();
    }
  };
  if (w.empty()) {
    parses.emplace_back();
  } else {
    walk(walk, 0);
  }
  return parses;
}

}  // namespace

std::optional<BSTriplet> f_preimage(const FactorSet& f, const ProlongationGraph& gl,
                                    const ProlongationGraph& gr, const BSTriplet& t) {
  std::vector<std::size_t> cuts = bs_sync_cuts(f, t);
  if (cuts.empty()) return std::nullopt;
  std::vector<char> is_cut(t.center.size() + 1, 0);
  for (std::size_t c : cuts) is_cut[c] = 1;

  int tl = gl.index_of(t.left);
  int tr = gr.index_of(t.right);
  if (tl < 0 || tr < 0) throw InputError("triplet pair is not a graph vertex");

  // Candidate label material: an in-edge into the left vertex whose label is
  // a cut-consistent prefix of the center, mirrored on the right; the piece
  // between is a synchronized image with a factor preimage.
  for (std::size_t li = 0; li < gl.vertices.size(); ++li) {
    if (gl.edges[li].target != tl) continue;
    const Word& lp = gl.edges[li].label;
    if (lp.size() > t.center.size() || !is_cut[lp.size()]) continue;
    if (t.center.compare(0, lp.size(), lp) != 0) continue;
    for (std::size_t ri = 0; ri < gr.vertices.size(); ++ri) {
      if (gr.edges[ri].target != tr) continue;
      const Word& rs = gr.edges[ri].label;
      if (lp.size() + rs.size() > t.center.size()) continue;
      std::size_t mid_end = t.center.size() - rs.size();
      if (!is_cut[mid_end]) continue;
      if (t.center.compare(mid_end, rs.size(), rs) != 0) continue;
      WordView mid(t.center.data() + lp.size(), mid_end - lp.size());
      for (const Word& source : image_parses(f, gl.morphism, mid)) {
        Orientations o = fill_orientations(f, gl.vertices[li], source, gr.vertices[ri]);
        if (!o.any()) continue;
        BSTriplet candidate{gl.vertices[li], source, gr.vertices[ri], o};
        BSTriplet forward = f_image(gl, gr, candidate);
        if (forward.left == t.left && forward.center == t.center && forward.right == t.right) {
          return candidate;
        }
      }
    }
  }
  throw InternalError("non-initial triplet admits no image preimage; forky set or horizon defect");
}

std::vector<BSTriplet> initial_triplets(const D0LSystem& sys, const FactorSet& f,
                                        const ProlongationGraph& gl, const ProlongationGraph& gr,
                                        std::size_t delay) {
  if (!sys.has_fixed_point_seed()) {
    throw PreconditionError("initial triplets are defined for fixed-point systems");
  }
  // Initial triplets cannot have centers longer than the delay: a longer
  // center carries a plain synchronizing point, which induces a cut of the
  // triplet. The bound is taken inclusively.
  std::vector<BSTriplet> out;
  for (const BispecialRecord& rec : bispecial_bruteforce(f, delay)) {
    for (const PPair& left : gl.vertices) {
      for (const PPair& right : gr.vertices) {
        Orientations o = fill_orientations(f, left, rec.word, right);
        if (!o.any()) continue;
        BSTriplet t{left, rec.word, right, o};
        if (is_initial(f, t)) out.push_back(std::move(t));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BSTriplet> replace_epsilon_centers(const std::vector<BSTriplet>& initials,
                                               const ProlongationGraph& gl,
                                               const ProlongationGraph& gr) {
  std::map<std::tuple<PPair, Word, PPair>, Orientations> merged;
  for (const BSTriplet& t : initials) {
    BSTriplet r = t.center.empty() ? f_image(gl, gr, t) : t;
    auto& o = merged[{r.left, r.center, r.right}];
    o.parallel |= r.orient.parallel;
    o.crossed |= r.orient.crossed;
  }
  std::vector<BSTriplet> out;
  out.reserve(merged.size());
  for (const auto& [key, o] : merged) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), o});
  }
  std::sort(out.begin(), out.end());
  return out;
}

GenerationResult generate_bispecials(const std::vector<BSTriplet>& initials,
                                     const ProlongationGraph& gl, const ProlongationGraph& gr,
                                     const FactorSet& f, std::size_t max_len) {
  GenerationResult result;
  result.initials = initials;
  std::set<BSTriplet> seen;
  std::deque<GenerationRecord> queue;
  for (std::size_t i = 0; i < initials.size(); ++i) {
    if (initials[i].center.size() > max_len) continue;
    if (seen.insert(initials[i]).second) {
      queue.push_back({static_cast<int>(i), 0, initials[i], false});
    }
  }
  while (!queue.empty()) {
    GenerationRecord rec = std::move(queue.front());
    queue.pop_front();
    if (rec.triplet.center.size() + 1 <= f.horizon() && !f.bispecial(rec.triplet.center)) {
      throw InternalError("generated center is not bispecial: " + debug_word(rec.triplet.center));
    }
    BSTriplet img = f_image(gl, gr, rec.triplet);
    if (img.center.size() <= max_len) {
      if (seen.insert(img).second) {
        queue.push_back({rec.initial_id, rec.steps + 1, std::move(img), false});
      } else if (img.center.size() <= rec.triplet.center.size()) {
        // The chain re-entered a known triplet without growing; the tail is
        // eventually periodic and exploring it further adds nothing.
        rec.degenerate = true;
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace d0l
