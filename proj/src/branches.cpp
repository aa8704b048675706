#include "d0l/branches.hpp"

#include <algorithm>
#include <map>

namespace d0l {

bool Cycle::all_labels_empty() const {
  return std::all_of(labels.begin(), labels.end(), [](const Word& w) { return w.empty(); });
}

std::vector<Cycle> cycles(const ProlongationGraph& g) {
  int n = static_cast<int>(g.vertices.size());
  std::vector<int> state(n, 0);  // 0 unseen, 1 on current path, 2 settled
  std::vector<Cycle> out;
  for (int start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<int> path;
    int v = start;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = g.edges[v].target;
    }
    if (state[v] == 1) {
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<int> cyc(it, path.end());
      std::size_t min_pos =
          std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
      std::rotate(cyc.begin(), cyc.begin() + min_pos, cyc.end());
      Cycle c;
      c.vertices = std::move(cyc);
      for (int u : c.vertices) c.labels.push_back(g.edges[u].label);
      out.push_back(std::move(c));
    }
    for (int u : path) state[u] = 2;
  }
  std::sort(out.begin(), out.end(),
            [](const Cycle& a, const Cycle& b) { return a.vertices[0] < b.vertices[0]; });
  return out;
}

Word cycle_prefix_s(const Cycle& cycle, const ProlongationGraph& g, std::size_t start) {
  std::size_t len = cycle.length();
  if (start >= len) throw InputError("cycle rooting index out of range");
  const Morphism& m = g.morphism;
  // Walking the cycle once from the root, the label collected j steps in is
  // pushed through morphism power len-1-j; the most recent label sits raw at
  // the branch-facing end.
  Word s;
  for (std::size_t j = 0; j < len; ++j) {
    Word piece = m.iterate(cycle.labels[(start + j) % len], static_cast<int>(len - 1 - j));
    if (g.side == Side::L) {
      s = std::move(piece) + s;
    } else {
      s += piece;
    }
  }
  return s;
}

namespace {

void truncate_keep(Word& w, std::size_t len, bool keep_front) {
  if (w.size() <= len) return;
  if (keep_front) {
    w.resize(len);
  } else {
    w.erase(0, w.size() - len);
  }
}

// Prefix (keep_front) or suffix of image^power(w) of length at most len.
// Truncating between applications is sound: the kept end of the image of a
// kept end is the kept end of the image.
Word apply_power_truncated(const Morphism& m, Word w, int power, std::size_t len,
                           bool keep_front) {
  for (int i = 0; i < power; ++i) {
    w = m.apply(w);
    truncate_keep(w, len, keep_front);
  }
  return w;
}

Word materialize_branch(const BranchGenerator& gen, Side side, const Morphism& m,
                        std::size_t len) {
  bool front = side == Side::L;
  if (gen.kind == BranchGenerator::Kind::PeriodicPoint) {
    Word w(1, gen.seed);
    while (w.size() < len) {
      std::size_t before = w.size();
      w = apply_power_truncated(m, std::move(w), gen.period, len, front);
      if (w.size() == before) {
        throw InternalError("periodic-point branch fails to grow");
      }
    }
    return w;
  }
  if (gen.s.empty()) throw InputError("equation branch needs a nonempty label word");
  Word w = gen.s;
  truncate_keep(w, len, front);
  while (w.size() < len) {
    Word next = apply_power_truncated(m, std::move(w), gen.ell, len, front);
    w = front ? gen.s + next : next + gen.s;
    truncate_keep(w, len, front);
  }
  return w;
}

bool verify_pair(const FactorSet& f, Side side, const PPair& v, const Word& branch) {
  if (side == Side::L) return f.contains(v.a + branch) && f.contains(v.b + branch);
  return f.contains(branch + v.a) && f.contains(branch + v.b);
}

bool pair_order(const InfiniteSpecialPair& a, const InfiniteSpecialPair& b) {
  auto key = [](const InfiniteSpecialPair& p) {
    return std::tuple(p.gen.kind, p.gen.seed, p.gen.period, p.gen.s, p.gen.ell, p.vertex);
  };
  return key(a) < key(b);
}

std::vector<InfiniteSpecialPair> infinite_pairs(const D0LSystem& sys, const FactorSet& f,
                                                const ProlongationGraph& g,
                                                std::size_t verify_len, Side side) {
  if (g.side != side) throw InputError("graph side does not match the requested analysis");
  if (!sys.has_fixed_point_seed()) {
    throw PreconditionError("branch analysis is defined for fixed-point systems");
  }
  std::size_t max_pair = 0;
  for (const PPair& p : g.vertices) max_pair = std::max(max_pair, p.max_len());
  if (verify_len + max_pair > f.horizon()) {
    throw PreconditionError("branch verification needs verify_len + max pair length <= horizon");
  }
  const Morphism& m = sys.morphism();
  std::vector<PeriodicSeed> seeds =
      side == Side::L ? m.periodic_points() : m.reversed().periodic_points();

  std::vector<InfiniteSpecialPair> out;
  std::map<std::pair<Letter, int>, std::vector<PPair>> periodic_hosts;

  for (const Cycle& cycle : cycles(g)) {
    if (cycle.all_labels_empty()) {
      for (const PeriodicSeed& ps : seeds) {
        BranchGenerator gen;
        gen.kind = BranchGenerator::Kind::PeriodicPoint;
        gen.seed = ps.seed;
        gen.period = ps.period;
        Word branch = materialize_branch(gen, side, m, verify_len);
        for (int vi : cycle.vertices) {
          if (verify_pair(f, side, g.vertices[vi], branch)) {
            periodic_hosts[{ps.seed, ps.period}].push_back(g.vertices[vi]);
          }
        }
      }
    } else {
      for (std::size_t start = 0; start < cycle.length(); ++start) {
        BranchGenerator gen;
        gen.kind = BranchGenerator::Kind::Equation;
        gen.s = cycle_prefix_s(cycle, g, start);
        gen.ell = static_cast<int>(cycle.length());
        const PPair& v = g.vertices[cycle.vertices[start]];
        Word branch = materialize_branch(gen, side, m, verify_len);
        if (!verify_pair(f, side, v, branch)) {
          throw InternalError("equation branch failed prefix verification at a cycle vertex; "
                              "the system is not behaving circularly");
        }
        out.push_back({side, v, {v}, std::move(gen), verify_len});
      }
    }
  }

  for (auto& [key, hosts] : periodic_hosts) {
    std::sort(hosts.begin(), hosts.end());
    hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
    BranchGenerator gen;
    gen.kind = BranchGenerator::Kind::PeriodicPoint;
    gen.seed = key.first;
    gen.period = key.second;
    out.push_back({side, hosts.front(), hosts, gen, verify_len});
  }
  std::sort(out.begin(), out.end(), pair_order);
  return out;
}

}  // namespace

std::vector<InfiniteSpecialPair> infinite_ls_pairs(const D0LSystem& sys, const FactorSet& f,
                                                   const ProlongationGraph& gl,
                                                   std::size_t verify_len) {
  return infinite_pairs(sys, f, gl, verify_len, Side::L);
}

std::vector<InfiniteSpecialPair> infinite_rs_pairs(const D0LSystem& sys, const FactorSet& f,
                                                   const ProlongationGraph& gr,
                                                   std::size_t verify_len) {
  return infinite_pairs(sys, f, gr, verify_len, Side::R);
}

Word branch_prefix(const InfiniteSpecialPair& pair, const Morphism& m, std::size_t len) {
  return materialize_branch(pair.gen, pair.side, m, len);
}

InfiniteSpecialPair f_preimage_pair(const ProlongationGraph& g, const InfiniteSpecialPair& pair) {
  int vi = g.index_of(pair.vertex);
  if (vi < 0) throw InputError("pair vertex is not in the graph");
  for (const Cycle& cycle : cycles(g)) {
    auto it = std::find(cycle.vertices.begin(), cycle.vertices.end(), vi);
    if (it == cycle.vertices.end()) continue;
    std::size_t pos = static_cast<std::size_t>(it - cycle.vertices.begin());
    std::size_t prev = (pos + cycle.length() - 1) % cycle.length();
    InfiniteSpecialPair out;
    out.side = pair.side;
    out.vertex = g.vertices[cycle.vertices[prev]];
    out.hosts = {out.vertex};
    out.verified_to = 0;
    if (pair.gen.kind == BranchGenerator::Kind::Equation) {
      out.gen.kind = BranchGenerator::Kind::Equation;
      out.gen.ell = pair.gen.ell;
      out.gen.s = cycle_prefix_s(cycle, g, prev);
    } else {
      // One image application back along the orbit of boundary letters.
      out.gen.kind = BranchGenerator::Kind::PeriodicPoint;
      out.gen.period = pair.gen.period;
      Letter cur = pair.gen.seed;
      for (int i = 0; i < pair.gen.period - 1; ++i) {
        const Word& img = g.morphism.image(cur);
        cur = pair.side == Side::L ? img.front() : img.back();
      }
      out.gen.seed = cur;
    }
    return out;
  }
  throw InputError("pair vertex does not lie on a cycle");
}

}  // namespace d0l
