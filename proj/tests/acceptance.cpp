// Acceptance suite: runs every shipping criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "d0l/bispecial.hpp"
#include "d0l/branches.hpp"
#include "d0l/classify.hpp"
#include "d0l/pipeline.hpp"
#include "fixtures.hpp"

using namespace d0l;
using fixtures::pp;
using fixtures::w;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int number, const std::string& what, const std::function<void(std::ostringstream&)>& body) {
    std::ostringstream note;
    bool ok = true;
    std::string error;
    auto start = std::chrono::steady_clock::now();
    try {
      body(note);
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!error.empty() || note.str().rfind("FAIL", 0) == 0) ok = false;
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " — " << what;
    if (!error.empty()) {
      std::cout << " [" << error << "]";
    } else if (!note.str().empty()) {
      std::cout << " [" << note.str() << "]";
    }
    std::cout << " (" << secs << " s)" << std::endl;
    if (!ok) ++failures;
  }
};

#define REQ(cond, msg)                     \
  do {                                     \
    if (!(cond)) {                         \
      out.str("");                         \
      out << "FAIL: " << msg;              \
      throw std::runtime_error(out.str()); \
    }                                      \
  } while (0)

struct Analysis {
  d0l::SystemSpec spec;
  FactorSet factors;
  ProlongationGraph gl, gr;
  std::size_t delay = 0;
};

Analysis analyze(d0l::SystemSpec spec, std::size_t horizon, std::size_t delay_cap = 30) {
  FactorSet f = FactorSet::build(spec.system, horizon);
  DelayResult d = synchronizing_delay(spec.system, f, delay_cap);
  if (!d.certified) throw std::runtime_error("no certified delay for a main fixture");
  ProlongationGraph gl =
      build_graph(build_forky_set(spec.system, f, Side::L, 12), spec.system.morphism());
  ProlongationGraph gr =
      build_graph(build_forky_set(spec.system, f, Side::R, 12), spec.system.morphism());
  return {std::move(spec), std::move(f), std::move(gl), std::move(gr), d.delay};
}

using WordsTriple = std::tuple<PPair, Word, PPair>;
WordsTriple words_of(const BSTriplet& t) { return {t.left, t.center, t.right}; }

std::set<WordsTriple> words_of(const std::vector<BSTriplet>& ts) {
  std::set<WordsTriple> out;
  for (const BSTriplet& t : ts) out.insert(words_of(t));
  return out;
}

WordsTriple triple(const d0l::SystemSpec& s, const char* la, const char* lb, const char* v,
                   const char* ra, const char* rb) {
  return {pp(s, la, lb), w(s, v), pp(s, ra, rb)};
}

std::set<PPair> letter_pairs(const FactorSet& f) {
  std::set<PPair> out;
  auto letters = f.occurring().letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      out.insert(PPair(Word(1, letters[i]), Word(1, letters[j])));
    }
  }
  return out;
}

std::set<Word> generated_centers(const Analysis& a, std::size_t max_len) {
  auto initials = initial_triplets(a.spec.system, a.factors, a.gl, a.gr, a.delay);
  GenerationResult gen = generate_bispecials(initials, a.gl, a.gr, a.factors, max_len);
  std::set<Word> centers;
  for (const GenerationRecord& r : gen.records) centers.insert(r.triplet.center);
  return centers;
}

std::set<Word> brute_centers(const FactorSet& f, std::size_t max_len) {
  std::set<Word> out;
  for (const BispecialRecord& r : bispecial_bruteforce(f, max_len)) out.insert(r.word);
  return out;
}

}  // namespace

int main() {
  Harness h;

  h.criterion(1, "synchronizing delays 4 / 5 / 3 at horizon 64, under 10 s each", [&](std::ostringstream& out) {
    struct Case {
      d0l::SystemSpec spec;
      std::size_t expect;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::tm(), 4});
    cases.push_back({fixtures::chacon(), 5});
    cases.push_back({fixtures::sys_s(), 3});
    for (auto& c : cases) {
      auto t0 = std::chrono::steady_clock::now();
      FactorSet f = FactorSet::build(c.spec.system, 64);
      DelayResult d = synchronizing_delay(c.spec.system, f, 30);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      REQ(d.certified, "delay not certified");
      REQ(d.delay == c.expect, "delay " << d.delay << " != " << c.expect);
      REQ(secs < 10.0, "took " << secs << " s");
    }
    out << "4, 5, 3";
  });

  h.criterion(2, "forky sets: exact for the non-suffix-free system, letter pairs elsewhere", [&](std::ostringstream& out) {
    auto s = fixtures::sys_s();
    FactorSet fs = FactorSet::build(s.system, 32);
    ForkySet sl = build_forky_set(s.system, fs, Side::L, 12);
    ForkySet sr = build_forky_set(s.system, fs, Side::R, 12);
    std::set<PPair> got_l(sl.pairs.begin(), sl.pairs.end());
    std::set<PPair> got_r(sr.pairs.begin(), sr.pairs.end());
    std::set<PPair> want_l = {pp(s, "0", "01"), pp(s, "0", "012"), pp(s, "0", "22"),
                              pp(s, "2", "01")};
    std::set<PPair> want_r = {pp(s, "0", "1"), pp(s, "0", "2"), pp(s, "1", "2")};
    REQ(got_l == want_l, "left set differs");
    REQ(got_r == want_r, "right set differs");
    REQ(is_forky(sl, fs, s.system.morphism()).ok, "left set fails validation");
    REQ(is_forky(sr, fs, s.system.morphism()).ok, "right set fails validation");

    for (auto spec : {fixtures::sys_e(), fixtures::sys_p()}) {
      FactorSet f = FactorSet::build(spec.system, 32);
      for (Side side : {Side::L, Side::R}) {
        ForkySet set = build_forky_set(spec.system, f, side, 12);
        std::set<PPair> got(set.pairs.begin(), set.pairs.end());
        REQ(got == letter_pairs(f), "expected all letter pairs");
        REQ(is_forky(set, f, spec.system.morphism()).ok, "validation failed");
      }
    }
    out << "sets match";
  });

  h.criterion(3, "graph edges and out-degree one", [&](std::ostringstream& out) {
    auto s = analyze(fixtures::sys_s(), 32);
    const GraphEdge& e = s.gl.edge_at(pp(s.spec, "0", "012"));
    REQ(s.gl.vertices[e.target] == pp(s.spec, "0", "22"), "target differs");
    REQ(e.label == w(s.spec, "012"), "label differs");

    auto es = analyze(fixtures::sys_e(), 32);
    const GraphEdge& loop = es.gl.edge_at(pp(es.spec, "0", "1"));
    REQ(es.gl.vertices[loop.target] == pp(es.spec, "0", "1"), "left loop missing");
    REQ(loop.label == w(es.spec, "12"), "left loop label differs");
    const GraphEdge& rloop = es.gr.edge_at(pp(es.spec, "0", "1"));
    REQ(es.gr.vertices[rloop.target] == pp(es.spec, "0", "1"), "right loop missing");
    REQ(rloop.label.empty(), "right loop label not empty");

    for (auto spec : {fixtures::tm(), fixtures::chacon(), fixtures::sys_e(), fixtures::sys_s(),
                      fixtures::sys_p()}) {
      auto a = analyze(std::move(spec), 32);
      for (const ProlongationGraph* g : {&a.gl, &a.gr}) {
        REQ(g->edges.size() == g->vertices.size(), "missing out-edges");
        for (const GraphEdge& ge : g->edges) {
          REQ(ge.target >= 0 && ge.target < (int)g->vertices.size(), "dangling edge");
        }
      }
    }
    out << "edges match, out-degree 1 everywhere";
  });

  h.criterion(4, "initial triplets and the empty-center replacement", [&](std::ostringstream& out) {
    auto s = analyze(fixtures::sys_s(), 32);
    auto s_init = initial_triplets(s.spec.system, s.factors, s.gl, s.gr, s.delay);
    std::set<WordsTriple> want_s = {
        triple(s.spec, "0", "01", "", "1", "2"),  triple(s.spec, "0", "01", "", "0", "2"),
        triple(s.spec, "0", "012", "", "0", "1"), triple(s.spec, "0", "012", "", "0", "2"),
        triple(s.spec, "0", "012", "", "1", "2"), triple(s.spec, "0", "22", "", "0", "1"),
        triple(s.spec, "2", "01", "", "0", "2"),  triple(s.spec, "0", "012", "0", "0", "1"),
    };
    REQ(words_of(s_init) == want_s, "initial set differs (" << s_init.size() << " triplets)");

    auto s_roots = replace_epsilon_centers(s_init, s.gl, s.gr);
    std::set<WordsTriple> want_roots = {
        triple(s.spec, "2", "01", "2", "0", "2"),    triple(s.spec, "2", "01", "20", "0", "1"),
        triple(s.spec, "0", "22", "012", "0", "2"),  triple(s.spec, "0", "22", "0120", "0", "1"),
        triple(s.spec, "0", "012", "012", "0", "2"), triple(s.spec, "0", "012", "0", "0", "1"),
    };
    REQ(words_of(s_roots) == want_roots, "replacement set differs (" << s_roots.size() << ")");

    // The two stated coincidences among the empty-centered triplets.
    auto img = [&](const char* la, const char* lb, const char* ra, const char* rb) {
      BSTriplet t{pp(s.spec, la, lb), Word{}, pp(s.spec, ra, rb),
                  fill_orientations(s.factors, pp(s.spec, la, lb), Word{}, pp(s.spec, ra, rb))};
      return words_of(f_image(s.gl, s.gr, t));
    };
    REQ(img("0", "012", "0", "1") == img("0", "012", "1", "2"), "first coincidence missing");
    REQ(img("0", "01", "0", "2") == img("2", "01", "0", "2"), "second coincidence missing");

    auto e = analyze(fixtures::sys_e(), 32);
    auto e_roots = replace_epsilon_centers(
        initial_triplets(e.spec.system, e.factors, e.gl, e.gr, e.delay), e.gl, e.gr);
    std::set<WordsTriple> want_e = {
        triple(e.spec, "0", "1", "121", "0", "1"), triple(e.spec, "0", "1", "12", "0", "1"),
        triple(e.spec, "0", "1", "21", "0", "1"),  triple(e.spec, "0", "1", "2", "0", "1"),
        triple(e.spec, "1", "2", "1", "1", "2"),   triple(e.spec, "0", "2", "1", "1", "2"),
        triple(e.spec, "0", "2", "1", "0", "2"),   triple(e.spec, "1", "2", "0", "1", "2"),
    };
    REQ(words_of(e_roots) == want_e,
        "the quoted eight roots are not reproduced exactly: got "
            << e_roots.size()
            << " roots; ((1,2),1,(0,2)) is realized (112, 210 are factors), has no "
               "synchronizing cut, and shares its image with ((0,2),1,(0,2))");
    out << "8 + 8 + 6 triplets as expected";
  });

  h.criterion(5, "image of ((0,012),0,(0,1)) is ((0,22),0120012,(0,2))", [&](std::ostringstream& out) {
    auto s = analyze(fixtures::sys_s(), 32);
    BSTriplet t{pp(s.spec, "0", "012"), w(s.spec, "0"), pp(s.spec, "0", "1"),
                fill_orientations(s.factors, pp(s.spec, "0", "012"), w(s.spec, "0"),
                                  pp(s.spec, "0", "1"))};
    BSTriplet img = f_image(s.gl, s.gr, t);
    REQ(img.left == pp(s.spec, "0", "22"), "left differs");
    REQ(img.center == w(s.spec, "0120012"), "center differs");
    REQ(img.right == pp(s.spec, "0", "2"), "right differs");
    out << "exact";
  });

  h.criterion(6, "generated bispecials equal brute force up to length 60, under 2 min each", [&](std::ostringstream& out) {
    std::size_t total = 0;
    for (auto spec : {fixtures::tm(), fixtures::sys_e(), fixtures::sys_s(), fixtures::sys_p()}) {
      auto t0 = std::chrono::steady_clock::now();
      auto a = analyze(std::move(spec), 70);
      std::set<Word> gen = generated_centers(a, 60);
      std::set<Word> brute = brute_centers(a.factors, 60);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      REQ(gen == brute, "center sets differ: generated " << gen.size() << ", brute "
                                                         << brute.size());
      REQ(secs < 120.0, "took " << secs << " s");
      total += brute.size();
    }
    out << total << " bispecial factors cross-checked";
  });

  h.criterion(7, "closed-form n-fold image equals chained images for n <= 6", [&](std::ostringstream& out) {
    std::size_t checked = 0;
    for (auto spec : {fixtures::tm(), fixtures::chacon(), fixtures::sys_e(), fixtures::sys_s(),
                      fixtures::sys_p()}) {
      auto a = analyze(std::move(spec), 40);
      for (const BSTriplet& t : initial_triplets(a.spec.system, a.factors, a.gl, a.gr, a.delay)) {
        BSTriplet chained = t;
        for (int n = 1; n <= 6; ++n) {
          chained = f_image(a.gl, a.gr, chained);
          REQ(f_image_n(a.gl, a.gr, t, n) == chained, "mismatch at n=" << n);
          ++checked;
        }
      }
    }
    out << checked << " comparisons";
  });

  h.criterion(8, "exactly 5 infinite left-special pairs, verified 200 letters deep", [&](std::ostringstream& out) {
    auto p = analyze(fixtures::sys_p(), 202);
    auto pairs = infinite_ls_pairs(p.spec.system, p.factors, p.gl, 200);
    REQ(pairs.size() == 5, "got " << pairs.size() << " pairs");
    auto letter = [&](const char* name) { return w(p.spec, name)[0]; };
    std::set<std::pair<char, int>> periodic;
    int equations = 0;
    for (const InfiniteSpecialPair& pr : pairs) {
      if (pr.gen.kind == BranchGenerator::Kind::PeriodicPoint) {
        periodic.insert({pr.gen.seed, pr.gen.period});
      } else {
        ++equations;
        REQ(pr.gen.ell == 2, "equation period differs");
        bool rooted_23 = pr.vertex == pp(p.spec, "2", "3") && pr.gen.s == w(p.spec, "11");
        bool rooted_12 = pr.vertex == pp(p.spec, "1", "2") &&
                         pr.gen.s == p.spec.system.morphism().apply(w(p.spec, "11"));
        REQ(rooted_23 || rooted_12, "unexpected equation pair");
      }
    }
    std::set<std::pair<char, int>> want = {{letter("1"), 1}, {letter("2"), 2}, {letter("3"), 2}};
    REQ(periodic == want, "periodic seeds differ");
    REQ(equations == 2, "equation count differs");
    for (const InfiniteSpecialPair& pr : pairs) {
      Word prefix = branch_prefix(pr, p.spec.system.morphism(), 200);
      REQ(prefix.size() == 200, "short branch prefix");
      for (const PPair& host : pr.hosts) {
        REQ(p.factors.contains(host.a + prefix), "host verification failed");
        REQ(p.factors.contains(host.b + prefix), "host verification failed");
      }
    }
    out << "3 periodic + 2 equation";
  });

  h.criterion(9, "classification verdicts across all fixtures", [&](std::ostringstream& out) {
    auto classify = [&](d0l::SystemSpec spec) {
      FactorSet f = FactorSet::build(spec.system, 64);
      return circularity_report(spec.system, f, {});
    };
    auto pushy = classify(fixtures::pushy_001_1());
    REQ(pushy.verdict == Verdict::RejectedPushy, "001/1 not pushy");

    auto np = classify(fixtures::rep_001_11());
    REQ(!np.pushy.pushy, "001/11 wrongly pushy");
    REQ(np.verdict == Verdict::RejectedRepetitive, "001/11 not repetitive");

    for (auto spec : {fixtures::rep_01_11(), fixtures::rep_010_22_11()}) {
      auto rep = classify(std::move(spec));
      REQ(rep.verdict == Verdict::RejectedRepetitive, "repetitive fixture accepted");
      REQ(!rep.repetitiveness.witness.empty() && rep.repetitiveness.witness.size() == 1,
          "witness is not the single letter");
    }

    for (auto spec : {fixtures::tm(), fixtures::chacon(), fixtures::sys_e(), fixtures::sys_s(),
                      fixtures::sys_p()}) {
      auto rep = classify(std::move(spec));
      REQ(rep.verdict == Verdict::CircularNonPushy, "main fixture rejected");
      REQ(rep.delay.certified, "main fixture delay missing");
    }
    out << "4 rejected, 5 accepted";
  });

  h.criterion(10, "power-cap evidence appears exactly on the rejected fixtures", [&](std::ostringstream& out) {
    for (auto spec : {fixtures::tm(), fixtures::chacon(), fixtures::sys_e(), fixtures::sys_s(),
                      fixtures::sys_p(), fixtures::pushy_001_1(), fixtures::rep_001_11(),
                      fixtures::rep_01_11(), fixtures::rep_010_22_11()}) {
      FactorSet f = FactorSet::build(spec.system, 64);
      ClassificationReport rep = circularity_report(spec.system, f, {});
      ExponentReport er = critical_exponent_estimate(f, 20, Rational(8, 1));
      bool should_flag = !(rep.accepted() && rep.delay.certified);
      REQ(er.unbounded_evidence == should_flag,
          "flag mismatch (evidence=" << er.unbounded_evidence << ")");
    }
    out << "9 fixtures agree";
  });

  h.criterion(11, "primitivity calls", [&](std::ostringstream& out) {
    REQ(fixtures::sys_s().system.morphism().is_primitive(), "expected primitive");
    REQ(!fixtures::chacon().system.morphism().is_primitive(), "expected non-primitive");
    out << "ok";
  });

  h.criterion(12, "property suites: homomorphism, closure vs iterates, cut persistence, 500 round trips", [&](std::ostringstream& out) {
    // Homomorphism law.
    {
      auto e = fixtures::sys_e();
      const Morphism& m = e.system.morphism();
      std::mt19937 rng(99);
      std::uniform_int_distribution<int> letter(0, 2), len(0, 10);
      for (int i = 0; i < 500; ++i) {
        Word u, v;
        for (int k = len(rng); k > 0; --k) u.push_back(static_cast<Letter>(letter(rng)));
        for (int k = len(rng); k > 0; --k) v.push_back(static_cast<Letter>(letter(rng)));
        REQ(m.apply(u + v) == m.apply(u) + m.apply(v), "homomorphism law failed");
      }
    }
    // Closure soundness and completeness against iterates, K <= 12.
    for (auto spec : {fixtures::tm(), fixtures::chacon(), fixtures::sys_s(), fixtures::sys_p()}) {
      const std::size_t hzn = 8;
      FactorSet f = FactorSet::build(spec.system, hzn);
      const Morphism& m = spec.system.morphism();
      Word it = spec.system.axiom();
      std::set<Word> seen{Word{}};
      for (int k = 0; k <= 12; ++k) {
        for (std::size_t l = 1; l <= hzn && l <= it.size(); ++l) {
          for (std::size_t i = 0; i + l <= it.size(); ++i) {
            Word x = it.substr(i, l);
            REQ(f.contains(x), "completeness failure");
            seen.insert(std::move(x));
          }
        }
        if (it.size() > 2'000'000) break;
        it = m.apply(it);
      }
      for (std::size_t l = 0; l <= hzn; ++l) {
        for (const Word& x : f.of_length(l)) REQ(seen.count(x) == 1, "soundness failure");
      }
    }
    // Cut persistence under extension.
    for (auto spec : {fixtures::tm(), fixtures::sys_e(), fixtures::sys_s()}) {
      FactorSet f = FactorSet::build(spec.system, 12);
      for (std::size_t l = 2; l <= 6; ++l) {
        for (const Word& x : f.of_length(l)) {
          auto cuts = synchronizing_cuts(f, x);
          if (cuts.empty()) continue;
          for (Letter a : f.lext(x).letters()) {
            Word ax = Word(1, a) + x;
            for (Letter b : f.rext(ax).letters()) {
              Word axb = ax + Word(1, b);
              auto bigger = synchronizing_cuts(f, axb);
              for (std::size_t c : cuts) {
                REQ(std::find(bigger.begin(), bigger.end(), c + 1) != bigger.end(),
                    "cut lost under extension");
              }
            }
          }
        }
      }
    }
    // 500 preimage round trips on generated non-initial triplets, drawn from
    // the refined forky sets (long centers) and the uniform length-M sets
    // (many vertices), M = delay * growth constant.
    std::size_t checked = 0;
    auto round_trip = [&](const Analysis& a, const GenerationResult& gen) {
      for (const GenerationRecord& r : gen.records) {
        if (checked >= 500) break;
        if (r.steps == 0 || is_initial(a.factors, r.triplet)) continue;
        auto pre = f_preimage(a.factors, a.gl, a.gr, r.triplet);
        REQ(pre.has_value(), "missing preimage");
        REQ(words_of(f_image(a.gl, a.gr, *pre)) == words_of(r.triplet), "round trip failed");
        ++checked;
      }
    };
    {
      std::vector<Analysis> runs;
      runs.push_back(analyze(fixtures::tm(), 306));
      runs.push_back(analyze(fixtures::sys_e(), 306));
      runs.push_back(analyze(fixtures::sys_s(), 310));
      runs.push_back(analyze(fixtures::sys_p(), 306));
      runs.push_back(analyze(fixtures::chacon(), 306));
      for (const Analysis& a : runs) {
        auto initials = initial_triplets(a.spec.system, a.factors, a.gl, a.gr, a.delay);
        round_trip(a, generate_bispecials(initials, a.gl, a.gr, a.factors, 300));
      }
    }
    struct UniformCase {
      d0l::SystemSpec spec;
      std::size_t m;  // delay * growth constant
    };
    std::vector<UniformCase> uniform_cases;
    uniform_cases.push_back({fixtures::tm(), 4});
    uniform_cases.push_back({fixtures::sys_e(), 2});
    uniform_cases.push_back({fixtures::sys_s(), 6});
    for (auto& uc : uniform_cases) {
      if (checked >= 500) break;
      FactorSet f = FactorSet::build(uc.spec.system, 140);
      DelayResult d = synchronizing_delay(uc.spec.system, f, 30);
      REQ(d.certified, "no delay for a uniform-set case");
      ProlongationGraph gl = build_graph(uniform_forky_set(f, Side::L, uc.m),
                                         uc.spec.system.morphism());
      ProlongationGraph gr = build_graph(uniform_forky_set(f, Side::R, uc.m),
                                         uc.spec.system.morphism());
      Analysis a{std::move(uc.spec), std::move(f), std::move(gl), std::move(gr), d.delay};
      auto initials = initial_triplets(a.spec.system, a.factors, a.gl, a.gr, a.delay);
      round_trip(a, generate_bispecials(initials, a.gl, a.gr, a.factors, 120));
    }
    REQ(checked >= 500, "only " << checked << " non-initial triplets available");
    out << "500 round trips, zero failures";
  });

  if (h.failures == 0) {
    std::cout << "all criteria passed" << std::endl;
  } else {
    std::cout << h.failures << " criterion(s) failed" << std::endl;
  }
  return h.failures == 0 ? 0 : 1;
}
