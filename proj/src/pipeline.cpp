#include "d0l/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace d0l {

using ordered_json = nlohmann::ordered_json;

PipelineLimits merge_limits(const RunLimits& from_file, const PipelineLimits& base) {
  PipelineLimits out = base;
  if (from_file.horizon) out.horizon = *from_file.horizon;
  if (from_file.max_len) out.max_len = *from_file.max_len;
  if (from_file.delay_cap) out.delay_cap = *from_file.delay_cap;
  if (from_file.power_threshold) out.power_threshold = Rational(*from_file.power_threshold, 1);
  if (from_file.verify_len) out.verify_len = *from_file.verify_len;
  return out;
}

AnalysisReport run_pipeline(const SystemSpec& spec, const PipelineLimits& limits) {
  AnalysisReport rep;
  rep.limits = limits;
  const D0LSystem& sys = spec.system;

  std::size_t h0 = std::max(limits.horizon, limits.delay_cap + 2);
  FactorSet f = FactorSet::build(sys, h0);
  rep.classification_horizon = h0;

  ClassificationCaps caps;
  caps.delay_cap = limits.delay_cap;
  caps.power_threshold = limits.power_threshold;
  caps.repetitiveness_max_word_len = limits.repetitiveness_max_word_len;
  rep.classification = circularity_report(sys, f, caps);

  if (!rep.classification.accepted()) {
    rep.outcome = PipelineOutcome::RejectedStep1;
    return rep;
  }
  if (!rep.classification.delay.certified) {
    rep.outcome = PipelineOutcome::LimitsExceeded;
    return rep;
  }
  std::size_t delay = rep.classification.delay.delay;

  std::optional<std::size_t> fallback;
  if (rep.classification.growth_c) fallback = delay * *rep.classification.growth_c;
  rep.forky_l = build_forky_set(sys, f, Side::L, limits.forky_max_word_len, fallback);
  rep.forky_r = build_forky_set(sys, f, Side::R, limits.forky_max_word_len, fallback);
  rep.graph_l = build_graph(*rep.forky_l, sys.morphism());
  rep.graph_r = build_graph(*rep.forky_r, sys.morphism());

  std::size_t max_l = rep.forky_l->max_word_len();
  std::size_t max_r = rep.forky_r->max_word_len();
  std::size_t needed = std::max({h0, limits.max_len + max_l + max_r + 2,
                                 limits.verify_len + std::max(max_l, max_r) + 1, delay + 4});
  if (needed > h0) f = FactorSet::build(sys, needed);
  rep.analysis_horizon = needed;

  rep.initials = initial_triplets(sys, f, *rep.graph_l, *rep.graph_r, delay);
  rep.records = generate_bispecials(rep.initials, *rep.graph_l, *rep.graph_r, f, limits.max_len)
                    .records;
  rep.ls_pairs = infinite_ls_pairs(sys, f, *rep.graph_l, limits.verify_len);
  rep.rs_pairs = infinite_rs_pairs(sys, f, *rep.graph_r, limits.verify_len);

  std::size_t rows = std::min(limits.complexity_rows, f.horizon());
  for (std::size_t n = 0; n <= rows; ++n) rep.complexity.push_back(f.complexity(n));
  rep.exponent = critical_exponent_estimate(
      f, std::min(limits.exponent_max_word_len, f.horizon()), limits.exponent_cap);
  rep.outcome = PipelineOutcome::Complete;
  return rep;
}

namespace {

ordered_json letters_json(const LetterClassification& cls, const SymbolTable& symbols) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < cls.growth.size(); ++i) {
    out[symbols.name(static_cast<Letter>(i))] =
        cls.growth[i] == LetterGrowth::Bounded ? "bounded" : "growing";
  }
  return out;
}

ordered_json pair_json(const PPair& p, const SymbolTable& symbols) {
  return ordered_json::array({symbols.render(p.a), symbols.render(p.b)});
}

ordered_json orientations_json(const Orientations& o) {
  ordered_json arr = ordered_json::array();
  if (o.parallel) arr.push_back("parallel");
  if (o.crossed) arr.push_back("crossed");
  return arr;
}

ordered_json triplet_json(const BSTriplet& t, const SymbolTable& symbols) {
  ordered_json out = ordered_json::object();
  out["left"] = pair_json(t.left, symbols);
  out["center"] = symbols.render(t.center);
  out["right"] = pair_json(t.right, symbols);
  out["orientations"] = orientations_json(t.orient);
  return out;
}

ordered_json graph_json(const ProlongationGraph& g, const SymbolTable& symbols) {
  ordered_json out = ordered_json::object();
  ordered_json vertices = ordered_json::array();
  for (const PPair& p : g.vertices) vertices.push_back(pair_json(p, symbols));
  ordered_json edges = ordered_json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    ordered_json e = ordered_json::object();
    e["from"] = i;
    e["to"] = g.edges[i].target;
    e["label"] = symbols.render(g.edges[i].label);
    e["crossed"] = g.edges[i].crossed;
    edges.push_back(std::move(e));
  }
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  return out;
}

ordered_json classification_json(const ClassificationReport& rep, const SymbolTable& symbols) {
  ordered_json out = ordered_json::object();
  out["letters"] = letters_json(rep.letters, symbols);
  out["pushy"] = rep.pushy.pushy;
  if (!rep.pushy.pushy) out["q"] = rep.pushy.q;
  if (rep.growth_c) out["growth_constant"] = *rep.growth_c;
  ordered_json inj = ordered_json::object();
  inj["certified"] = rep.injectivity.certified;
  inj["horizon"] = rep.injectivity.horizon;
  if (rep.injectivity.counterexample) {
    inj["counterexample"] = ordered_json::array(
        {symbols.render(rep.injectivity.counterexample->first),
         symbols.render(rep.injectivity.counterexample->second)});
  }
  out["injectivity"] = std::move(inj);
  ordered_json delay = ordered_json::object();
  delay["certified"] = rep.delay.certified;
  if (rep.delay.certified) delay["delay"] = rep.delay.delay;
  delay["cap"] = rep.delay.cap;
  out["delay"] = std::move(delay);
  ordered_json rr = ordered_json::object();
  rr["evidence"] = rep.repetitiveness.evidence;
  if (rep.repetitiveness.evidence && !rep.repetitiveness.witness.empty()) {
    rr["witness"] = symbols.render(rep.repetitiveness.witness);
    rr["power"] = rep.repetitiveness.power.str();
  }
  rr["threshold"] = rep.repetitiveness.threshold.str();
  rr["max_word_len"] = rep.repetitiveness.max_word_len;
  out["repetitiveness"] = std::move(rr);
  out["verdict"] = verdict_name(rep.verdict);
  out["horizon"] = rep.horizon;
  return out;
}

ordered_json branch_json(const InfiniteSpecialPair& p, const SymbolTable& symbols,
                         const Morphism& m) {
  ordered_json out = ordered_json::object();
  out["vertex"] = pair_json(p.vertex, symbols);
  ordered_json hosts = ordered_json::array();
  for (const PPair& h : p.hosts) hosts.push_back(pair_json(h, symbols));
  out["hosts"] = std::move(hosts);
  if (p.gen.kind == BranchGenerator::Kind::PeriodicPoint) {
    out["type"] = "periodic";
    out["seed"] = symbols.name(p.gen.seed);
    out["period"] = p.gen.period;
  } else {
    out["type"] = "equation";
    out["s"] = symbols.render(p.gen.s);
    out["ell"] = p.gen.ell;
  }
  out["verified_to"] = p.verified_to;
  out["branch_head"] = symbols.render(branch_prefix(p, m, std::min<std::size_t>(32, std::max<std::size_t>(p.verified_to, 1))));
  return out;
}

const char* outcome_name(PipelineOutcome o) {
  switch (o) {
    case PipelineOutcome::Complete:
      return "complete";
    case PipelineOutcome::RejectedStep1:
      return "rejected-step-1";
    case PipelineOutcome::LimitsExceeded:
      return "limits-exceeded";
  }
  return "?";
}

}  // namespace

std::string report_to_json(const AnalysisReport& report, const SymbolTable& symbols) {
  ordered_json out = ordered_json::object();
  out["outcome"] = outcome_name(report.outcome);
  out["classification"] = classification_json(report.classification, symbols);

  ordered_json forky = ordered_json::object();
  ordered_json graphs = ordered_json::object();
  if (report.forky_l) {
    ordered_json l = ordered_json::array();
    for (const PPair& p : report.forky_l->pairs) l.push_back(pair_json(p, symbols));
    ordered_json r = ordered_json::array();
    for (const PPair& p : report.forky_r->pairs) r.push_back(pair_json(p, symbols));
    forky["L"] = std::move(l);
    forky["R"] = std::move(r);
    graphs["L"] = graph_json(*report.graph_l, symbols);
    graphs["R"] = graph_json(*report.graph_r, symbols);
  }
  out["forky"] = std::move(forky);
  out["graphs"] = std::move(graphs);

  ordered_json initials = ordered_json::array();
  for (const BSTriplet& t : report.initials) initials.push_back(triplet_json(t, symbols));
  out["initial_triplets"] = std::move(initials);

  ordered_json records = ordered_json::array();
  for (const GenerationRecord& r : report.records) {
    ordered_json rec = triplet_json(r.triplet, symbols);
    rec["initial"] = r.initial_id;
    rec["n"] = r.steps;
    if (r.degenerate) rec["degenerate"] = true;
    records.push_back(std::move(rec));
  }
  out["bispecial"] = std::move(records);

  ordered_json branches = ordered_json::object();
  ordered_json ls = ordered_json::array();
  ordered_json rs = ordered_json::array();
  if (report.graph_l) {
    for (const InfiniteSpecialPair& p : report.ls_pairs) {
      ls.push_back(branch_json(p, symbols, report.graph_l->morphism));
    }
    for (const InfiniteSpecialPair& p : report.rs_pairs) {
      rs.push_back(branch_json(p, symbols, report.graph_l->morphism));
    }
  }
  branches["LS"] = std::move(ls);
  branches["RS"] = std::move(rs);
  out["branches"] = std::move(branches);

  ordered_json complexity = ordered_json::array();
  for (std::size_t n = 0; n < report.complexity.size(); ++n) {
    complexity.push_back(ordered_json::array({n, report.complexity[n]}));
  }
  out["complexity"] = std::move(complexity);

  ordered_json exponent = ordered_json::object();
  if (report.exponent) {
    exponent["max_index"] = report.exponent->max_index.str();
    exponent["argmax"] = symbols.render(report.exponent->argmax);
    exponent["unbounded_evidence"] = report.exponent->unbounded_evidence;
    if (report.exponent->unbounded_evidence) {
      exponent["witness"] = symbols.render(report.exponent->witness);
    }
    exponent["cap"] = report.exponent->cap.str();
    exponent["max_word_len"] = report.exponent->max_word_len;
    exponent["words_scanned"] = report.exponent->entries.size();
  }
  out["exponent"] = std::move(exponent);

  ordered_json limits = ordered_json::object();
  limits["horizon"] = report.limits.horizon;
  limits["classification_horizon"] = report.classification_horizon;
  limits["analysis_horizon"] = report.analysis_horizon;
  limits["max_len"] = report.limits.max_len;
  limits["delay_cap"] = report.limits.delay_cap;
  limits["power_threshold"] = report.limits.power_threshold.str();
  limits["verify_len"] = report.limits.verify_len;
  limits["forky_max_word_len"] = report.limits.forky_max_word_len;
  limits["exponent_cap"] = report.limits.exponent_cap.str();
  limits["exponent_max_word_len"] = report.limits.exponent_max_word_len;
  out["limits"] = std::move(limits);

  return out.dump(2) + "\n";
}

std::string classification_text(const ClassificationReport& rep, const SymbolTable& symbols) {
  std::ostringstream os;
  os << "letters:";
  for (std::size_t i = 0; i < rep.letters.growth.size(); ++i) {
    os << ' ' << symbols.name(static_cast<Letter>(i)) << '='
       << (rep.letters.growth[i] == LetterGrowth::Bounded ? "bounded" : "growing");
  }
  os << '\n';
  if (rep.pushy.pushy) {
    os << "pushy: yes\n";
  } else {
    os << "pushy: no (q = " << rep.pushy.q << ")\n";
  }
  if (rep.growth_c) os << "growth constant: " << *rep.growth_c << '\n';
  os << "injective on factors up to " << rep.injectivity.horizon << ": "
     << (rep.injectivity.certified ? "yes" : "NO") << '\n';
  if (rep.injectivity.counterexample) {
    os << "  counterexample: " << symbols.render(rep.injectivity.counterexample->first) << " vs "
       << symbols.render(rep.injectivity.counterexample->second) << '\n';
  }
  if (rep.delay.certified) {
    os << "synchronizing delay: " << rep.delay.delay << " (cap " << rep.delay.cap << ")\n";
  } else {
    os << "synchronizing delay: none found up to " << rep.delay.cap << '\n';
  }
  if (rep.repetitiveness.evidence) {
    os << "repetitiveness: evidence";
    if (!rep.repetitiveness.witness.empty()) {
      os << " (witness " << symbols.render(rep.repetitiveness.witness) << ", power "
         << rep.repetitiveness.power.str() << ")";
    }
    os << '\n';
  } else {
    os << "repetitiveness: no evidence up to length " << rep.repetitiveness.max_word_len
       << ", threshold " << rep.repetitiveness.threshold.str() << '\n';
  }
  os << "verdict: " << verdict_name(rep.verdict);
  if (rep.verdict == Verdict::CircularNonPushy) {
    os << " (certified up to horizon " << rep.horizon
       << " and the caps above: no repetition evidence means the language stays "
          "power-free at this scale, and power-free languages are circular)";
  }
  os << '\n';
  return os.str();
}

}  // namespace d0l
