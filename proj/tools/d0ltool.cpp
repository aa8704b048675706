// d0ltool: analyze a D0L system given as a rule file.
//
// Exit codes: 0 analysis complete, 1 input error, 2 system rejected by the
// classification step (pushy / repetitiveness evidence), 3 limits exceeded.

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "d0l/pipeline.hpp"

namespace {

using namespace d0l;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRejected = 2;
constexpr int kExitLimits = 3;

struct Options {
  std::string seed_file;
  PipelineLimits limits;
  long long power_threshold = 6;
};

std::string fmt_factory(const SymbolTable& symbols, WordView w) { return symbols.render(w); }

void print_factors(const SystemSpec& spec, std::size_t max_len, std::size_t horizon) {
  FactorSet f = FactorSet::build(spec.system, std::max(horizon, max_len + 1));
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const Word& w : f.of_length(len)) {
      std::cout << len << ' ' << (w.empty() ? "<eps>" : spec.symbols.render(w)) << '\n';
    }
  }
}

void print_special(const SystemSpec& spec, std::size_t max_len, std::size_t horizon) {
  FactorSet f = FactorSet::build(spec.system, std::max(horizon, max_len + 2));
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const Word& w : f.of_length(len)) {
      bool ls = f.left_special(w);
      bool rs = f.right_special(w);
      if (!ls && !rs) continue;
      std::cout << (ls && rs ? "BS" : ls ? "LS" : "RS") << ' '
                << (w.empty() ? "<eps>" : spec.symbols.render(w)) << '\n';
    }
  }
}

int run(const Options& opt, const std::string& subcommand, Side side, const std::string& dot_path,
        const std::string& json_path, std::size_t list_max_len, bool check_oracle,
        bool replace_eps) {
  SystemSpec spec = parse_system_file(opt.seed_file);
  PipelineLimits limits = merge_limits(spec.limits, opt.limits);

  if (subcommand == "classify") {
    FactorSet f = FactorSet::build(spec.system, std::max(limits.horizon, limits.delay_cap + 2));
    ClassificationCaps caps{limits.delay_cap, limits.power_threshold,
                            limits.repetitiveness_max_word_len};
    ClassificationReport rep = circularity_report(spec.system, f, caps);
    std::cout << classification_text(rep, spec.symbols);
    return rep.accepted() ? kExitOk : kExitRejected;
  }
  if (subcommand == "factors") {
    print_factors(spec, list_max_len, limits.horizon);
    return kExitOk;
  }
  if (subcommand == "special") {
    print_special(spec, list_max_len, limits.horizon);
    return kExitOk;
  }
  if (subcommand == "exponent") {
    FactorSet f = FactorSet::build(spec.system, limits.horizon);
    ExponentReport rep = critical_exponent_estimate(
        f, std::min(limits.exponent_max_word_len, f.horizon()), limits.exponent_cap);
    std::cout << "max index: " << rep.max_index.str() << " at "
              << spec.symbols.render(rep.argmax) << '\n';
    std::cout << "unbounded evidence: " << (rep.unbounded_evidence ? "yes" : "no");
    if (rep.unbounded_evidence) std::cout << " (witness " << spec.symbols.render(rep.witness) << ")";
    std::cout << '\n';
    return kExitOk;
  }

  auto fmt = [&](WordView w) { return fmt_factory(spec.symbols, w); };

  // Forky sets, graphs, and initial triplets only need classification plus
  // the set construction, not the full generation/branch horizons.
  if (subcommand == "forky" || subcommand == "graph" || subcommand == "initial") {
    FactorSet f = FactorSet::build(spec.system, std::max(limits.horizon, limits.delay_cap + 2));
    ClassificationCaps caps{limits.delay_cap, limits.power_threshold,
                            limits.repetitiveness_max_word_len};
    ClassificationReport cls = circularity_report(spec.system, f, caps);
    if (!cls.accepted()) {
      std::cerr << "system rejected: " << verdict_name(cls.verdict) << '\n';
      return kExitRejected;
    }
    if (!cls.delay.certified) {
      if (!cls.injectivity.certified) {
        std::cerr << "limits exceeded: morphism is not injective on the language, "
                     "synchronization is undefined\n";
      } else {
        std::cerr << "limits exceeded: no synchronizing delay within cap " << cls.delay.cap
                  << '\n';
      }
      return kExitLimits;
    }
    std::optional<std::size_t> fallback;
    if (cls.growth_c) fallback = cls.delay.delay * *cls.growth_c;
    ForkySet fl = build_forky_set(spec.system, f, Side::L, limits.forky_max_word_len, fallback);
    ForkySet fr = build_forky_set(spec.system, f, Side::R, limits.forky_max_word_len, fallback);
    if (subcommand == "forky") {
      for (const PPair& p : fl.pairs) std::cout << "L " << spec.symbols.render_pair(p.a, p.b) << '\n';
      for (const PPair& p : fr.pairs) std::cout << "R " << spec.symbols.render_pair(p.a, p.b) << '\n';
      return kExitOk;
    }
    ProlongationGraph gl = build_graph(fl, spec.system.morphism());
    ProlongationGraph gr = build_graph(fr, spec.system.morphism());
    if (subcommand == "graph") {
      std::string dot = to_dot(side == Side::L ? gl : gr, fmt);
      if (dot_path.empty()) {
        std::cout << dot;
      } else {
        std::ofstream out(dot_path);
        if (!out) throw InputError("cannot write " + dot_path);
        out << dot;
      }
      return kExitOk;
    }
    std::vector<BSTriplet> list = initial_triplets(spec.system, f, gl, gr, cls.delay.delay);
    if (replace_eps) list = replace_epsilon_centers(list, gl, gr);
    for (const BSTriplet& t : list) {
      std::cout << spec.symbols.render_pair(t.left.a, t.left.b) << ' '
                << (t.center.empty() ? "<eps>" : spec.symbols.render(t.center)) << ' '
                << spec.symbols.render_pair(t.right.a, t.right.b) << '\n';
    }
    return kExitOk;
  }

  // The remaining commands run the full pipeline once.
  AnalysisReport rep = run_pipeline(spec, limits);
  if (rep.outcome == PipelineOutcome::RejectedStep1) {
    std::cout << classification_text(rep.classification, spec.symbols);
    std::cerr << "system rejected: " << verdict_name(rep.classification.verdict) << '\n';
    return kExitRejected;
  }
  if (rep.outcome == PipelineOutcome::LimitsExceeded) {
    if (!rep.classification.injectivity.certified) {
      std::cerr << "limits exceeded: morphism is not injective on the language, "
                   "synchronization is undefined\n";
    } else {
      std::cerr << "limits exceeded: no synchronizing delay within cap "
                << rep.classification.delay.cap << '\n';
    }
    return kExitLimits;
  }
  if (subcommand == "bispecial") {
    for (const GenerationRecord& r : rep.records) {
      std::cout << r.initial_id << ' ' << r.steps << ' '
                << (r.triplet.center.empty() ? "<eps>" : spec.symbols.render(r.triplet.center))
                << '\n';
    }
    if (check_oracle) {
      FactorSet f = FactorSet::build(spec.system, rep.analysis_horizon);
      std::set<Word> generated;
      for (const GenerationRecord& r : rep.records) {
        if (r.triplet.center.size() <= limits.max_len) generated.insert(r.triplet.center);
      }
      std::set<Word> brute;
      for (const BispecialRecord& b : bispecial_bruteforce(f, limits.max_len)) {
        brute.insert(b.word);
      }
      if (generated == brute) {
        std::cout << "oracle check: OK (" << brute.size() << " bispecial factors up to length "
                  << limits.max_len << ")\n";
      } else {
        std::cerr << "oracle check FAILED: generated " << generated.size() << ", brute force "
                  << brute.size() << '\n';
        return kExitInput;
      }
    }
    return kExitOk;
  }
  if (subcommand == "branches") {
    auto print = [&](const std::vector<InfiniteSpecialPair>& pairs) {
      for (const InfiniteSpecialPair& p : pairs) {
        std::cout << (p.side == Side::L ? "LS " : "RS ")
                  << spec.symbols.render_pair(p.vertex.a, p.vertex.b);
        if (p.gen.kind == BranchGenerator::Kind::PeriodicPoint) {
          std::cout << " periodic seed=" << spec.symbols.name(p.gen.seed)
                    << " period=" << p.gen.period;
        } else {
          std::cout << " equation s=" << spec.symbols.render(p.gen.s) << " ell=" << p.gen.ell;
        }
        std::cout << " verified_to=" << p.verified_to << '\n';
      }
    };
    print(rep.ls_pairs);
    print(rep.rs_pairs);
    return kExitOk;
  }
  if (subcommand == "report") {
    std::string json = report_to_json(rep, spec.symbols);
    if (json_path.empty()) {
      std::cout << json;
    } else {
      std::ofstream out(json_path);
      if (!out) throw InputError("cannot write " + json_path);
      out << json;
    }
    return kExitOk;
  }
  throw InputError("unknown subcommand " + subcommand);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D0L-system analyzer: circularity classification, forky sets, prolongation "
               "graphs, bispecial generation, infinite special branches"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed-file", opt.seed_file, "system rule file")
      ->required()
      ->envname("D0LTOOL_SEED_FILE");
  app.add_option("--horizon", opt.limits.horizon, "factor-language horizon")
      ->envname("D0LTOOL_HORIZON");
  app.add_option("--delay-cap", opt.limits.delay_cap, "synchronizing-delay search cap")
      ->envname("D0LTOOL_DELAY_CAP");
  app.add_option("--power-threshold", opt.power_threshold, "repetitiveness power threshold")
      ->envname("D0LTOOL_POWER_THRESHOLD");

  std::size_t factors_max_len = 6;
  std::size_t special_max_len = 8;
  std::string dot_path, json_path;
  std::string side_text = "L";
  bool check_oracle = false;
  bool replace_eps = false;

  app.add_subcommand("classify", "pushiness, repetitiveness, and delay verdicts");
  auto* factors = app.add_subcommand("factors", "list factors up to a length");
  factors->add_option("--max-len", factors_max_len, "maximum factor length");
  auto* special = app.add_subcommand("special", "list special factors up to a length");
  special->add_option("--max-len", special_max_len, "maximum factor length");
  app.add_subcommand("forky", "build and list the forky sets");
  auto* graph = app.add_subcommand("graph", "emit a prolongation graph as DOT");
  graph->add_option("--side", side_text, "L or R")->check(CLI::IsMember({"L", "R"}));
  graph->add_option("--dot", dot_path, "output path (stdout when absent)");
  auto* initial = app.add_subcommand("initial", "list initial triplets");
  initial->add_flag("--replace-epsilon", replace_eps,
                    "replace empty-centered triplets by their images");
  auto* bispecial = app.add_subcommand("bispecial", "generate bispecial factors");
  bispecial->add_option("--max-len", opt.limits.max_len, "center length bound")
      ->envname("D0LTOOL_MAX_LEN");
  bispecial->add_flag("--check-oracle", check_oracle, "cross-check against brute force");
  auto* branches = app.add_subcommand("branches", "list infinite special branches");
  branches->add_option("--verify-len", opt.limits.verify_len, "branch verification length")
      ->envname("D0LTOOL_VERIFY_LEN");
  auto* report = app.add_subcommand("report", "full analysis as JSON");
  report->add_option("--json", json_path, "output path (stdout when absent)");

  CLI11_PARSE(app, argc, argv);
  opt.limits.power_threshold = d0l::Rational(opt.power_threshold, 1);

  try {
    std::string sub = app.get_subcommands().front()->get_name();
    std::size_t list_max_len = sub == "factors" ? factors_max_len : special_max_len;
    return run(opt, sub, side_text == "L" ? Side::L : Side::R, dot_path, json_path, list_max_len,
               check_oracle, replace_eps);
  } catch (const d0l::ResourceError& e) {
    std::cerr << "limits exceeded: " << e.what() << '\n';
    return kExitLimits;
  } catch (const d0l::PreconditionError& e) {
    std::cerr << "limits/preconditions: " << e.what() << '\n';
    return kExitLimits;
  } catch (const d0l::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
