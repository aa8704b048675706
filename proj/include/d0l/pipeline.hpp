#ifndef D0L_PIPELINE_HPP
#define D0L_PIPELINE_HPP

#include <optional>
#include <string>

#include "d0l/bispecial.hpp"
#include "d0l/branches.hpp"
#include "d0l/classify.hpp"
#include "d0l/forky.hpp"
#include "d0l/language.hpp"
#include "d0l/sysfile.hpp"

namespace d0l {

struct PipelineLimits {
  std::size_t horizon = 64;
  std::size_t max_len = 60;          // bispecial generation bound
  std::size_t delay_cap = 30;
  Rational power_threshold{6, 1};
  std::size_t repetitiveness_max_word_len = 20;
  std::size_t verify_len = 200;      // branch prefix verification
  std::size_t forky_max_word_len = 12;
  std::size_t exponent_max_word_len = 20;
  Rational exponent_cap{8, 1};
  std::size_t complexity_rows = 64;
};

// File-level settings overridden by explicit values.
PipelineLimits merge_limits(const RunLimits& from_file, const PipelineLimits& base);

enum class PipelineOutcome {
  Complete,       // full analysis ran
  RejectedStep1,  // pushy or repetitive; analysis stops after classification
  LimitsExceeded, // accepted but a certificate did not fit inside the caps
};

struct AnalysisReport {
  PipelineLimits limits;
  PipelineOutcome outcome = PipelineOutcome::Complete;
  ClassificationReport classification;
  std::size_t classification_horizon = 0;

  // Present when the classification accepted the system.
  std::optional<ForkySet> forky_l, forky_r;
  std::optional<ProlongationGraph> graph_l, graph_r;
  std::vector<BSTriplet> initials;
  std::vector<GenerationRecord> records;
  std::vector<InfiniteSpecialPair> ls_pairs, rs_pairs;
  std::vector<std::size_t> complexity;  // C(0..rows)
  std::optional<ExponentReport> exponent;
  std::size_t analysis_horizon = 0;
};

AnalysisReport run_pipeline(const SystemSpec& spec, const PipelineLimits& limits);

// Deterministic JSON rendering (sorted structures, words as symbol strings).
std::string report_to_json(const AnalysisReport& report, const SymbolTable& symbols);

// Human-readable classification summary.
std::string classification_text(const ClassificationReport& rep, const SymbolTable& symbols);

}  // namespace d0l

#endif  // D0L_PIPELINE_HPP
