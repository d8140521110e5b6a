#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssakg/graph.hpp"
#include "ssakg/ordering.hpp"
#include "ssakg/synthgen.hpp"
#include "ssakg/text.hpp"

namespace ssakg::bench {

enum class SourceKind { Synthetic, Corpus, SequenceFile };

// How the element-count histogram scores a recalled ordering against the
// stored sequence.
enum class HistogramMetric {
  Set,         // shared elements, order ignored
  Positional,  // positions holding the right element
};

enum class ReportFormat { Json, Csv };

struct ExperimentConfig {
  SourceKind source = SourceKind::Synthetic;
  GenSpec synthetic;
  CorpusSpec corpus;
  std::filesystem::path sequence_file;
  std::optional<std::size_t> node_count;  // sequence files only; default max id + 1

  std::vector<std::size_t> context_sizes;
  std::vector<Algorithm> algorithms;
  std::size_t trials_per_sequence = 1;
  std::size_t branch_budget = kDefaultBranchBudget;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  HistogramMetric metric = HistogramMetric::Set;
  bool keep_trials = true;

  void validate() const;
};

enum class TrialOutcome { Recalled, NoValidOrdering, AmbiguityOverflow, InconsistentContext };

struct TrialRecord {
  Algorithm algorithm = Algorithm::Weighted;
  std::size_t context_size = 0;
  std::size_t sequence_index = 0;
  std::size_t repeat = 0;
  TrialOutcome outcome = TrialOutcome::Recalled;
  std::size_t candidate_count = 0;
  std::size_t correct_elements = 0;
  bool set_correct = false;
  bool order_correct = false;  // unconditional: first ordering equals the stored sequence
  bool unique = false;
  std::size_t branch_count = 0;

  bool operator==(const TrialRecord&) const = default;
};

struct Summary {
  Algorithm algorithm = Algorithm::Weighted;
  std::size_t context_size = 0;
  std::size_t trials = 0;
  double set_accuracy = 0.0;
  double order_accuracy = 0.0;  // among trials with the right element set
  double order_accuracy_unconditional = 0.0;
  double unique_fraction = 0.0;
  double mean_branch_count = 0.0;
  std::size_t no_valid_ordering = 0;
  std::size_t ambiguity_overflow = 0;
  std::size_t inconsistent_context = 0;
  std::vector<std::size_t> histogram;  // index = correct elements

  bool operator==(const Summary&) const = default;
};

struct ExperimentReport {
  nlohmann::json config;
  std::string rng;
  std::size_t node_count = 0;
  std::size_t sequence_count = 0;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  double measured_density = 0.0;  // symmetric view, comparable to predicted_density
  double directed_density = 0.0;
  double predicted_density = 0.0;
  nlohmann::json corpus;  // null unless the source is a text corpus
  std::vector<Summary> summaries;
  std::vector<TrialRecord> trials;
  double wall_time_seconds = 0.0;

  bool operator==(const ExperimentReport&) const = default;
};

// Number of elements of `returned` that count as correct against `truth`.
// 0 for an empty ordering.
std::size_t correct_elements(std::span<const SymbolId> returned, std::span<const SymbolId> truth,
                             HistogramMetric metric = HistogramMetric::Set);

// 1 - prod(1 - xi_i) over the stored sequences.
double predicted_density(std::span<const Sequence> sequences, std::size_t node_count);

// Stores every sequence in one graph, then recalls each one from seeded
// contexts for every (context size, algorithm). The context for a given
// (sequence, context size, repeat) is shared by all algorithms.
ExperimentReport run_experiment(const ExperimentConfig& cfg, Graph* graph_out = nullptr);

// Aggregates trial records into per (algorithm, context size) summaries, in
// the order the pairs first appear.
std::vector<Summary> summarize(std::span<const TrialRecord> trials, std::size_t max_length);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& doc);

// JSON: one document. CSV: `path` receives the histogram
// (algorithm,context,correct_elements,count) and csv_summary_path(path) the
// summary table.
void write_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path);
std::filesystem::path csv_summary_path(const std::filesystem::path& path);
ExperimentReport read_json_report(const std::filesystem::path& path);

std::string_view to_string(TrialOutcome outcome) noexcept;
std::string_view to_string(HistogramMetric metric) noexcept;
HistogramMetric parse_metric(std::string_view name);
ReportFormat parse_format(std::string_view name);

}  // namespace ssakg::bench
