#include "ssakg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>
#include <unordered_set>

#include "ssakg/error.hpp"
#include "ssakg/random.hpp"
#include "ssakg/recall.hpp"

namespace ssakg::bench {

using nlohmann::json;

std::string_view to_string(TrialOutcome outcome) noexcept {
  switch (outcome) {
    case TrialOutcome::Recalled: return "recalled";
    case TrialOutcome::NoValidOrdering: return "no_valid_ordering";
    case TrialOutcome::AmbiguityOverflow: return "ambiguity_overflow";
    case TrialOutcome::InconsistentContext: return "inconsistent_context";
  }
  return "unknown";
}

std::string_view to_string(HistogramMetric metric) noexcept {
  return metric == HistogramMetric::Set ? "set" : "positional";
}

HistogramMetric parse_metric(std::string_view name) {
  if (name == "set") return HistogramMetric::Set;
  if (name == "positional") return HistogramMetric::Positional;
  throw Error(ErrorCode::InvalidParams, "unknown histogram metric '" + std::string(name) + "'");
}

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::InvalidParams, "unknown report format '" + std::string(name) + "'");
}

namespace {

TrialOutcome parse_outcome(std::string_view name) {
  for (auto o : {TrialOutcome::Recalled, TrialOutcome::NoValidOrdering, TrialOutcome::AmbiguityOverflow,
                 TrialOutcome::InconsistentContext}) {
    if (to_string(o) == name) return o;
  }
  throw Error(ErrorCode::ParseError, "unknown trial outcome '" + std::string(name) + "'");
}

std::string_view source_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::Synthetic: return "synthetic";
    case SourceKind::Corpus: return "corpus";
    case SourceKind::SequenceFile: return "sequence_file";
  }
  return "unknown";
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct LoadedSource {
  std::vector<Sequence> sequences;
  std::size_t node_count = 0;
  json corpus;
};

LoadedSource load_source(const ExperimentConfig& cfg) {
  LoadedSource src;
  switch (cfg.source) {
    case SourceKind::Synthetic:
      src.sequences = gen_sequences(cfg.synthetic);
      src.node_count = cfg.synthetic.node_count;
      break;
    case SourceKind::Corpus: {
      PreparedCorpus prepared = prepare_corpus(cfg.corpus);
      const std::size_t plain = prepared.vocab.size();
      std::size_t tokens = 0;
      for (const TokenList& sentence : prepared.sentences) {
        tokens += sentence.size();
        src.sequences.push_back(encode_virtual(sentence, prepared.vocab));
      }
      src.node_count = prepared.vocab.size();
      json top = json::array();
      const auto freqs = word_frequencies(prepared.sentences);
      for (std::size_t i = 0; i < std::min<std::size_t>(20, freqs.size()); ++i) {
        top.push_back({freqs[i].first, freqs[i].second});
      }
      src.corpus = {{"survivors", prepared.survivors},
                    {"sentences", prepared.sentences.size()},
                    {"tokens", tokens},
                    {"distinct_words", plain},
                    {"virtual_symbols", src.node_count - plain},
                    {"top_words", top}};
      break;
    }
    case SourceKind::SequenceFile: {
      src.sequences = load_sequences(cfg.sequence_file);
      std::size_t max_id = 0;
      for (const Sequence& s : src.sequences) {
        for (SymbolId id : s) max_id = std::max<std::size_t>(max_id, id);
      }
      src.node_count = cfg.node_count.value_or(max_id + 1);
      break;
    }
  }
  if (src.sequences.empty()) throw Error(ErrorCode::InvalidParams, "source yields no sequences");
  return src;
}

struct Unit {
  std::size_t sequence_index;
  std::size_t context_size;
  std::size_t repeat;
};

std::vector<TrialRecord> run_unit(const Graph& graph, const ExperimentConfig& cfg, const Sequence& truth,
                                  const Unit& unit) {
  std::vector<TrialRecord> out;
  const std::uint64_t ctx_seed = derive_seed(cfg.seed, unit.sequence_index, unit.context_size, unit.repeat);
  const Context ctx(draw_context(truth, unit.context_size, ctx_seed));

  std::vector<SymbolId> candidates;
  bool consistent = true;
  try {
    candidates = candidate_set(graph, ctx);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InconsistentContext) throw;
    consistent = false;
  }
  std::vector<SymbolId> truth_sorted = truth;
  std::sort(truth_sorted.begin(), truth_sorted.end());

  for (Algorithm algo : cfg.algorithms) {
    TrialRecord rec;
    rec.algorithm = algo;
    rec.context_size = unit.context_size;
    rec.sequence_index = unit.sequence_index;
    rec.repeat = unit.repeat;
    rec.candidate_count = candidates.size();
    if (!consistent) {
      rec.outcome = TrialOutcome::InconsistentContext;
      out.push_back(rec);
      continue;
    }
    try {
      const RecallResult result =
          recall_from_candidates(graph, ctx, candidates, algo, truth.size(), cfg.branch_budget);
      const Sequence& first = result.orderings.front();
      rec.correct_elements = correct_elements(first, truth, cfg.metric);
      Sequence first_sorted = first;
      std::sort(first_sorted.begin(), first_sorted.end());
      rec.set_correct = first_sorted == truth_sorted;
      rec.order_correct = first == truth;
      rec.unique = result.unique;
      rec.branch_count = result.branch_count;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoValidOrdering) {
        rec.outcome = TrialOutcome::NoValidOrdering;
      } else if (e.code() == ErrorCode::AmbiguityOverflow) {
        // scored from the candidate set, capped at the sequence length
        rec.outcome = TrialOutcome::AmbiguityOverflow;
        rec.branch_count = cfg.branch_budget + 1;
        const auto shared = static_cast<std::size_t>(
            std::count_if(candidates.begin(), candidates.end(), [&](SymbolId s) {
              return std::binary_search(truth_sorted.begin(), truth_sorted.end(), s);
            }));
        rec.correct_elements = std::min(shared, truth.size());
      } else {
        throw;
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (context_sizes.empty()) throw Error(ErrorCode::InvalidParams, "at least one context size is required");
  if (algorithms.empty()) throw Error(ErrorCode::InvalidParams, "at least one algorithm is required");
  for (std::size_t c : context_sizes) {
    if (c < 1) throw Error(ErrorCode::InvalidParams, "context size must be at least 1");
  }
  if (trials_per_sequence < 1) throw Error(ErrorCode::InvalidParams, "trials per sequence must be at least 1");
  if (branch_budget < 1) throw Error(ErrorCode::InvalidParams, "branch budget must be at least 1");
  if (threads < 1) throw Error(ErrorCode::InvalidParams, "thread count must be at least 1");
  switch (source) {
    case SourceKind::Synthetic:
      synthetic.validate();
      if (*std::max_element(context_sizes.begin(), context_sizes.end()) > synthetic.length_min) {
        throw Error(ErrorCode::InvalidParams, "context size exceeds the minimum sequence length");
      }
      break;
    case SourceKind::Corpus:
      corpus.validate();
      if (*std::max_element(context_sizes.begin(), context_sizes.end()) > corpus.min_len) {
        throw Error(ErrorCode::InvalidParams, "context size exceeds the minimum sentence length");
      }
      break;
    case SourceKind::SequenceFile:
      if (sequence_file.empty()) throw Error(ErrorCode::InvalidParams, "sequence file path is empty");
      break;
  }
}

std::size_t correct_elements(std::span<const SymbolId> returned, std::span<const SymbolId> truth,
                             HistogramMetric metric) {
  if (metric == HistogramMetric::Positional) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < std::min(returned.size(), truth.size()); ++i) hits += returned[i] == truth[i];
    return hits;
  }
  const std::unordered_set<SymbolId> truth_set(truth.begin(), truth.end());
  std::unordered_set<SymbolId> counted;
  for (SymbolId s : returned) {
    if (truth_set.contains(s)) counted.insert(s);
  }
  return counted.size();
}

double predicted_density(std::span<const Sequence> sequences, std::size_t node_count) {
  const double pairs = static_cast<double>(node_count) * static_cast<double>(node_count - 1);
  double log_empty = 0.0;
  for (const Sequence& s : sequences) {
    const auto l = static_cast<double>(s.size());
    log_empty += std::log1p(-(l * (l - 1.0)) / pairs);
  }
  return -std::expm1(log_empty);
}

std::vector<Summary> summarize(std::span<const TrialRecord> trials, std::size_t max_length) {
  std::vector<Summary> out;
  std::map<std::pair<int, std::size_t>, std::size_t> slot;
  std::vector<std::size_t> set_hits;
  std::vector<std::size_t> order_hits;
  std::vector<std::size_t> order_hits_given_set;
  std::vector<std::size_t> unique_hits;
  std::vector<double> branch_sum;
  for (const TrialRecord& t : trials) {
    const auto key = std::make_pair(static_cast<int>(t.algorithm), t.context_size);
    auto [it, inserted] = slot.try_emplace(key, out.size());
    if (inserted) {
      Summary s;
      s.algorithm = t.algorithm;
      s.context_size = t.context_size;
      s.histogram.assign(max_length + 1, 0);
      out.push_back(std::move(s));
      set_hits.push_back(0);
      order_hits.push_back(0);
      order_hits_given_set.push_back(0);
      unique_hits.push_back(0);
      branch_sum.push_back(0.0);
    }
    const std::size_t i = it->second;
    Summary& s = out[i];
    ++s.trials;
    ++s.histogram.at(t.correct_elements);
    set_hits[i] += t.set_correct;
    order_hits[i] += t.order_correct;
    order_hits_given_set[i] += t.set_correct && t.order_correct;
    unique_hits[i] += t.unique;
    branch_sum[i] += static_cast<double>(t.branch_count);
    s.no_valid_ordering += t.outcome == TrialOutcome::NoValidOrdering;
    s.ambiguity_overflow += t.outcome == TrialOutcome::AmbiguityOverflow;
    s.inconsistent_context += t.outcome == TrialOutcome::InconsistentContext;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    Summary& s = out[i];
    const auto n = static_cast<double>(s.trials);
    s.set_accuracy = static_cast<double>(set_hits[i]) / n;
    s.order_accuracy = set_hits[i] == 0 ? 0.0 : static_cast<double>(order_hits_given_set[i]) / static_cast<double>(set_hits[i]);
    s.order_accuracy_unconditional = static_cast<double>(order_hits[i]) / n;
    s.unique_fraction = static_cast<double>(unique_hits[i]) / n;
    s.mean_branch_count = branch_sum[i] / n;
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, Graph* graph_out) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  LoadedSource src = load_source(cfg);
  Graph graph(src.node_count);
  std::size_t min_len = SIZE_MAX;
  std::size_t max_len = 0;
  for (const Sequence& s : src.sequences) {
    graph.store_sequence(s);
    min_len = std::min(min_len, s.size());
    max_len = std::max(max_len, s.size());
  }
  for (std::size_t c : cfg.context_sizes) {
    if (c > min_len) throw Error(ErrorCode::InvalidParams, "context size exceeds the shortest stored sequence");
  }

  std::vector<Unit> units;
  for (std::size_t i = 0; i < src.sequences.size(); ++i) {
    for (std::size_t c : cfg.context_sizes) {
      for (std::size_t r = 0; r < cfg.trials_per_sequence; ++r) units.push_back({i, c, r});
    }
  }

  std::vector<std::vector<TrialRecord>> per_unit(units.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t k = next++; k < units.size() && !failed; k = next++) {
      try {
        per_unit[k] = run_unit(graph, cfg, src.sequences[units[k].sequence_index], units[k]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(cfg.threads, std::max<std::size_t>(units.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialRecord> trials;
  trials.reserve(units.size() * cfg.algorithms.size());
  for (auto& records : per_unit) {
    for (auto& r : records) trials.push_back(r);
  }
  // group order: algorithm list order, then context sizes
  std::stable_sort(trials.begin(), trials.end(), [&](const TrialRecord& a, const TrialRecord& b) {
    const auto rank = [&](Algorithm x) {
      return std::find(cfg.algorithms.begin(), cfg.algorithms.end(), x) - cfg.algorithms.begin();
    };
    if (a.algorithm != b.algorithm) return rank(a.algorithm) < rank(b.algorithm);
    return std::find(cfg.context_sizes.begin(), cfg.context_sizes.end(), a.context_size) <
           std::find(cfg.context_sizes.begin(), cfg.context_sizes.end(), b.context_size);
  });

  ExperimentReport report;
  report.config = config_to_json(cfg);
  report.rng = std::string(Rng::kRngName);
  report.node_count = graph.node_count();
  report.sequence_count = src.sequences.size();
  report.min_length = min_len;
  report.max_length = max_len;
  report.measured_density = graph.symmetric_density();
  report.directed_density = graph.density();
  report.predicted_density = predicted_density(src.sequences, graph.node_count());
  report.corpus = std::move(src.corpus);
  report.summaries = summarize(trials, max_len);
  if (cfg.keep_trials) report.trials = std::move(trials);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (graph_out != nullptr) *graph_out = std::move(graph);
  return report;
}

json config_to_json(const ExperimentConfig& cfg) {
  json algos = json::array();
  for (Algorithm a : cfg.algorithms) algos.push_back(to_string(a));
  json source = {{"kind", source_name(cfg.source)}};
  switch (cfg.source) {
    case SourceKind::Synthetic:
      source["nodes"] = cfg.synthetic.node_count;
      source["length_min"] = cfg.synthetic.length_min;
      source["length_max"] = cfg.synthetic.length_max;
      source["count"] = cfg.synthetic.count;
      source["seed"] = cfg.synthetic.seed;
      break;
    case SourceKind::Corpus: {
      json paths = json::array();
      for (const auto& p : cfg.corpus.corpus_paths) paths.push_back(p.generic_string());
      source["corpus"] = paths;
      source["stopwords"] = cfg.corpus.stopword_path ? json(cfg.corpus.stopword_path->generic_string()) : json();
      source["min_len"] = cfg.corpus.min_len;
      source["max_len"] = cfg.corpus.max_len;
      source["count"] = cfg.corpus.count;
      source["seed"] = cfg.corpus.seed;
      source["virtualize"] = cfg.corpus.virtualize;
      break;
    }
    case SourceKind::SequenceFile:
      source["path"] = cfg.sequence_file.generic_string();
      source["nodes"] = cfg.node_count ? json(*cfg.node_count) : json();
      break;
  }
  return {{"source", source},
          {"context_sizes", cfg.context_sizes},
          {"algorithms", algos},
          {"trials_per_sequence", cfg.trials_per_sequence},
          {"branch_budget", cfg.branch_budget},
          {"seed", cfg.seed},
          {"threads", cfg.threads},
          {"metric", to_string(cfg.metric)}};
}

json report_to_json(const ExperimentReport& report) {
  json summaries = json::array();
  for (const Summary& s : report.summaries) {
    summaries.push_back({{"algorithm", to_string(s.algorithm)},
                         {"context", s.context_size},
                         {"trials", s.trials},
                         {"set_accuracy", s.set_accuracy},
                         {"order_accuracy", s.order_accuracy},
                         {"order_accuracy_unconditional", s.order_accuracy_unconditional},
                         {"unique_fraction", s.unique_fraction},
                         {"mean_branch_count", s.mean_branch_count},
                         {"no_valid_ordering", s.no_valid_ordering},
                         {"ambiguity_overflow", s.ambiguity_overflow},
                         {"inconsistent_context", s.inconsistent_context},
                         {"histogram", s.histogram}});
  }
  json trials = json::array();
  for (const TrialRecord& t : report.trials) {
    trials.push_back({{"algorithm", to_string(t.algorithm)},
                      {"context", t.context_size},
                      {"sequence", t.sequence_index},
                      {"repeat", t.repeat},
                      {"outcome", to_string(t.outcome)},
                      {"candidates", t.candidate_count},
                      {"correct_elements", t.correct_elements},
                      {"set_correct", t.set_correct},
                      {"order_correct", t.order_correct},
                      {"unique", t.unique},
                      {"branch_count", t.branch_count}});
  }
  return {{"config", report.config},
          {"rng", report.rng},
          {"node_count", report.node_count},
          {"sequence_count", report.sequence_count},
          {"min_length", report.min_length},
          {"max_length", report.max_length},
          {"measured_density", report.measured_density},
          {"directed_density", report.directed_density},
          {"predicted_density", report.predicted_density},
          {"corpus", report.corpus},
          {"summaries", summaries},
          {"trials", trials},
          {"wall_time_seconds", report.wall_time_seconds}};
}

ExperimentReport report_from_json(const json& doc) {
  try {
    ExperimentReport r;
    r.config = doc.at("config");
    r.rng = doc.at("rng").get<std::string>();
    r.node_count = doc.at("node_count").get<std::size_t>();
    r.sequence_count = doc.at("sequence_count").get<std::size_t>();
    r.min_length = doc.at("min_length").get<std::size_t>();
    r.max_length = doc.at("max_length").get<std::size_t>();
    r.measured_density = doc.at("measured_density").get<double>();
    r.directed_density = doc.at("directed_density").get<double>();
    r.predicted_density = doc.at("predicted_density").get<double>();
    r.corpus = doc.at("corpus");
    for (const auto& s : doc.at("summaries")) {
      Summary out;
      out.algorithm = parse_algorithm(s.at("algorithm").get<std::string>());
      out.context_size = s.at("context").get<std::size_t>();
      out.trials = s.at("trials").get<std::size_t>();
      out.set_accuracy = s.at("set_accuracy").get<double>();
      out.order_accuracy = s.at("order_accuracy").get<double>();
      out.order_accuracy_unconditional = s.at("order_accuracy_unconditional").get<double>();
      out.unique_fraction = s.at("unique_fraction").get<double>();
      out.mean_branch_count = s.at("mean_branch_count").get<double>();
      out.no_valid_ordering = s.at("no_valid_ordering").get<std::size_t>();
      out.ambiguity_overflow = s.at("ambiguity_overflow").get<std::size_t>();
      out.inconsistent_context = s.at("inconsistent_context").get<std::size_t>();
      out.histogram = s.at("histogram").get<std::vector<std::size_t>>();
      r.summaries.push_back(std::move(out));
    }
    for (const auto& t : doc.at("trials")) {
      TrialRecord out;
      out.algorithm = parse_algorithm(t.at("algorithm").get<std::string>());
      out.context_size = t.at("context").get<std::size_t>();
      out.sequence_index = t.at("sequence").get<std::size_t>();
      out.repeat = t.at("repeat").get<std::size_t>();
      out.outcome = parse_outcome(t.at("outcome").get<std::string>());
      out.candidate_count = t.at("candidates").get<std::size_t>();
      out.correct_elements = t.at("correct_elements").get<std::size_t>();
      out.set_correct = t.at("set_correct").get<bool>();
      out.order_correct = t.at("order_correct").get<bool>();
      out.unique = t.at("unique").get<bool>();
      out.branch_count = t.at("branch_count").get<std::size_t>();
      r.trials.push_back(out);
    }
    r.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
}

std::filesystem::path csv_summary_path(const std::filesystem::path& path) {
  std::filesystem::path out = path;
  out.replace_filename(path.stem().string() + "_summary" + path.extension().string());
  return out;
}

void write_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path) {
  const auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + p.string() + " for writing");
    return out;
  };
  if (format == ReportFormat::Json) {
    auto out = open(path);
    out << report_to_json(report).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
    return;
  }
  {
    auto out = open(path);
    out << "algorithm,context,correct_elements,count\n";
    for (const Summary& s : report.summaries) {
      for (std::size_t k = 0; k < s.histogram.size(); ++k) {
        out << to_string(s.algorithm) << ',' << s.context_size << ',' << k << ',' << s.histogram[k] << '\n';
      }
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
  const auto summary_path = csv_summary_path(path);
  auto out = open(summary_path);
  out << "algorithm,context,set_accuracy,order_accuracy,mean_branch_count,measured_density,predicted_density\n";
  for (const Summary& s : report.summaries) {
    out << to_string(s.algorithm) << ',' << s.context_size << ',' << format_real(s.set_accuracy) << ','
        << format_real(s.order_accuracy) << ',' << format_real(s.mean_branch_count) << ','
        << format_real(report.measured_density) << ',' << format_real(report.predicted_density) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + summary_path.string());
}

ExperimentReport read_json_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return report_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace ssakg::bench
