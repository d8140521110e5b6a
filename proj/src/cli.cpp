#include "ssakg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssakg/bench.hpp"
#include "ssakg/capacity.hpp"
#include "ssakg/error.hpp"
#include "ssakg/graph.hpp"
#include "ssakg/recall.hpp"
#include "ssakg/synthgen.hpp"
#include "ssakg/text.hpp"

namespace ssakg::cli {

namespace {

using nlohmann::json;

std::string real(double v, int digits = 9) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& n : names) out.push_back(parse_algorithm(n));
  return out;
}

// Options shared by the two benchmark commands.
struct BenchOptions {
  std::vector<std::size_t> contexts;
  std::vector<std::string> algorithms;
  std::uint64_t seed = 0;
  std::size_t branch_budget = kDefaultBranchBudget;
  std::size_t threads = 1;
  std::size_t trials = 1;
  std::string out_path;
  std::string format = "json";
  std::string metric = "set";
  std::string save_graph;
  bool no_trials = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--context", contexts, "Context sizes, comma separated")->required()->delimiter(',');
    cmd.add_option("--algo", algorithms, "Ordering algorithms: simple, node, enhanced, weighted (comma separated)")
        ->required()
        ->delimiter(',');
    cmd.add_option("--seed", seed, "Master seed")->required();
    cmd.add_option("--branch-budget", branch_budget, "Maximum orderings explored per recall")
        ->capture_default_str();
    cmd.add_option("--threads", threads, "Worker threads for recall trials")->capture_default_str();
    cmd.add_option("--trials", trials, "Contexts drawn per sequence and context size")->capture_default_str();
    cmd.add_option("--out", out_path, "Report path")->required();
    cmd.add_option("--format", format, "Report format: json or csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    cmd.add_option("--metric", metric, "Histogram metric: set or positional")
        ->capture_default_str()
        ->check(CLI::IsMember({"set", "positional"}));
    cmd.add_option("--save-graph", save_graph, "Also write the graph snapshot to this path");
    cmd.add_flag("--no-trials", no_trials, "Omit the per-trial log from the report");
  }

  void apply(bench::ExperimentConfig& cfg) const {
    cfg.context_sizes = contexts;
    cfg.algorithms = parse_algorithms(algorithms);
    cfg.seed = seed;
    cfg.branch_budget = branch_budget;
    cfg.threads = threads;
    cfg.trials_per_sequence = trials;
    cfg.metric = bench::parse_metric(metric);
    cfg.keep_trials = !no_trials;
  }

  void finish(const bench::ExperimentReport& report, const Graph& graph, std::ostream& out) const {
    bench::write_report(report, bench::parse_format(format), out_path);
    if (!save_graph.empty()) save_snapshot(graph, save_graph);
    out << "nodes " << report.node_count << ", sequences " << report.sequence_count << ", measured density "
        << real(report.measured_density) << ", predicted " << real(report.predicted_density) << '\n';
    out << "algorithm  context  set_acc    order_acc  mean_branches\n";
    for (const auto& s : report.summaries) {
      char line[160];
      std::snprintf(line, sizeof line, "%-10s %7zu  %-9.4f  %-9.4f  %.3f\n", std::string(to_string(s.algorithm)).c_str(),
                    s.context_size, s.set_accuracy, s.order_accuracy, s.mean_branch_count);
      out << line;
    }
    out << "report written to " << out_path << '\n';
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Associative sequence memory over transitive tournaments", "ssakg"};
  app.require_subcommand(1);

  // capacity
  auto* capacity_cmd = app.add_subcommand("capacity", "Density model: xi, capacity at a density, predicted density");
  std::int64_t cap_nodes = 0;
  std::int64_t cap_len = 0;
  double cap_density = static_cast<double>(capacity::kDefaultCriticalDensity);
  std::optional<std::int64_t> cap_sequences;
  std::string cap_format = "text";
  capacity_cmd->add_option("--nodes", cap_nodes, "Graph node count")->required();
  capacity_cmd->add_option("--seq-len", cap_len, "Sequence length")->required();
  capacity_cmd->add_option("--density", cap_density, "Critical density")->capture_default_str();
  capacity_cmd->add_option("--sequences", cap_sequences, "Also predict the density after this many sequences");
  capacity_cmd->add_option("--format", cap_format, "Output format: json or text")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));

  // synth-bench
  auto* synth_cmd = app.add_subcommand("synth-bench", "Store and recall flat random sequences");
  std::size_t syn_nodes = 0;
  std::size_t syn_len = 0;
  std::optional<std::size_t> syn_len_max;
  std::size_t syn_count = 0;
  BenchOptions syn_opts;
  synth_cmd->add_option("--nodes", syn_nodes, "Graph node count")->required();
  synth_cmd->add_option("--seq-len", syn_len, "Sequence length (minimum when --seq-len-max is given)")->required();
  synth_cmd->add_option("--seq-len-max", syn_len_max, "Maximum sequence length");
  synth_cmd->add_option("--sequences", syn_count, "Number of stored sequences")->required();
  syn_opts.attach(*synth_cmd);

  // text-bench
  auto* text_cmd = app.add_subcommand("text-bench", "Store and recall sentences from a text corpus");
  std::vector<std::string> txt_corpus;
  std::string txt_stopwords;
  std::size_t txt_min = 0;
  std::size_t txt_max = 0;
  std::size_t txt_count = 0;
  bool txt_no_virtual = false;
  std::string txt_save_prepared;
  BenchOptions txt_opts;
  text_cmd->add_option("--corpus", txt_corpus, "Corpus file(s), UTF-8 text")->required()->check(CLI::ExistingFile);
  text_cmd->add_option("--stopwords", txt_stopwords, "Stop-word file, one word per line")
      ->required()
      ->check(CLI::ExistingFile);
  text_cmd->add_option("--min-len", txt_min, "Minimum filtered sentence length")->required();
  text_cmd->add_option("--max-len", txt_max, "Maximum filtered sentence length")->required();
  text_cmd->add_option("--sentences", txt_count, "Sentences to store")->required();
  text_cmd->add_flag("--no-virtual", txt_no_virtual, "Drop sentences with repeated words instead of virtualizing");
  text_cmd->add_option("--save-prepared", txt_save_prepared, "Write the prepared sentences and vocabulary as JSON");
  txt_opts.attach(*text_cmd);

  // recall
  auto* recall_cmd = app.add_subcommand("recall", "Recall sequences from a graph snapshot");
  std::string rc_snapshot;
  std::string rc_context;
  std::string rc_algo;
  std::optional<std::size_t> rc_target;
  std::size_t rc_budget = kDefaultBranchBudget;
  std::string rc_vocab;
  std::string rc_format = "text";
  recall_cmd->add_option("--snapshot", rc_snapshot, "Graph snapshot JSON")->required()->check(CLI::ExistingFile);
  recall_cmd->add_option("--context", rc_context, "Context symbols, comma separated")->required();
  recall_cmd->add_option("--algo", rc_algo, "Ordering algorithm")->required();
  recall_cmd->add_option("--target-len", rc_target, "Length of the sequence to recall");
  recall_cmd->add_option("--branch-budget", rc_budget, "Maximum orderings explored")->capture_default_str();
  recall_cmd->add_option("--vocab", rc_vocab, "Prepared-sentences JSON; context and output use its words")
      ->check(CLI::ExistingFile);
  recall_cmd->add_option("--format", rc_format, "Output format: json or text")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));

  // snapshot
  auto* snap_cmd = app.add_subcommand("snapshot", "Save a graph built from a sequence file, or inspect a snapshot");
  std::string snap_save;
  std::string snap_load;
  std::string snap_from;
  std::optional<std::size_t> snap_nodes;
  auto* save_opt = snap_cmd->add_option("--save", snap_save, "Snapshot path to write");
  auto* load_opt = snap_cmd->add_option("--load", snap_load, "Snapshot path to read")->check(CLI::ExistingFile);
  auto* from_opt = snap_cmd->add_option("--from", snap_from, "Sequence list JSON to store (with --save)")
                       ->check(CLI::ExistingFile);
  snap_cmd->add_option("--nodes", snap_nodes, "Node count (default: largest symbol + 1)");
  save_opt->excludes(load_opt);
  save_opt->needs(from_opt);
  from_opt->needs(save_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*capacity_cmd) {
      const capacity::DensityModel model(cap_nodes, cap_len, cap_density);
      const auto xi = static_cast<double>(model.xi());
      const auto cap = static_cast<double>(model.capacity());
      std::optional<double> predicted;
      if (cap_sequences) predicted = static_cast<double>(model.density_after(*cap_sequences));
      if (cap_format == "json") {
        json doc = {{"nodes", cap_nodes}, {"seq_len", cap_len}, {"density", cap_density},
                    {"xi", xi},           {"capacity", cap},    {"capacity_floor", std::floor(cap)}};
        if (predicted) {
          doc["sequences"] = *cap_sequences;
          doc["predicted_density"] = *predicted;
        }
        out << doc.dump(2) << '\n';
      } else {
        out << "xi = " << real(xi) << '\n';
        out << "capacity at density " << real(cap_density) << " = " << real(cap) << " (" << std::floor(cap)
            << " sequences)\n";
        if (predicted) out << "predicted density after " << *cap_sequences << " sequences = " << real(*predicted) << '\n';
      }
    } else if (*synth_cmd) {
      bench::ExperimentConfig cfg;
      cfg.source = bench::SourceKind::Synthetic;
      cfg.synthetic = {syn_nodes, syn_len, syn_len_max.value_or(syn_len), syn_count, syn_opts.seed};
      syn_opts.apply(cfg);
      Graph graph(2);
      const auto report = bench::run_experiment(cfg, &graph);
      syn_opts.finish(report, graph, out);
    } else if (*text_cmd) {
      bench::ExperimentConfig cfg;
      cfg.source = bench::SourceKind::Corpus;
      cfg.corpus.corpus_paths.assign(txt_corpus.begin(), txt_corpus.end());
      cfg.corpus.stopword_path = txt_stopwords;
      cfg.corpus.min_len = txt_min;
      cfg.corpus.max_len = txt_max;
      cfg.corpus.count = txt_count;
      cfg.corpus.seed = txt_opts.seed;
      cfg.corpus.virtualize = !txt_no_virtual;
      txt_opts.apply(cfg);
      Graph graph(2);
      const auto report = bench::run_experiment(cfg, &graph);
      txt_opts.finish(report, graph, out);
      if (!txt_save_prepared.empty()) {
        PreparedCorpus prepared = prepare_corpus(cfg.corpus);
        std::vector<Sequence> encoded;
        for (const auto& sentence : prepared.sentences) encoded.push_back(encode_virtual(sentence, prepared.vocab));
        save_prepared(prepared.vocab, encoded, txt_save_prepared);
      }
    } else if (*recall_cmd) {
      const Graph graph = load_snapshot(rc_snapshot);
      std::optional<Vocabulary> vocab;
      if (!rc_vocab.empty()) vocab = load_prepared(rc_vocab).first;
      std::vector<SymbolId> ids;
      for (const auto& item : split_list(rc_context)) {
        if (vocab) {
          const auto id = vocab->find(item);
          if (!id) throw Error(ErrorCode::InvalidParams, "word '" + item + "' is not in the vocabulary");
          ids.push_back(*id);
        } else {
          try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            ids.push_back(static_cast<SymbolId>(v));
          } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidParams, "context item '" + item + "' is not a symbol id");
          }
        }
      }
      const Context ctx(std::move(ids));
      const RecallResult result = recall_sequence(graph, ctx, parse_algorithm(rc_algo), rc_target, rc_budget);
      const auto name = [&](SymbolId s) { return vocab ? vocab->token(s) : std::to_string(s); };
      if (rc_format == "json") {
        json orderings = json::array();
        for (const auto& o : result.orderings) {
          json items = json::array();
          for (SymbolId s : o) items.push_back(vocab ? json(name(s)) : json(s));
          orderings.push_back(items);
        }
        out << json{{"candidates", result.candidates},
                    {"orderings", orderings},
                    {"branch_count", result.branch_count},
                    {"unique", result.unique}}
                   .dump(2)
            << '\n';
      } else {
        out << "candidates: " << result.candidates.size() << '\n';
        for (const auto& o : result.orderings) {
          for (std::size_t i = 0; i < o.size(); ++i) out << (i ? " " : "") << name(o[i]);
          out << '\n';
        }
        out << "branch_count: " << result.branch_count << '\n';
        out << "unique: " << (result.unique ? "true" : "false") << '\n';
      }
    } else if (*snap_cmd) {
      if (!snap_save.empty()) {
        const auto sequences = load_sequences(snap_from);
        std::size_t max_id = 0;
        for (const auto& s : sequences) {
          for (SymbolId id : s) max_id = std::max<std::size_t>(max_id, id);
        }
        Graph graph(snap_nodes.value_or(max_id + 1));
        for (const auto& s : sequences) graph.store_sequence(s);
        save_snapshot(graph, snap_save);
        out << "saved " << graph.stored_count() << " sequences, " << graph.edge_count() << " edges to " << snap_save
            << '\n';
      } else if (!snap_load.empty()) {
        const Graph graph = load_snapshot(snap_load);
        out << "nodes: " << graph.node_count() << '\n'
            << "stored_count: " << graph.stored_count() << '\n'
            << "edges: " << graph.edge_count() << '\n'
            << "density: " << real(graph.density()) << '\n'
            << "symmetric_density: " << real(graph.symmetric_density()) << '\n';
      } else {
        err << "snapshot: one of --save or --load is required\n";
        return kExitUsageError;
      }
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::InvalidParams ? kExitUsageError : kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace ssakg::cli
