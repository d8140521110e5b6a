#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ssakg/graph.hpp"

namespace ssakg {

using TokenList = std::vector<std::string>;
using StopWords = std::unordered_set<std::string>;

// Bijective token <-> SymbolId map with dense ids assigned in insertion order.
class Vocabulary {
 public:
  SymbolId intern(std::string_view token);
  std::optional<SymbolId> find(std::string_view token) const;
  const std::string& token(SymbolId id) const;  // throws SymbolOutOfRange
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, SymbolId> ids_;
};

struct CorpusSpec {
  std::vector<std::filesystem::path> corpus_paths;
  std::optional<std::filesystem::path> stopword_path;
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  // When false, sentences that repeat a word are dropped instead of being
  // encoded with virtual symbols.
  bool virtualize = true;

  void validate() const;
};

struct PreparedCorpus {
  std::vector<TokenList> sentences;
  Vocabulary vocab;  // plain tokens of the selected sentences, first-occurrence order
  std::size_t survivors = 0;
};

// Whole file as UTF-8; throws IoError or EncodingError.
std::string read_utf8_file(const std::filesystem::path& path);

// One word per line, lowercased on load; blank lines and '#' comments are skipped.
StopWords load_stopwords(const std::filesystem::path& path);

// Splits on terminal punctuation (. ! ?); empty pieces are dropped.
std::vector<std::string_view> split_sentences(std::string_view text);

// Lowercased alphabetic words of one sentence minus stop-words. Words are runs
// of letters and digits; runs containing a digit are discarded.
TokenList tokenize(std::string_view sentence, const StopWords& stop_words);

PreparedCorpus prepare_corpus(const CorpusSpec& spec);

// k-th occurrence (k >= 2) of token t becomes the virtual token "t#k"; the
// result has distinct symbols. New tokens are added to vocab.
Sequence encode_virtual(std::span<const std::string> tokens, Vocabulary& vocab);

// (token, count) sorted by count descending, then token ascending.
std::vector<std::pair<std::string, std::size_t>> word_frequencies(std::span<const TokenList> sentences);

// {"vocab": [token, ...], "sentences": [[id, ...], ...]}
void save_prepared(const Vocabulary& vocab, std::span<const Sequence> sentences, const std::filesystem::path& path);
std::pair<Vocabulary, std::vector<Sequence>> load_prepared(const std::filesystem::path& path);

}  // namespace ssakg
