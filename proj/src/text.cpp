#include "ssakg/text.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ssakg/error.hpp"
#include "ssakg/random.hpp"

namespace ssakg {

SymbolId Vocabulary::intern(std::string_view token) {
  std::string key(token);
  if (const auto it = ids_.find(key); it != ids_.end()) return it->second;
  const auto id = static_cast<SymbolId>(tokens_.size());
  tokens_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> Vocabulary::find(std::string_view token) const {
  if (const auto it = ids_.find(std::string(token)); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& Vocabulary::token(SymbolId id) const {
  if (id >= tokens_.size()) throw Error(ErrorCode::SymbolOutOfRange, "no token with id " + std::to_string(id));
  return tokens_[id];
}

void CorpusSpec::validate() const {
  if (corpus_paths.empty()) throw Error(ErrorCode::InvalidParams, "at least one corpus file is required");
  if (min_len < 2) throw Error(ErrorCode::InvalidParams, "min_len must be at least 2");
  if (min_len > max_len) throw Error(ErrorCode::InvalidParams, "min_len exceeds max_len");
  if (count < 1) throw Error(ErrorCode::InvalidParams, "count must be at least 1");
}

namespace {

// Decodes one code point starting at text[pos]; advances pos. Returns
// nullopt on malformed input.
std::optional<char32_t> next_code_point(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  std::size_t extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + extra >= text.size()) return std::nullopt;
  for (std::size_t i = 1; i <= extra; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// ASCII plus the Latin-1 / Latin Extended-A/B letter blocks.
bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  return cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

std::string lowercase(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto cp = next_code_point(text, pos);
    if (!cp) throw Error(ErrorCode::EncodingError, "invalid UTF-8");
    append_utf8(out, to_lower(*cp));
  }
  return out;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!next_code_point(text, pos)) return false;
  }
  return true;
}

}  // namespace

std::string read_utf8_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + path.string());
  if (!is_valid_utf8(text)) throw Error(ErrorCode::EncodingError, path.string() + " is not valid UTF-8");
  return text;
}

StopWords load_stopwords(const std::filesystem::path& path) {
  const std::string text = read_utf8_file(path);
  StopWords words;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(lowercase(std::string_view(line).substr(first, last - first + 1)));
  }
  return words;
}

std::vector<std::string_view> split_sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '.' || text[i] == '!' || text[i] == '?') {
      const std::string_view piece = text.substr(start, i - start);
      if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) out.push_back(piece);
      start = i + 1;
    }
  }
  return out;
}

TokenList tokenize(std::string_view sentence, const StopWords& stop_words) {
  TokenList out;
  std::string word;
  bool has_digit = false;
  const auto flush = [&] {
    if (!word.empty() && !has_digit && !stop_words.contains(word)) out.push_back(word);
    word.clear();
    has_digit = false;
  };
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    const auto cp = next_code_point(sentence, pos);
    if (!cp) throw Error(ErrorCode::EncodingError, "invalid UTF-8 in sentence");
    if (is_letter(*cp)) {
      append_utf8(word, to_lower(*cp));
    } else if (is_digit(*cp)) {
      word.push_back(static_cast<char>(*cp));
      has_digit = true;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

PreparedCorpus prepare_corpus(const CorpusSpec& spec) {
  spec.validate();
  const StopWords stop_words = spec.stopword_path ? load_stopwords(*spec.stopword_path) : StopWords{};

  std::vector<TokenList> survivors;
  for (const auto& path : spec.corpus_paths) {
    const std::string text = read_utf8_file(path);
    for (std::string_view sentence : split_sentences(text)) {
      TokenList tokens = tokenize(sentence, stop_words);
      if (tokens.size() < spec.min_len || tokens.size() > spec.max_len) continue;
      if (!spec.virtualize) {
        TokenList sorted = tokens;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      }
      survivors.push_back(std::move(tokens));
    }
  }
  if (survivors.size() < spec.count) {
    throw Error(ErrorCode::CorpusTooSmall, std::to_string(survivors.size()) + " sentences with " +
                                               std::to_string(spec.min_len) + ".." + std::to_string(spec.max_len) +
                                               " words, " + std::to_string(spec.count) + " requested");
  }

  PreparedCorpus out;
  out.survivors = survivors.size();
  Rng rng(spec.seed);
  std::vector<std::size_t> order(survivors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::size_t j = i + rng.below(order.size() - i);
    std::swap(order[i], order[j]);
    out.sentences.push_back(std::move(survivors[order[i]]));
  }
  for (const TokenList& sentence : out.sentences) {
    for (const std::string& token : sentence) out.vocab.intern(token);
  }
  return out;
}

Sequence encode_virtual(std::span<const std::string> tokens, Vocabulary& vocab) {
  std::unordered_map<std::string_view, std::size_t> seen;
  Sequence out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    const std::size_t k = ++seen[token];
    out.push_back(k == 1 ? vocab.intern(token) : vocab.intern(token + "#" + std::to_string(k)));
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> word_frequencies(std::span<const TokenList> sentences) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const TokenList& sentence : sentences) {
    for (const std::string& token : sentence) ++counts[token];
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

void save_prepared(const Vocabulary& vocab, std::span<const Sequence> sentences, const std::filesystem::path& path) {
  const nlohmann::json doc = {{"vocab", vocab.tokens()},
                              {"sentences", std::vector<Sequence>(sentences.begin(), sentences.end())}};
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << doc.dump() << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::pair<Vocabulary, std::vector<Sequence>> load_prepared(const std::filesystem::path& path) {
  const std::string text = read_utf8_file(path);
  try {
    const auto doc = nlohmann::json::parse(text);
    Vocabulary vocab;
    for (const auto& token : doc.at("vocab").get<std::vector<std::string>>()) {
      if (vocab.find(token)) throw Error(ErrorCode::ParseError, "duplicate vocabulary entry '" + token + "'");
      vocab.intern(token);
    }
    auto sentences = doc.at("sentences").get<std::vector<Sequence>>();
    return {std::move(vocab), std::move(sentences)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace ssakg
