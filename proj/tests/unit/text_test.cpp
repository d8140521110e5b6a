#include <doctest.h>

#include <fstream>
#include <functional>
#include <numeric>
#include <set>

#include "ssakg/error.hpp"
#include "ssakg/text.hpp"
#include "support/paths.hpp"

using namespace ssakg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ssakg::Error");
  return ErrorCode::InvalidParams;
}

std::filesystem::path write(const testpaths::TempDir& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name, std::ios::binary) << text;
  return dir / name;
}

}  // namespace

TEST_CASE("tokenizing one sentence") {
  CHECK(tokenize("The cat, the hat!", {"the"}) == TokenList{"cat", "hat"});
  CHECK(tokenize("The cat, the hat!", {}) == TokenList{"the", "cat", "the", "hat"});
  CHECK(tokenize("In 1851 there were 3 ships", {}) == TokenList{"in", "there", "were", "ships"});
  CHECK(tokenize("abc1 x2y zz", {}) == TokenList{"zz"});
  CHECK(tokenize("don't -- stop", {}) == TokenList{"don", "t", "stop"});
  CHECK(tokenize("\xC3\x89" "clair CAF\xC3\x89", {}) == TokenList{"\xC3\xA9" "clair", "caf\xC3\xA9"});
  CHECK(tokenize("a\xC3\x97" "b", {}) == TokenList{"a", "b"});  // multiplication sign separates
  CHECK(tokenize("", {}).empty());
}

TEST_CASE("splitting sentences") {
  const auto parts = split_sentences("One two. Three! Four?  Five");
  REQUIRE(parts.size() == 4);
  CHECK(parts[0] == "One two");
  CHECK(parts[1] == " Three");
  CHECK(parts[3] == "  Five");
  CHECK(split_sentences("...!?").empty());
}

TEST_CASE("virtual encoding") {
  Vocabulary v;
  const TokenList aba{"a", "b", "a"};
  const Sequence s = encode_virtual(aba, v);
  CHECK(s == Sequence{*v.find("a"), *v.find("b"), *v.find("a#2")});
  CHECK(std::set<SymbolId>(s.begin(), s.end()).size() == 3);

  const TokenList aaa{"a", "a", "a"};
  const Sequence t = encode_virtual(aaa, v);
  CHECK(t == Sequence{*v.find("a"), *v.find("a#2"), *v.find("a#3")});

  Vocabulary plain;
  const TokenList xyz{"x", "y", "z"};
  CHECK(encode_virtual(xyz, plain) == Sequence{0, 1, 2});
  CHECK(plain.tokens() == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("vocabulary") {
  Vocabulary v;
  CHECK(v.intern("x") == 0);
  CHECK(v.intern("y") == 1);
  CHECK(v.intern("x") == 0);
  CHECK(v.size() == 2);
  CHECK(v.token(1) == "y");
  CHECK_FALSE(v.find("z").has_value());
  CHECK(code_of([&] { v.token(2); }) == ErrorCode::SymbolOutOfRange);
}

TEST_CASE("word frequencies") {
  const std::vector<TokenList> sentences{{"b", "a", "b"}, {"c", "b", "a"}};
  const auto table = word_frequencies(sentences);
  const std::vector<std::pair<std::string, std::size_t>> expected{{"b", 3}, {"a", 2}, {"c", 1}};
  CHECK(table == expected);
}

TEST_CASE("stop-word files") {
  testpaths::TempDir dir;
  const auto path = write(dir, "stop.txt", "# comment\nthe\n\n  a  \nAnd\n");
  const auto stops = load_stopwords(path);
  CHECK(stops == StopWords{"the", "a", "and"});
  const auto empty = write(dir, "empty.txt", "");
  CHECK(load_stopwords(empty).empty());
}

TEST_CASE("preparing a small corpus") {
  testpaths::TempDir dir;
  const auto corpus = write(dir, "c.txt",
                            "The cat sat on the mat. A dog ran far away! Birds sing songs daily? "
                            "Too short. The big red fox jumps high over lazy brown dogs today.");
  const auto stops = write(dir, "s.txt", "the\na\non\n");

  CorpusSpec spec;
  spec.corpus_paths = {corpus};
  spec.stopword_path = stops;
  spec.min_len = 3;
  spec.max_len = 4;
  spec.count = 3;
  spec.seed = 1;
  const PreparedCorpus p = prepare_corpus(spec);
  CHECK(p.survivors == 3);
  CHECK(p.sentences.size() == 3);
  std::set<TokenList> got(p.sentences.begin(), p.sentences.end());
  CHECK(got == std::set<TokenList>{{"cat", "sat", "mat"}, {"dog", "ran", "far", "away"}, {"birds", "sing", "songs", "daily"}});
  // vocabulary follows first occurrence in the selected order
  std::vector<std::string> order;
  for (const auto& s : p.sentences) {
    for (const auto& w : s) {
      if (std::find(order.begin(), order.end(), w) == order.end()) order.push_back(w);
    }
  }
  CHECK(p.vocab.tokens() == order);

  CorpusSpec too_many = spec;
  too_many.count = 4;
  CHECK(code_of([&] { prepare_corpus(too_many); }) == ErrorCode::CorpusTooSmall);

  CorpusSpec no_stops = spec;
  no_stops.stopword_path.reset();
  no_stops.min_len = 4;
  no_stops.max_len = 5;
  no_stops.count = 2;
  const auto q = prepare_corpus(no_stops);
  std::set<TokenList> got2(q.sentences.begin(), q.sentences.end());
  CHECK(got2 == std::set<TokenList>{{"a", "dog", "ran", "far", "away"}, {"birds", "sing", "songs", "daily"}});
}

TEST_CASE("repeated words") {
  testpaths::TempDir dir;
  const auto corpus = write(dir, "c.txt", "Go dog go now. Big cats run fast.");
  CorpusSpec spec;
  spec.corpus_paths = {corpus};
  spec.min_len = 4;
  spec.max_len = 4;
  spec.count = 2;
  const auto p = prepare_corpus(spec);
  CHECK(p.sentences.size() == 2);

  spec.virtualize = false;
  CHECK(code_of([&] { prepare_corpus(spec); }) == ErrorCode::CorpusTooSmall);
  spec.count = 1;
  CHECK(prepare_corpus(spec).sentences == std::vector<TokenList>{{"big", "cats", "run", "fast"}});
}

TEST_CASE("file faults") {
  testpaths::TempDir dir;
  CHECK(code_of([&] { read_utf8_file(dir / "missing.txt"); }) == ErrorCode::IoError);
  const auto bad = write(dir, "bad.txt", "caf\xC3 ok");
  CHECK(code_of([&] { read_utf8_file(bad); }) == ErrorCode::EncodingError);
  const auto truncated = write(dir, "trunc.txt", "ok \xE2\x82");
  CHECK(code_of([&] { read_utf8_file(truncated); }) == ErrorCode::EncodingError);
  const auto overlong = write(dir, "overlong.txt", "\xC0\xAF");
  CHECK(code_of([&] { read_utf8_file(overlong); }) == ErrorCode::EncodingError);
  const auto good = write(dir, "good.txt", "caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80");
  CHECK(read_utf8_file(good).size() == 14);
}

TEST_CASE("prepared corpus files") {
  testpaths::TempDir dir;
  Vocabulary v;
  std::vector<Sequence> seqs;
  seqs.push_back(encode_virtual(TokenList{"a", "b", "a"}, v));
  seqs.push_back(encode_virtual(TokenList{"c", "b"}, v));
  save_prepared(v, seqs, dir / "p.json");
  const auto [v2, s2] = load_prepared(dir / "p.json");
  CHECK(v2 == v);
  CHECK(s2 == seqs);
}

TEST_CASE("bundled corpus: 1000 sentences of 15 words") {
  const auto data = testpaths::data_dir();
  CorpusSpec spec;
  for (const auto& entry : std::filesystem::directory_iterator(data / "corpus")) spec.corpus_paths.push_back(entry.path());
  std::sort(spec.corpus_paths.begin(), spec.corpus_paths.end());
  spec.stopword_path = data / "stopwords_en.txt";
  spec.min_len = 15;
  spec.max_len = 15;
  spec.count = 1000;
  spec.seed = 3;
  const auto p = prepare_corpus(spec);
  REQUIRE(p.sentences.size() == 1000);
  std::size_t total = 0;
  for (const auto& s : p.sentences) {
    CHECK(s.size() == 15);
    total += s.size();
  }
  CHECK(p.survivors >= 1000);

  const auto again = prepare_corpus(spec);
  CHECK(again.sentences == p.sentences);
  CHECK(again.vocab == p.vocab);

  const auto table = word_frequencies(p.sentences);
  std::size_t sum = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    sum += table[i].second;
    if (i > 0) CHECK(table[i - 1].second >= table[i].second);
  }
  CHECK(sum == total);
  CHECK(table.size() == p.vocab.size());

  Vocabulary vocab = p.vocab;
  for (const auto& s : p.sentences) {
    const Sequence enc = encode_virtual(s, vocab);
    CHECK(std::set<SymbolId>(enc.begin(), enc.end()).size() == enc.size());
  }
}
