#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "actnext/corpus.hpp"
#include "actnext/error.hpp"
#include "actnext/rng.hpp"

using namespace actnext;
namespace fs = std::filesystem;

namespace {

WordCorpus corpus_of(std::vector<std::string> tokens) {
  WordCorpus c;
  c.name = "test";
  c.tokens = std::move(tokens);
  return c;
}

std::string join(const std::vector<std::string>& toks) {
  std::string s;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) s += ' ';
    s += toks[i];
  }
  return s;
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("Anterior cervical discectomy, and fusion.") ==
        std::vector<std::string>{"anterior", "cervical", "discectomy", "and", "fusion"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("C5-C6 disc") == std::vector<std::string>{"c5", "c6", "disc"});
  CHECK(tokenize("  \t\n ") == std::vector<std::string>{});
  CHECK(tokenize("a...b") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("tokenize is idempotent on its own space-joined output") {
  Rng rng(99);
  const std::string alphabet = "abcXYZ019 ,.-;()[]\n\t/\\'\"";
  for (int rep = 0; rep < 200; ++rep) {
    std::string s;
    std::size_t len = rng.index(60);
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.index(alphabet.size())]);
    auto once = tokenize(s);
    auto twice = tokenize(join(once));
    CHECK(once == twice);
  }
}

TEST_CASE("build_vocabulary thresholds and ordering") {
  auto c = corpus_of({"a", "b", "a"});
  auto v1 = build_vocabulary(c, 1);
  REQUIRE(v1.words == std::vector<std::string>{"a", "b"});
  CHECK(v1.counts == std::vector<std::int64_t>{2, 1});
  CHECK(v1.lookup("a") == 0);
  CHECK(v1.lookup("b") == 1);

  auto v2 = build_vocabulary(c, 2);
  CHECK(v2.words == std::vector<std::string>{"a"});

  CHECK_THROWS_WITH_AS(build_vocabulary(c, 3), "empty vocabulary", UsageError);
}

TEST_CASE("vocabulary order breaks count ties lexicographically") {
  auto v = build_vocabulary(corpus_of({"z", "m", "a", "m"}), 1);
  CHECK(v.words == std::vector<std::string>{"m", "a", "z"});
}

TEST_CASE("boundary token never enters vocabulary or stats") {
  auto c = corpus_of({"a", kDocBoundary, "b", kDocBoundary, "a"});
  auto s = corpus_stats(c);
  CHECK(s.total_tokens == 3);
  CHECK(s.unique_tokens == 2);
  auto v = build_vocabulary(c, 1);
  CHECK_FALSE(v.contains(kDocBoundary));
}

TEST_CASE("corpus_stats") {
  CHECK(corpus_stats(corpus_of({"a", "b", "a"})).total_tokens == 3);
  CHECK(corpus_stats(corpus_of({"a", "b", "a"})).unique_tokens == 2);
  CHECK(corpus_stats(corpus_of({})).total_tokens == 0);
  CHECK(corpus_stats(corpus_of({})).unique_tokens == 0);
}

TEST_CASE("corpus_stats.unique equals vocabulary size at min_count 1") {
  Rng rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<std::string> toks;
    std::size_t len = 1 + rng.index(200);
    for (std::size_t i = 0; i < len; ++i)
      toks.push_back(std::string(1, static_cast<char>('a' + rng.index(9))));
    auto c = corpus_of(toks);
    CHECK(corpus_stats(c).unique_tokens ==
          static_cast<std::int64_t>(build_vocabulary(c, 1).size()));
  }
}

TEST_CASE("coverage") {
  auto v = build_vocabulary(corpus_of({"a", "b", "c"}), 1);
  CHECK(coverage(v, corpus_of({"a", "b", "c", "d"})) == doctest::Approx(1.0));
  CHECK(coverage(v, corpus_of({"x", "y"})) == doctest::Approx(0.0));
  CHECK(coverage(v, corpus_of({"a", "x"})) == doctest::Approx(1.0 / 3.0));

  // 66 of 79 domain words present
  std::vector<std::string> domain_tokens, big;
  for (int i = 0; i < 79; ++i) domain_tokens.push_back("w" + std::to_string(i));
  for (int i = 0; i < 66; ++i) big.push_back("w" + std::to_string(i));
  for (int i = 0; i < 500; ++i) big.push_back("filler" + std::to_string(i % 37));
  auto dv = build_vocabulary(corpus_of(domain_tokens), 1);
  CHECK(coverage(dv, corpus_of(big)) == doctest::Approx(66.0 / 79.0));
}

TEST_CASE("coverage is monotone under corpus extension") {
  Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<std::string> domain;
    for (int i = 0; i < 12; ++i) domain.push_back("d" + std::to_string(i));
    auto dv = build_vocabulary(corpus_of(domain), 1);
    std::vector<std::string> toks;
    double prev = 0.0;
    for (int step = 0; step < 6; ++step) {
      for (int i = 0; i < 5; ++i) {
        if (rng.uniform() < 0.4)
          toks.push_back("d" + std::to_string(rng.index(12)));
        else
          toks.push_back("x" + std::to_string(rng.index(40)));
      }
      double cov = coverage(dv, corpus_of(toks));
      CHECK(cov >= prev);
      prev = cov;
    }
  }
}

TEST_CASE("corpus file roundtrip and ingest directory") {
  fs::path dir = fs::temp_directory_path() / "actnext_corpus_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream(dir / "02_second.txt") << "Beta beta; gamma!";
    std::ofstream(dir / "01_first.txt") << "Alpha one.";
  }
  auto c = ingest_directory(dir.string(), "mini");
  CHECK(c.tokens == std::vector<std::string>{"alpha", "one", kDocBoundary, "beta",
                                             "beta", "gamma"});
  CHECK(c.source_manifest == std::vector<std::string>{"01_first.txt", "02_second.txt"});

  auto file = (dir / "corpus.txt").string();
  save_corpus(c, file);
  auto back = load_corpus(file);
  CHECK(back.tokens == c.tokens);

  // explicit manifest overrides name order
  {
    std::ofstream(dir / "manifest.tsv") << "doc-b\t02_second.txt\ndoc-a\t01_first.txt\n";
  }
  auto c2 = ingest_directory(dir.string(), "mini");
  CHECK(c2.tokens.front() == "beta");
  CHECK(c2.source_manifest == std::vector<std::string>{"doc-b", "doc-a"});
  fs::remove_all(dir);
}
