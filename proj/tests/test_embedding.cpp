#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "actnext/embedding.hpp"
#include "actnext/error.hpp"
#include "actnext/rng.hpp"

using namespace actnext;
namespace fs = std::filesystem;

namespace {

WordCorpus corpus_of(std::vector<std::string> tokens, std::string name = "test") {
  WordCorpus c;
  c.name = std::move(name);
  c.tokens = std::move(tokens);
  return c;
}

// Two groups of words used in identical contexts: members of a group are
// interchangeable, the groups never mix, and the two groups' context words
// are disjoint. Used as the separation oracle for both trainers.
WordCorpus interchangeable_corpus(int repeats, Rng& rng) {
  std::vector<std::string> ga = {"ga0", "ga1", "ga2"};
  std::vector<std::string> gb = {"gb0", "gb1", "gb2"};
  std::vector<std::string> toks;
  for (int r = 0; r < repeats; ++r) {
    if (rng.uniform() < 0.5) {
      toks.push_back("la");
      toks.push_back(ga[rng.index(ga.size())]);
      toks.push_back("ra");
    } else {
      toks.push_back("lb");
      toks.push_back(gb[rng.index(gb.size())]);
      toks.push_back("rb");
    }
  }
  return corpus_of(std::move(toks), "interchangeable");
}

std::span<const double> row(const EmbeddingTable& t, const std::string& w) {
  const double* r = t.row_of(w);
  REQUIRE(r != nullptr);
  return {r, t.dim};
}

void check_group_separation(const EmbeddingTable& t) {
  double intra = cosine_similarity(row(t, "ga0"), row(t, "ga1"));
  double intra2 = cosine_similarity(row(t, "ga1"), row(t, "ga2"));
  double inter = cosine_similarity(row(t, "ga0"), row(t, "gb0"));
  double inter2 = cosine_similarity(row(t, "ga2"), row(t, "gb1"));
  CHECK(intra > inter);
  CHECK(intra > inter2);
  CHECK(intra2 > inter);
}

}  // namespace

TEST_CASE("co-occurrence hand counts") {
  auto c = corpus_of({"a", "b", "a"});
  auto v = build_vocabulary(c, 1);
  auto ia = static_cast<std::uint32_t>(v.lookup("a"));
  auto ib = static_cast<std::uint32_t>(v.lookup("b"));

  auto x1 = build_cooccurrence(c, v, 1, false);
  CHECK(x1.at(ia, ib) == doctest::Approx(2.0));
  CHECK(x1.at(ib, ia) == doctest::Approx(2.0));
  CHECK(x1.at(ia, ia) == doctest::Approx(0.0));

  auto x2 = build_cooccurrence(c, v, 2, false);
  CHECK(x2.at(ia, ib) == doctest::Approx(2.0));
  CHECK(x2.at(ia, ia) == doctest::Approx(1.0));

  auto xw = build_cooccurrence(c, v, 2, true);
  CHECK(xw.at(ia, ia) == doctest::Approx(0.5));  // distance 2

  auto empty = build_cooccurrence(corpus_of({}), v, 2, false);
  CHECK(empty.nnz() == 0);
}

TEST_CASE("co-occurrence never crosses document boundaries") {
  auto c = corpus_of({"a", kDocBoundary, "b"});
  auto v = build_vocabulary(c, 1);
  auto x = build_cooccurrence(c, v, 5, false);
  CHECK(x.nnz() == 0);
}

TEST_CASE("co-occurrence symmetry holds on random corpora") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::string> toks;
    std::size_t len = 2 + rng.index(300);
    for (std::size_t i = 0; i < len; ++i) {
      if (rng.uniform() < 0.05)
        toks.push_back(kDocBoundary);
      else
        toks.push_back(std::string(1, static_cast<char>('a' + rng.index(7))));
    }
    auto c = corpus_of(toks);
    CorpusStats st = corpus_stats(c);
    if (st.total_tokens == 0) continue;
    auto v = build_vocabulary(c, 1);
    auto x = build_cooccurrence(c, v, 1 + static_cast<int>(rng.index(4)), rng.uniform() < 0.5);
    for (std::uint32_t i = 0; i < v.size(); ++i)
      for (std::uint32_t j = 0; j < v.size(); ++j)
        CHECK(x.at(i, j) == doctest::Approx(x.at(j, i)));
  }
}

TEST_CASE("both trainers separate interchangeable-context groups at dims 100/300/500") {
  Rng rng(7);
  auto corpus = interchangeable_corpus(1200, rng);
  auto vocab = build_vocabulary(corpus, 1);
  for (std::size_t dim : {100u, 300u, 500u}) {
    CAPTURE(dim);
    auto x = build_cooccurrence(corpus, vocab, 1, false);
    CoocTrainOptions co;
    co.dim = dim;
    co.epochs = 15;
    co.seed = 42;
    check_group_separation(train_cooc_embeddings(x, co));

    CbowTrainOptions cb;
    cb.dim = dim;
    cb.window = 1;
    cb.epochs = 4;
    cb.seed = 42;
    check_group_separation(train_context_embeddings(corpus, vocab, cb));
  }
}

TEST_CASE("trainer loss does not increase from first to last epoch") {
  Rng rng(12);
  auto corpus = interchangeable_corpus(400, rng);
  auto vocab = build_vocabulary(corpus, 1);

  std::vector<double> loss;
  CoocTrainOptions co;
  co.dim = 16;
  co.epochs = 10;
  co.seed = 3;
  train_cooc_embeddings(build_cooccurrence(corpus, vocab, 3, true), co, &loss);
  REQUIRE(loss.size() == 10);
  CHECK(loss.back() <= loss.front());

  loss.clear();
  CbowTrainOptions cb;
  cb.dim = 16;
  cb.window = 3;
  cb.epochs = 8;
  cb.seed = 3;
  train_context_embeddings(corpus, vocab, cb, &loss);
  REQUIRE(loss.size() == 8);
  CHECK(loss.back() <= loss.front());
}

TEST_CASE("determinism: same seed, same inputs, bit-identical tables") {
  Rng rng(5);
  auto corpus = interchangeable_corpus(200, rng);
  auto vocab = build_vocabulary(corpus, 1);
  auto x = build_cooccurrence(corpus, vocab, 2, false);

  CoocTrainOptions co;
  co.dim = 8;
  co.epochs = 5;
  co.seed = 77;
  auto a = train_cooc_embeddings(x, co);
  auto b = train_cooc_embeddings(x, co);
  CHECK(a.vectors == b.vectors);
  co.seed = 78;
  CHECK(train_cooc_embeddings(x, co).vectors != a.vectors);

  CbowTrainOptions cb;
  cb.dim = 8;
  cb.epochs = 3;
  cb.seed = 77;
  auto c1 = train_context_embeddings(corpus, vocab, cb);
  auto c2 = train_context_embeddings(corpus, vocab, cb);
  CHECK(c1.vectors == c2.vectors);
}

TEST_CASE("zero epochs returns the seeded random initialization") {
  Rng rng(5);
  auto corpus = interchangeable_corpus(50, rng);
  auto vocab = build_vocabulary(corpus, 1);
  CbowTrainOptions cb;
  cb.dim = 8;
  cb.epochs = 0;
  cb.seed = 9;
  auto a = train_context_embeddings(corpus, vocab, cb);
  auto b = train_context_embeddings(corpus, vocab, cb);
  CHECK(a.vectors == b.vectors);
  double bound = 0.5 / 8.0;
  for (double v : a.vectors) {
    CHECK(v >= -bound);
    CHECK(v <= bound);
  }
}

TEST_CASE("trainer input validation") {
  Rng rng(5);
  auto corpus = corpus_of({"a", "b"});
  auto vocab = build_vocabulary(corpus, 1);
  CooccurrenceMatrix empty;
  empty.vocab = vocab;
  CoocTrainOptions co;
  CHECK_THROWS_AS(train_cooc_embeddings(empty, co), UsageError);
  co.dim = 1;
  CHECK_THROWS_AS(train_cooc_embeddings(empty, co), UsageError);

  CbowTrainOptions cb;
  cb.window = 5;  // corpus of 2 tokens < 2*5+1
  CHECK_THROWS_AS(train_context_embeddings(corpus, vocab, cb), UsageError);
}

TEST_CASE("cosine similarity") {
  std::vector<double> u = {1, 0};
  std::vector<double> v = {1, 1};
  std::vector<double> w = {0, 1};
  std::vector<double> z = {0, 0};
  CHECK(cosine_similarity(u, u) == doctest::Approx(1.0));
  CHECK(cosine_similarity(u, w) == doctest::Approx(0.0));
  CHECK(cosine_similarity(u, v) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_WITH_AS(cosine_similarity(u, z), "undefined similarity", UsageError);
}

TEST_CASE("embedding file roundtrip and format errors") {
  Rng rng(5);
  auto corpus = interchangeable_corpus(60, rng);
  auto vocab = build_vocabulary(corpus, 1);
  CbowTrainOptions cb;
  cb.dim = 6;
  cb.epochs = 2;
  auto t = train_context_embeddings(corpus, vocab, cb);

  fs::path dir = fs::temp_directory_path() / "actnext_embed_test";
  fs::create_directories(dir);
  auto path = (dir / "emb.txt").string();
  save_embeddings(t, path);
  auto back = load_embeddings(path);
  REQUIRE(back.dim == t.dim);
  REQUIRE(back.vocab.words == t.vocab.words);
  for (std::size_t i = 0; i < t.vectors.size(); ++i)
    CHECK(std::fabs(back.vectors[i] - t.vectors[i]) <=
          1e-6 * std::max(1.0, std::fabs(t.vectors[i])));

  // wrong column count on line 7 -> error citing line 7
  {
    std::ofstream f(dir / "bad7.txt");
    f << "8 3\n";
    for (int i = 1; i <= 8; ++i) {
      if (i == 6)  // line 7 of the file (header is line 1)
        f << "w" << i << " 0.1 0.2\n";
      else
        f << "w" << i << " 0.1 0.2 0.3\n";
    }
  }
  CHECK_THROWS_WITH_AS(load_embeddings((dir / "bad7.txt").string()),
                       doctest::Contains("line 7"), UsageError);

  // header declares more words than the body carries
  {
    std::ofstream f(dir / "short.txt");
    f << "3 2\nw1 0.1 0.2\nw2 0.3 0.4\n";
  }
  CHECK_THROWS_WITH_AS(load_embeddings((dir / "short.txt").string()),
                       doctest::Contains("dimension mismatch"), UsageError);
  fs::remove_all(dir);
}
