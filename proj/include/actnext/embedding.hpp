#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "actnext/corpus.hpp"

namespace actnext {

// Word -> R^dim map. Rows follow vocab order; all entries finite.
struct EmbeddingTable {
  Vocabulary vocab;
  std::vector<double> vectors;  // |vocab| x dim, row-major
  std::size_t dim = 0;
  std::string method_tag;
  std::string corpus_tag;

  const double* row(std::size_t i) const { return vectors.data() + i * dim; }
  double* row(std::size_t i) { return vectors.data() + i * dim; }
  // row of `word`, or nullptr when out of vocabulary
  const double* row_of(const std::string& word) const {
    auto i = vocab.lookup(word);
    return i == Vocabulary::npos ? nullptr : row(i);
  }
};

// Sparse symmetric co-occurrence counts. Cells are stored once under the
// canonical (min,max) key; at() exposes the symmetric view.
struct CooccurrenceMatrix {
  Vocabulary vocab;
  std::unordered_map<std::uint64_t, double> cells;

  static std::uint64_t key(std::uint32_t i, std::uint32_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }
  void add(std::uint32_t i, std::uint32_t j, double w) { cells[key(i, j)] += w; }
  double at(std::uint32_t i, std::uint32_t j) const {
    auto it = cells.find(key(i, j));
    return it == cells.end() ? 0.0 : it->second;
  }
  std::size_t nnz() const { return cells.size(); }
};

// Counts each unordered in-vocabulary token pair at distance <= window,
// never across a document boundary. With distance_weighting the pair
// contributes 1/distance instead of 1.
CooccurrenceMatrix build_cooccurrence(const WordCorpus& corpus, const Vocabulary& vocab,
                                      int window, bool distance_weighting);

struct CoocTrainOptions {
  std::size_t dim = 100;
  int epochs = 25;
  double learning_rate = 0.05;
  double x_max = 100.0;
  double alpha = 0.75;
  std::uint64_t seed = 1;
};

// Weighted least-squares fit of w_i.wc_j + b_i + bc_j to ln X_ij over the
// non-zero cells, weighted by f(x) = min((x/x_max)^alpha, 1); AdaGrad
// updates in a seeded shuffled cell order. Returned vectors are w + wc.
EmbeddingTable train_cooc_embeddings(const CooccurrenceMatrix& matrix,
                                     const CoocTrainOptions& opt,
                                     std::vector<double>* epoch_loss = nullptr);

struct CbowTrainOptions {
  std::size_t dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 15;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
};

// Continuous bag-of-words with negative sampling: the mean of the context
// vectors predicts the target against `negatives` draws from the
// unigram^0.75 distribution. SGD with linear learning-rate decay.
EmbeddingTable train_context_embeddings(const WordCorpus& corpus, const Vocabulary& vocab,
                                        const CbowTrainOptions& opt,
                                        std::vector<double>* epoch_loss = nullptr);

// u.v / (|u||v|); throws UsageError "undefined similarity" on a zero vector.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// Text format: "<count> <dim>" header, then one "word v1 .. vdim" line per
// word. Load errors cite the offending line.
void save_embeddings(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embeddings(const std::string& path);

}  // namespace actnext
