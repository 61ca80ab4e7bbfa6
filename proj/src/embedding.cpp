#include "actnext/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "actnext/error.hpp"
#include "actnext/kernels.hpp"
#include "actnext/rng.hpp"

namespace actnext {

namespace {

std::vector<double> uniform_init(Rng& rng, std::size_t n, double half_range) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-half_range, half_range);
  return v;
}

// corpus tokens -> vocab ids, one vector per document, OOV dropped
std::vector<std::vector<std::uint32_t>> encode_documents(const WordCorpus& corpus,
                                                         const Vocabulary& vocab) {
  std::vector<std::vector<std::uint32_t>> docs(1);
  for (const auto& t : corpus.tokens) {
    if (t == kDocBoundary) {
      if (!docs.back().empty()) docs.emplace_back();
      continue;
    }
    auto id = vocab.lookup(t);
    if (id != Vocabulary::npos) docs.back().push_back(static_cast<std::uint32_t>(id));
  }
  if (docs.back().empty()) docs.pop_back();
  return docs;
}

}  // namespace

CooccurrenceMatrix build_cooccurrence(const WordCorpus& corpus, const Vocabulary& vocab,
                                      int window, bool distance_weighting) {
  if (window < 1) throw UsageError("build_cooccurrence: window must be >= 1");
  CooccurrenceMatrix m;
  m.vocab = vocab;
  for (const auto& doc : encode_documents(corpus, vocab)) {
    for (std::size_t p = 0; p < doc.size(); ++p) {
      std::size_t end = std::min(doc.size(), p + 1 + static_cast<std::size_t>(window));
      for (std::size_t q = p + 1; q < end; ++q) {
        double w = distance_weighting ? 1.0 / static_cast<double>(q - p) : 1.0;
        m.add(doc[p], doc[q], w);
      }
    }
  }
  return m;
}

EmbeddingTable train_cooc_embeddings(const CooccurrenceMatrix& matrix,
                                     const CoocTrainOptions& opt,
                                     std::vector<double>* epoch_loss) {
  if (opt.dim < 2) throw UsageError("train_cooc_embeddings: dim must be >= 2");
  if (matrix.nnz() == 0) throw UsageError("train_cooc_embeddings: empty co-occurrence matrix");

  const std::size_t V = matrix.vocab.size();
  const std::size_t d = opt.dim;
  Rng rng(mix_seed(opt.seed));

  std::vector<double> w = uniform_init(rng, V * d, 0.5 / static_cast<double>(d));
  std::vector<double> wc = uniform_init(rng, V * d, 0.5 / static_cast<double>(d));
  std::vector<double> b(V, 0.0), bc(V, 0.0);
  // AdaGrad accumulators, initialised to 1 so early steps stay bounded
  std::vector<double> gw(V * d, 1.0), gwc(V * d, 1.0);
  std::vector<double> gb(V, 1.0), gbc(V, 1.0);

  // one training sample per matrix cell: (i,j) and (j,i) for i != j
  struct Sample {
    std::uint32_t main, ctx;
    double x;
  };
  std::vector<Sample> samples;
  samples.reserve(2 * matrix.nnz());
  for (const auto& [key, x] : matrix.cells) {
    auto i = static_cast<std::uint32_t>(key >> 32);
    auto j = static_cast<std::uint32_t>(key & 0xffffffffu);
    samples.push_back({i, j, x});
    if (i != j) samples.push_back({j, i, x});
  }
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return a.main != b.main ? a.main < b.main : a.ctx < b.ctx;
  });

  std::vector<double> grad(d);
  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    rng.shuffle(samples);
    double total = 0.0;
    for (const auto& s : samples) {
      double* wi = w.data() + s.main * d;
      double* wj = wc.data() + s.ctx * d;
      double diff = kernels::dot(d, wi, wj) + b[s.main] + bc[s.ctx] - std::log(s.x);
      double f = s.x < opt.x_max ? std::pow(s.x / opt.x_max, opt.alpha) : 1.0;
      total += 0.5 * f * diff * diff;
      double fd = f * diff;
      double* gi = gw.data() + s.main * d;
      double* gj = gwc.data() + s.ctx * d;
      for (std::size_t k = 0; k < d; ++k) {
        double g_main = fd * wj[k];
        double g_ctx = fd * wi[k];
        wi[k] -= opt.learning_rate * g_main / std::sqrt(gi[k]);
        wj[k] -= opt.learning_rate * g_ctx / std::sqrt(gj[k]);
        gi[k] += g_main * g_main;
        gj[k] += g_ctx * g_ctx;
      }
      b[s.main] -= opt.learning_rate * fd / std::sqrt(gb[s.main]);
      bc[s.ctx] -= opt.learning_rate * fd / std::sqrt(gbc[s.ctx]);
      gb[s.main] += fd * fd;
      gbc[s.ctx] += fd * fd;
    }
    if (epoch_loss) epoch_loss->push_back(total / static_cast<double>(samples.size()));
  }

  EmbeddingTable t;
  t.vocab = matrix.vocab;
  t.dim = d;
  t.method_tag = "cooc";
  t.vectors.resize(V * d);
  for (std::size_t i = 0; i < V * d; ++i) t.vectors[i] = w[i] + wc[i];
  return t;
}

EmbeddingTable train_context_embeddings(const WordCorpus& corpus, const Vocabulary& vocab,
                                        const CbowTrainOptions& opt,
                                        std::vector<double>* epoch_loss) {
  if (opt.dim < 2) throw UsageError("train_context_embeddings: dim must be >= 2");
  if (opt.window < 1) throw UsageError("train_context_embeddings: window must be >= 1");
  if (opt.negatives < 1) throw UsageError("train_context_embeddings: negatives must be >= 1");

  std::int64_t stream_len = 0;
  for (const auto& t : corpus.tokens)
    if (t != kDocBoundary) ++stream_len;
  if (stream_len < 2 * opt.window + 1)
    throw UsageError("train_context_embeddings: corpus shorter than 2*window+1 tokens");

  const std::size_t V = vocab.size();
  const std::size_t d = opt.dim;
  Rng rng(mix_seed(opt.seed));

  std::vector<double> w_in = uniform_init(rng, V * d, 0.5 / static_cast<double>(d));
  std::vector<double> w_out(V * d, 0.0);

  EmbeddingTable t;
  t.vocab = vocab;
  t.dim = d;
  t.method_tag = "cbow";
  t.corpus_tag = corpus.name;
  if (opt.epochs == 0) {
    t.vectors = w_in;
    return t;
  }

  auto docs = encode_documents(corpus, vocab);

  // cumulative unigram^0.75 distribution for negative sampling
  std::vector<double> cum(V);
  double z = 0.0;
  for (std::size_t i = 0; i < V; ++i) {
    z += std::pow(static_cast<double>(std::max<std::int64_t>(vocab.counts[i], 1)), 0.75);
    cum[i] = z;
  }
  auto sample_negative = [&]() {
    double u = rng.uniform() * z;
    return static_cast<std::uint32_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
  };

  std::int64_t positions = 0;
  for (const auto& doc : docs) positions += static_cast<std::int64_t>(doc.size());
  const double total_updates =
      static_cast<double>(positions) * static_cast<double>(opt.epochs);

  std::vector<double> h(d), dh(d);
  std::int64_t done = 0;
  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::int64_t loss_n = 0;
    for (const auto& doc : docs) {
      for (std::size_t pos = 0; pos < doc.size(); ++pos, ++done) {
        double lr = opt.learning_rate *
                    std::max(1e-4, 1.0 - static_cast<double>(done) / total_updates);
        std::size_t lo = pos >= static_cast<std::size_t>(opt.window)
                             ? pos - static_cast<std::size_t>(opt.window)
                             : 0;
        std::size_t hi = std::min(doc.size(), pos + static_cast<std::size_t>(opt.window) + 1);
        std::size_t n_ctx = hi - lo - 1;
        if (n_ctx == 0) continue;

        std::fill(h.begin(), h.end(), 0.0);
        for (std::size_t c = lo; c < hi; ++c) {
          if (c == pos) continue;
          kernels::axpy(d, 1.0, w_in.data() + doc[c] * d, h.data());
        }
        kernels::scale(d, 1.0 / static_cast<double>(n_ctx), h.data());

        std::fill(dh.begin(), dh.end(), 0.0);
        std::uint32_t target = doc[pos];
        for (int s = 0; s <= opt.negatives; ++s) {
          std::uint32_t word;
          double label;
          if (s == 0) {
            word = target;
            label = 1.0;
          } else {
            word = sample_negative();
            for (int retry = 0; word == target && retry < 8; ++retry)
              word = sample_negative();
            if (word == target) continue;
            label = 0.0;
          }
          double* out_row = w_out.data() + word * d;
          double score = kernels::dot(d, h.data(), out_row);
          double p = 1.0 / (1.0 + std::exp(-score));
          loss_sum -= label > 0.5 ? std::log(std::max(p, 1e-12))
                                  : std::log(std::max(1.0 - p, 1e-12));
          double g = p - label;
          kernels::axpy(d, g, out_row, dh.data());
          kernels::axpy(d, -lr * g, h.data(), out_row);
        }
        ++loss_n;
        double back = -lr / static_cast<double>(n_ctx);
        for (std::size_t c = lo; c < hi; ++c) {
          if (c == pos) continue;
          kernels::axpy(d, back, dh.data(), w_in.data() + doc[c] * d);
        }
      }
    }
    if (epoch_loss)
      epoch_loss->push_back(loss_n > 0 ? loss_sum / static_cast<double>(loss_n) : 0.0);
  }

  t.vectors = std::move(w_in);
  return t;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw UsageError("cosine: dimension mismatch");
  double uu = kernels::dot(u.size(), u.data(), u.data());
  double vv = kernels::dot(v.size(), v.data(), v.data());
  if (uu == 0.0 || vv == 0.0) throw UsageError("undefined similarity");
  return kernels::dot(u.size(), u.data(), v.data()) / std::sqrt(uu * vv);
}

void save_embeddings(const EmbeddingTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << table.vocab.size() << ' ' << table.dim << '\n';
  for (std::size_t i = 0; i < table.vocab.size(); ++i) {
    out << table.vocab.words[i];
    const double* r = table.row(i);
    for (std::size_t k = 0; k < table.dim; ++k) out << ' ' << r[k];
    out << '\n';
  }
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw UsageError(path + ": empty embedding file");
  std::size_t count = 0, dim = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> count >> dim) || dim == 0)
      throw UsageError(path + ": malformed header on line 1");
  }
  EmbeddingTable t;
  t.dim = dim;
  t.vectors.reserve(count * dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    std::size_t got = 0;
    double x;
    while (ls >> x) {
      t.vectors.push_back(x);
      ++got;
    }
    if (got != dim)
      throw UsageError(path + ": line " + std::to_string(line_no) +
                       ": dimension mismatch (expected " + std::to_string(dim) +
                       " values, got " + std::to_string(got) + ")");
    if (!std::isfinite(t.vectors.back()))
      throw UsageError(path + ": line " + std::to_string(line_no) + ": non-finite value");
    t.vocab.index.emplace(word, t.vocab.words.size());
    t.vocab.words.push_back(word);
    t.vocab.counts.push_back(0);
  }
  if (t.vocab.size() != count)
    throw UsageError(path + ": dimension mismatch: header declares " +
                     std::to_string(count) + " words, file has " +
                     std::to_string(t.vocab.size()));
  return t;
}

}  // namespace actnext
