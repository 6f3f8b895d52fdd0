// Copyright 2026 The clickroles Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLICKROLES_TOPICS_H_
#define CLICKROLES_TOPICS_H_

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clickroles/rng.h"

namespace clickroles {

struct Document {
  std::string article;
  // (token id, count), ascending by token id, counts positive.
  std::vector<std::pair<uint32_t, uint32_t>> counts;
  uint64_t length = 0;
  bool empty() const { return length == 0; }
};

// Bag-of-words corpus with a dense vocabulary in first-appearance order.
struct Corpus {
  std::vector<std::string> vocabulary;
  std::unordered_map<std::string, uint32_t> token_ids;
  std::vector<Document> documents;

  uint64_t token_count() const;
  size_t empty_documents() const;
};

// Lowercased ASCII-alphabetic tokens; tokens shorter than two letters are
// dropped, as is anything in `stop_words` (compared after lowercasing).
std::vector<std::string> Tokenize(std::string_view text);

using StopWords = std::set<std::string, std::less<>>;

// DomainError when no document contributes a token.
Corpus BuildCorpus(std::span<const std::pair<std::string, std::string>> docs,
                   const StopWords& stop_words);

StopWords ReadStopWords(const std::string& path);
// "article<TAB>text" lines.
std::vector<std::pair<std::string, std::string>> ReadDocuments(const std::string& path);

struct LdaConfig {
  int topics = 20;
  double alpha = 0.0;  // <= 0 selects 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  uint64_t seed = 1;

  double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / topics; }
};

struct TopicModel {
  int topics = 0;
  size_t vocabulary_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  std::vector<double> phi;    // topics x vocabulary, row-major
  std::vector<double> theta;  // documents x topics, row-major

  double Phi(int k, uint32_t w) const { return phi[static_cast<size_t>(k) * vocabulary_size + w]; }
  double Theta(size_t d, int k) const { return theta[d * topics + k]; }
  size_t documents() const { return topics == 0 ? 0 : theta.size() / topics; }

  bool operator==(const TopicModel&) const = default;
};

// Collapsed Gibbs sampler over token-topic assignments. Exposed so tests
// can inspect the count matrices between sweeps.
class GibbsSampler {
 public:
  GibbsSampler(const Corpus& corpus, const LdaConfig& config);

  void Sweep();
  TopicModel Estimate() const;

  int topics() const { return k_; }
  size_t vocabulary_size() const { return v_; }
  size_t token_count() const { return words_.size(); }
  // Counts: topic-word (K x V), document-topic (D x K), per-topic totals.
  std::span<const uint32_t> topic_word() const { return topic_word_; }
  std::span<const uint32_t> doc_topic() const { return doc_topic_; }
  std::span<const uint32_t> topic_totals() const { return topic_totals_; }
  std::span<const uint32_t> assignments() const { return assignment_; }
  std::span<const uint32_t> token_words() const { return words_; }
  std::span<const uint32_t> token_docs() const { return docs_; }

 private:
  int k_;
  size_t v_;
  size_t d_;
  double alpha_;
  double beta_;
  uint64_t seed_;
  std::vector<uint32_t> words_;
  std::vector<uint32_t> docs_;
  std::vector<uint32_t> assignment_;
  std::vector<uint32_t> topic_word_;
  std::vector<uint32_t> doc_topic_;
  std::vector<uint32_t> topic_totals_;
  std::vector<uint64_t> doc_lengths_;
  std::vector<double> weights_;
  Rng rng_;
};

// Runs `config.iterations` sweeps. `on_iteration`, when set, is called after
// each sweep with the iteration number (1-based).
TopicModel FitLda(const Corpus& corpus, const LdaConfig& config,
                  const std::function<void(int, const GibbsSampler&)>& on_iteration = {});

// argmax over the document's theta row; ties go to the lowest topic id.
int DominantTopic(const TopicModel& model, size_t document);
int DominantTopic(std::span<const double> theta_row);

// Topic mixture of an unseen bag of words by Gibbs sweeps with phi frozen.
std::vector<double> FoldIn(const TopicModel& model, const Document& doc, int sweeps, uint64_t seed);

// The n highest-probability tokens of a topic; ties by token id.
std::vector<std::string> TopWords(const TopicModel& model, const Corpus& corpus, int topic, size_t n);

std::string FormatMatrixCsv(std::span<const double> values, size_t rows, size_t cols,
                             std::string_view description);

}  // namespace clickroles

#endif  // CLICKROLES_TOPICS_H_
