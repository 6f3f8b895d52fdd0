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

#include "clickroles/topics.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "clickroles/errors.h"
#include "clickroles/io.h"

namespace clickroles {

uint64_t Corpus::token_count() const {
  uint64_t n = 0;
  for (const auto& d : documents) n += d.length;
  return n;
}

size_t Corpus::empty_documents() const {
  size_t n = 0;
  for (const auto& d : documents) n += d.empty() ? 1 : 0;
  return n;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isalpha(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Corpus BuildCorpus(std::span<const std::pair<std::string, std::string>> docs,
                   const StopWords& stop_words) {
  Corpus corpus;
  corpus.documents.reserve(docs.size());
  for (const auto& [article, text] : docs) {
    std::unordered_map<uint32_t, uint32_t> counts;
    for (auto& token : Tokenize(text)) {
      if (stop_words.contains(token)) continue;
      auto [it, inserted] =
          corpus.token_ids.emplace(token, static_cast<uint32_t>(corpus.vocabulary.size()));
      if (inserted) corpus.vocabulary.push_back(token);
      ++counts[it->second];
    }
    Document doc;
    doc.article = article;
    doc.counts.assign(counts.begin(), counts.end());
    std::sort(doc.counts.begin(), doc.counts.end());
    for (const auto& [w, c] : doc.counts) doc.length += c;
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.token_count() == 0) throw DomainError("corpus has no tokens after stop-word removal");
  return corpus;
}

StopWords ReadStopWords(const std::string& path) {
  LineReader reader(path);
  StopWords words;
  std::string line;
  while (reader.Next(&line)) {
    for (auto& t : Tokenize(line)) words.insert(std::move(t));
  }
  return words;
}

std::vector<std::pair<std::string, std::string>> ReadDocuments(const std::string& path) {
  LineReader reader(path);
  std::vector<std::pair<std::string, std::string>> docs;
  std::string line;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError(path + ":" + std::to_string(reader.line_number()) +
                      ": expected article<TAB>text");
    }
    docs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return docs;
}

GibbsSampler::GibbsSampler(const Corpus& corpus, const LdaConfig& config)
    : k_(config.topics),
      v_(corpus.vocabulary.size()),
      d_(corpus.documents.size()),
      alpha_(config.effective_alpha()),
      beta_(config.beta),
      seed_(config.seed),
      rng_(config.seed) {
  if (k_ < 2) throw DomainError("LDA needs at least 2 topics");
  if (static_cast<size_t>(k_) > v_) {
    throw DomainError("topic count " + std::to_string(k_) + " exceeds vocabulary size " +
                      std::to_string(v_));
  }
  if (beta_ <= 0.0) throw DomainError("beta must be positive");
  for (uint32_t d = 0; d < d_; ++d) {
    for (const auto& [w, c] : corpus.documents[d].counts) {
      for (uint32_t i = 0; i < c; ++i) {
        words_.push_back(w);
        docs_.push_back(d);
      }
    }
  }
  assignment_.resize(words_.size());
  topic_word_.assign(static_cast<size_t>(k_) * v_, 0);
  doc_topic_.assign(d_ * k_, 0);
  topic_totals_.assign(k_, 0);
  doc_lengths_.assign(d_, 0);
  weights_.resize(k_);
  for (size_t i = 0; i < words_.size(); ++i) {
    const uint32_t z = static_cast<uint32_t>(rng_.Below(k_));
    assignment_[i] = z;
    ++topic_word_[static_cast<size_t>(z) * v_ + words_[i]];
    ++doc_topic_[static_cast<size_t>(docs_[i]) * k_ + z];
    ++topic_totals_[z];
    ++doc_lengths_[docs_[i]];
  }
}

void GibbsSampler::Sweep() {
  const double v_beta = static_cast<double>(v_) * beta_;
  for (size_t i = 0; i < words_.size(); ++i) {
    const uint32_t w = words_[i];
    const size_t d = docs_[i];
    uint32_t z = assignment_[i];
    --topic_word_[static_cast<size_t>(z) * v_ + w];
    --doc_topic_[d * k_ + z];
    --topic_totals_[z];
    double total = 0.0;
    for (int k = 0; k < k_; ++k) {
      total += (doc_topic_[d * k_ + k] + alpha_) *
               (topic_word_[static_cast<size_t>(k) * v_ + w] + beta_) /
               (topic_totals_[k] + v_beta);
      weights_[k] = total;
    }
    const double u = rng_.Uniform() * total;
    z = static_cast<uint32_t>(k_ - 1);
    for (int k = 0; k < k_; ++k) {
      if (u < weights_[k]) {
        z = static_cast<uint32_t>(k);
        break;
      }
    }
    assignment_[i] = z;
    ++topic_word_[static_cast<size_t>(z) * v_ + w];
    ++doc_topic_[d * k_ + z];
    ++topic_totals_[z];
  }
}

TopicModel GibbsSampler::Estimate() const {
  TopicModel m;
  m.topics = k_;
  m.vocabulary_size = v_;
  m.alpha = alpha_;
  m.beta = beta_;
  m.seed = seed_;
  m.phi.resize(static_cast<size_t>(k_) * v_);
  m.theta.resize(d_ * k_);
  const double v_beta = static_cast<double>(v_) * beta_;
  for (int k = 0; k < k_; ++k) {
    const double denom = topic_totals_[k] + v_beta;
    for (size_t w = 0; w < v_; ++w) {
      m.phi[static_cast<size_t>(k) * v_ + w] = (topic_word_[static_cast<size_t>(k) * v_ + w] + beta_) / denom;
    }
  }
  const double k_alpha = k_ * alpha_;
  for (size_t d = 0; d < d_; ++d) {
    const double denom = doc_lengths_[d] + k_alpha;
    for (int k = 0; k < k_; ++k) {
      m.theta[d * k_ + k] = (doc_topic_[d * k_ + k] + alpha_) / denom;
    }
  }
  return m;
}

TopicModel FitLda(const Corpus& corpus, const LdaConfig& config,
                  const std::function<void(int, const GibbsSampler&)>& on_iteration) {
  if (config.iterations < 1) throw DomainError("LDA needs at least one iteration");
  GibbsSampler sampler(corpus, config);
  for (int it = 1; it <= config.iterations; ++it) {
    sampler.Sweep();
    if (on_iteration) on_iteration(it, sampler);
  }
  return sampler.Estimate();
}

int DominantTopic(std::span<const double> theta_row) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(theta_row.size()); ++k) {
    if (theta_row[k] > theta_row[best]) best = k;
  }
  return best;
}

int DominantTopic(const TopicModel& model, size_t document) {
  return DominantTopic(std::span<const double>(model.theta).subspan(document * model.topics,
                                                                    model.topics));
}

std::vector<double> FoldIn(const TopicModel& model, const Document& doc, int sweeps, uint64_t seed) {
  const int k_count = model.topics;
  std::vector<uint32_t> words;
  for (const auto& [w, c] : doc.counts) {
    if (w >= model.vocabulary_size) continue;
    for (uint32_t i = 0; i < c; ++i) words.push_back(w);
  }
  Rng rng(seed);
  std::vector<uint32_t> z(words.size());
  std::vector<uint32_t> counts(k_count, 0);
  for (size_t i = 0; i < words.size(); ++i) {
    z[i] = static_cast<uint32_t>(rng.Below(k_count));
    ++counts[z[i]];
  }
  std::vector<double> cumulative(k_count);
  for (int s = 0; s < sweeps; ++s) {
    for (size_t i = 0; i < words.size(); ++i) {
      --counts[z[i]];
      double total = 0.0;
      for (int k = 0; k < k_count; ++k) {
        total += (counts[k] + model.alpha) * model.Phi(k, words[i]);
        cumulative[k] = total;
      }
      const double u = rng.Uniform() * total;
      uint32_t pick = static_cast<uint32_t>(k_count - 1);
      for (int k = 0; k < k_count; ++k) {
        if (u < cumulative[k]) {
          pick = static_cast<uint32_t>(k);
          break;
        }
      }
      z[i] = pick;
      ++counts[pick];
    }
  }
  std::vector<double> theta(k_count);
  const double denom = words.size() + k_count * model.alpha;
  for (int k = 0; k < k_count; ++k) theta[k] = (counts[k] + model.alpha) / denom;
  return theta;
}

std::vector<std::string> TopWords(const TopicModel& model, const Corpus& corpus, int topic, size_t n) {
  if (topic < 0 || topic >= model.topics) throw DomainError("topic id out of range");
  if (n > model.vocabulary_size) throw DomainError("requested more top words than vocabulary size");
  std::vector<uint32_t> ids(model.vocabulary_size);
  std::iota(ids.begin(), ids.end(), 0);
  std::partial_sort(ids.begin(), ids.begin() + n, ids.end(), [&](uint32_t a, uint32_t b) {
    const double pa = model.Phi(topic, a);
    const double pb = model.Phi(topic, b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  std::vector<std::string> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(corpus.vocabulary[ids[i]]);
  return out;
}

std::string FormatMatrixCsv(std::span<const double> values, size_t rows, size_t cols,
                            std::string_view description) {
  std::string out = "# " + std::string(description) + "\n";
  out += "# shape: " + std::to_string(rows) + "x" + std::to_string(cols) + "\n";
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      if (c > 0) out += ',';
      out += FormatDouble(values[r * cols + c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace clickroles
