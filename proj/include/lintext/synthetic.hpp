#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lintext/corpus.hpp"
#include "lintext/ner.hpp"

namespace lintext {

/// Planted-signal corpus generator. Word i of the vocabulary occurs in a
/// document with a class-independent rate, except for the planted words whose
/// rates differ by class. Words are strings of consonants, which the stemmer
/// leaves unchanged, so every word survives tokenization as one feature.
struct SyntheticConfig {
  std::size_t num_documents = 1213;
  double positive_fraction = 0.5;
  std::size_t vocabulary_size = 5000;  // planted words included
  std::size_t planted = 20;
  double planted_positive_rate = 0.5;
  double planted_negative_rate = 0.1;
  // 1 keeps the planted rates; 0 sets both to their midpoint.
  double signal_strength = 1.0;
  // Noise rates fall off as max_rate / (rank + 1)^exponent, floored at min_rate.
  double noise_max_rate = 0.3;
  double noise_min_rate = 0.001;
  double zipf_exponent = 1.0;
  // Sigma of a lognormal length factor L per document; every word's
  // occurrence probability becomes 1 - (1 - rate)^L. Zero gives equal lengths.
  double length_sigma = 0.0;
  // Probability of each further repeat of a present word.
  double repeat_probability = 0.3;
  std::uint64_t seed = 1;
};

Corpus make_synthetic_corpus(const SyntheticConfig& config);

/// Name of the i-th planted word (i < config.planted).
std::string planted_word(std::size_t i);
std::string noise_word(std::size_t i);

struct SyntheticNerTool {
  std::string tool_id;
  double positive_mean = 1.0;
  double negative_mean = 1.0;
};

/// Poisson counts per document with a class-dependent mean.
NerCounts make_synthetic_ner_counts(const Corpus& corpus, const std::vector<SyntheticNerTool>& tools,
                                    std::uint64_t seed);

}  // namespace lintext
