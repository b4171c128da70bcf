#include "lintext/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "lintext/fold_plan.hpp"

namespace lintext {

namespace {

// No vowels and no 's' or 'y', so the stemmer has nothing to strip.
constexpr std::string_view kConsonants = "bcdfghjklmnpqrtvwxz";

std::string encode(std::string_view prefix, std::size_t i) {
  std::string digits;
  do {
    digits.insert(digits.begin(), kConsonants[i % kConsonants.size()]);
    i /= kConsonants.size();
  } while (i > 0);
  return std::string(prefix) + digits;
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; written out so draws do not depend on the library's
  // normal_distribution.
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

long poisson(double mean, std::mt19937_64& rng) {
  const double limit = std::exp(-mean);
  long k = 0;
  double p = uniform01(rng);
  while (p > limit) {
    ++k;
    p *= uniform01(rng);
  }
  return k;
}

}  // namespace

std::string planted_word(std::size_t i) { return encode("zq", i); }
std::string noise_word(std::size_t i) { return encode("wk", i); }

Corpus make_synthetic_corpus(const SyntheticConfig& cfg) {
  if (cfg.planted > cfg.vocabulary_size)
    throw UsageError("synthetic: more planted words than vocabulary");
  if (cfg.positive_fraction <= 0.0 || cfg.positive_fraction >= 1.0)
    throw UsageError("synthetic: positive fraction must lie in (0, 1)");
  if (cfg.signal_strength < 0.0 || cfg.signal_strength > 1.0)
    throw UsageError("synthetic: signal strength must lie in [0, 1]");

  std::mt19937_64 rng(mix_seed(cfg.seed, 0x5e7));
  const std::size_t num_pos =
      static_cast<std::size_t>(std::llround(cfg.positive_fraction * static_cast<double>(cfg.num_documents)));
  std::vector<Label> labels(cfg.num_documents, Label::Irrelevant);
  for (std::size_t i = 0; i < num_pos; ++i) labels[i] = Label::Relevant;
  portable_shuffle(labels, rng);

  const double mid = 0.5 * (cfg.planted_positive_rate + cfg.planted_negative_rate);
  const double pos_rate = mid + cfg.signal_strength * (cfg.planted_positive_rate - mid);
  const double neg_rate = mid + cfg.signal_strength * (cfg.planted_negative_rate - mid);

  std::vector<std::string> words;
  std::vector<double> noise_rates;
  for (std::size_t i = 0; i < cfg.planted; ++i) words.push_back(planted_word(i));
  for (std::size_t i = 0; i + cfg.planted < cfg.vocabulary_size; ++i) {
    words.push_back(noise_word(i));
    noise_rates.push_back(std::max(
        cfg.noise_min_rate, cfg.noise_max_rate / std::pow(static_cast<double>(i + 1), cfg.zipf_exponent)));
  }

  Corpus corpus;
  corpus.reserve(cfg.num_documents);
  std::vector<std::string> tokens;
  for (std::size_t d = 0; d < cfg.num_documents; ++d) {
    const bool positive = is_positive(labels[d]);
    const double length = cfg.length_sigma > 0.0 ? std::exp(cfg.length_sigma * standard_normal(rng)) : 1.0;
    auto present = [&](double rate) {
      const double p = length == 1.0 ? rate : 1.0 - std::pow(1.0 - rate, length);
      return uniform01(rng) < p;
    };
    tokens.clear();
    for (std::size_t w = 0; w < words.size(); ++w) {
      const double rate = w < cfg.planted ? (positive ? pos_rate : neg_rate) : noise_rates[w - cfg.planted];
      if (!present(rate)) continue;
      tokens.push_back(words[w]);
      while (uniform01(rng) < cfg.repeat_probability) tokens.push_back(words[w]);
    }
    portable_shuffle(tokens, rng);

    Document doc;
    char id[32];
    std::snprintf(id, sizeof id, "syn%05zu", d + 1);
    doc.id = id;
    doc.label = labels[d];
    const std::size_t title_len = std::min<std::size_t>(tokens.size(), 6);
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      std::string& field = t < title_len ? doc.title : doc.abstract_text;
      if (!field.empty()) field += ' ';
      field += tokens[t];
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

NerCounts make_synthetic_ner_counts(const Corpus& corpus, const std::vector<SyntheticNerTool>& tools,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0x4e52));
  NerCounts counts;
  for (const auto& t : tools) counts.tool_ids.push_back(t.tool_id);
  for (const auto& doc : corpus) {
    std::vector<double> row;
    for (const auto& t : tools)
      row.push_back(static_cast<double>(poisson(is_positive(doc.label) ? t.positive_mean : t.negative_mean, rng)));
    counts.by_doc.emplace(doc.id, std::move(row));
  }
  return counts;
}

}  // namespace lintext
