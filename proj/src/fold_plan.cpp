#include "lintext/fold_plan.hpp"

#include <string>

#include "lintext/matrix.hpp"

namespace lintext {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Shuffles each class, concatenates relevant then irrelevant documents and
// deals them round-robin into `folds` blocks.
std::vector<Split> deal_splits(std::span<const Label> labels, std::uint64_t seed, int repeats,
                               int folds) {
  const auto k = static_cast<std::size_t>(folds);
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (is_positive(labels[i]) ? pos : neg).push_back(i);
  std::vector<Split> out;
  for (int rep = 0; rep < repeats; ++rep) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(rep)));
    auto p = pos, n = neg;
    portable_shuffle(p, rng);
    portable_shuffle(n, rng);
    std::vector<std::size_t> block(labels.size());
    std::size_t slot = 0;
    for (auto i : p) block[i] = slot++ % k;
    for (auto i : n) block[i] = slot++ % k;
    for (std::size_t b = 0; b < k; ++b) {
      Split s;
      for (std::size_t i = 0; i < labels.size(); ++i) (block[i] == b ? s.test : s.train).push_back(i);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::vector<Split> stratified_splits(std::span<const Label> labels, std::uint64_t seed,
                                     int repeats, int folds) {
  if (folds < 2 || repeats < 1) throw UsageError("need at least 2 folds and 1 repeat");
  const std::size_t pos = count_positive(labels);
  const std::size_t neg = labels.size() - pos;
  const auto k = static_cast<std::size_t>(folds);
  if (pos < k || neg < k)
    throw DataError("class too small to stratify: " + std::to_string(pos) + " relevant and " +
                    std::to_string(neg) + " irrelevant documents for " + std::to_string(folds) +
                    " folds");
  return deal_splits(labels, seed, repeats, folds);
}

FoldPlan make_fold_plan(std::span<const Label> labels, std::uint64_t seed, int repeats, int folds) {
  if (labels.size() < 8) throw DataError("corpus needs at least 8 documents, has " + std::to_string(labels.size()));
  FoldPlan plan;
  plan.seed = seed;
  plan.repeats = repeats;
  plan.folds = folds;
  const auto outer = stratified_splits(labels, seed, repeats, folds);
  for (std::size_t f = 0; f < outer.size(); ++f) {
    OuterFold of;
    of.repeat = static_cast<int>(f) / folds;
    of.block = static_cast<int>(f) % folds;
    of.split = outer[f];
    std::vector<Label> inner_labels;
    for (auto i : of.split.train) inner_labels.push_back(labels[i]);
    // No per-class minimum here: on tiny corpora a validation block may lack
    // one class.
    of.inner = deal_splits(inner_labels, mix_seed(seed, 1000 + f), repeats, folds);
    plan.outer.push_back(std::move(of));
  }
  return plan;
}

nlohmann::json fold_plan_to_json(const FoldPlan& plan, std::span<const std::string> ids) {
  using nlohmann::json;
  auto to_ids = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>* parent) {
    json arr = json::array();
    for (auto r : rows) arr.push_back(ids[parent ? (*parent)[r] : r]);
    return arr;
  };
  json j;
  j["version"] = 1;
  j["seed"] = plan.seed;
  j["repeats"] = plan.repeats;
  j["folds"] = plan.folds;
  j["outer"] = json::array();
  for (const auto& of : plan.outer) {
    json o;
    o["repeat"] = of.repeat;
    o["block"] = of.block;
    o["train_ids"] = to_ids(of.split.train, nullptr);
    o["test_ids"] = to_ids(of.split.test, nullptr);
    o["inner"] = json::array();
    for (const auto& in : of.inner)
      o["inner"].push_back({{"train_ids", to_ids(in.train, &of.split.train)},
                            {"val_ids", to_ids(in.test, &of.split.train)}});
    j["outer"].push_back(std::move(o));
  }
  return j;
}

}  // namespace lintext
