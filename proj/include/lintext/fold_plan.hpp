#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "lintext/common.hpp"

namespace lintext {

/// Row positions into some parent list (the corpus for outer splits, the
/// outer training block for inner splits).
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

struct OuterFold {
  int repeat = 0;
  int block = 0;
  Split split;               // positions in the corpus
  std::vector<Split> inner;  // positions in split.train
};

struct FoldPlan {
  std::uint64_t seed = 0;
  int repeats = 4;
  int folds = 4;
  std::vector<OuterFold> outer;
};

/// `repeats` independent stratified shuffles, each dealt into `folds` blocks
/// (class proportions within one document per block). Every outer training
/// block gets its own repeats x folds inner plan.
FoldPlan make_fold_plan(std::span<const Label> labels, std::uint64_t seed, int repeats = 4,
                        int folds = 4);

/// Stratified repeated k-fold over `labels` alone.
std::vector<Split> stratified_splits(std::span<const Label> labels, std::uint64_t seed,
                                     int repeats, int folds);

nlohmann::json fold_plan_to_json(const FoldPlan& plan, std::span<const std::string> ids);

/// splitmix64 finaliser; derives independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Fisher-Yates with a fixed draw rule so shuffles are identical across
/// standard library implementations.
template <class T>
void portable_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace lintext
