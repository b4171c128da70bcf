#pragma once

#include <filesystem>

#include <json.hpp>

#include "lintext/pipeline.hpp"

namespace lintext {

inline constexpr int kModelFormatVersion = 1;

/// A trained classifier together with the fitted feature pipeline it expects.
struct SavedModel {
  FeaturePipeline pipeline;
  Model model;
  HyperParams params;
};

/// Versioned JSON: kind, weights, bias, vocabulary fingerprint, transform
/// descriptor, plus the vocabulary and PCA needed to featurize new text.
/// VTT models store theta as weights and -lambda as bias.
nlohmann::json model_to_json(const SavedModel& saved);
SavedModel model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const SavedModel& saved);
SavedModel load_model(const std::filesystem::path& path);

std::string_view to_string(TfidfDenominator d);
TfidfDenominator parse_tfidf_denominator(std::string_view text);

}  // namespace lintext
