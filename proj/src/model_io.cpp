#include "lintext/model_io.hpp"

#include <fstream>

#include "lintext/report.hpp"

namespace lintext {

namespace {

using nlohmann::json;

json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector vector_from(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

FeatureKind parse_feature_kind(const std::string& s) {
  for (auto k : {FeatureKind::Unigram, FeatureKind::Bigram, FeatureKind::NerCount})
    if (to_string(k) == s) return k;
  throw DataError("model: unknown feature kind '" + s + "'");
}

}  // namespace

std::string_view to_string(TfidfDenominator d) {
  return d == TfidfDenominator::DistinctFeatures ? "distinct" : "tokens";
}

TfidfDenominator parse_tfidf_denominator(std::string_view text) {
  if (text == "distinct") return TfidfDenominator::DistinctFeatures;
  if (text == "tokens") return TfidfDenominator::TokenCount;
  throw UsageError("unknown tfidf denominator '" + std::string(text) + "' (expected distinct or tokens)");
}

json model_to_json(const SavedModel& saved) {
  const FeaturePipeline& p = saved.pipeline;
  const ExperimentSpec& spec = p.spec();
  json j;
  j["format"] = "lintext-model";
  j["version"] = kModelFormatVersion;
  j["tool_version"] = std::string(kToolVersion);
  j["kind"] = std::string(to_string(kind_of(saved.model)));
  j["hyperparameters"] = describe(spec.classifier, saved.params);
  j["transform"] = {{"regime", std::string(to_string(spec.transform))},
                    {"tfidf_denominator", std::string(to_string(spec.tfidf_denominator))},
                    {"bigrams", spec.bigrams},
                    {"ner_tools", spec.ner_tools},
                    {"pca_k", p.effective_pca_k() ? json(*p.effective_pca_k()) : json(nullptr)}};

  const Vocabulary& tv = p.text_vocabulary();
  json features = json::array();
  for (Eigen::Index i = 0; i < tv.size(); ++i)
    features.push_back({tv.name(i), std::string(to_string(tv.kind(i))), tv.doc_count(i)});
  j["vocabulary"] = {{"fingerprint", p.vocabulary().fingerprint()},
                     {"num_documents", tv.num_documents()},
                     {"features", std::move(features)}};

  if (const auto& pca = p.pca()) {
    // Row-major K x k.
    std::vector<double> comps;
    comps.reserve(static_cast<std::size_t>(pca->components.size()));
    for (Eigen::Index r = 0; r < pca->components.rows(); ++r)
      for (Eigen::Index c = 0; c < pca->components.cols(); ++c) comps.push_back(pca->components(r, c));
    j["pca"] = {{"k", pca->k()},
                {"mean", vector_json(pca->mean)},
                {"explained_variance", vector_json(pca->explained_variance)},
                {"components", std::move(comps)}};
  } else {
    j["pca"] = nullptr;
  }

  if (const auto* vtt = std::get_if<VttModel>(&saved.model)) {
    j["weights"] = vector_json(vtt->theta);
    j["bias"] = -vtt->lambda;
    j["beta"] = vector_json(vtt->beta);
    j["ner_tool_ids"] = vtt->ner_tool_ids;
  } else {
    const auto& lin = std::get<LinearModel>(saved.model);
    j["weights"] = vector_json(lin.weights);
    j["bias"] = lin.bias;
  }
  return j;
}

SavedModel model_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "lintext-model") throw DataError("model: not a lintext model file");
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion)
      throw DataError("model: unsupported format version " + std::to_string(version));

    ExperimentSpec spec;
    spec.classifier = parse_classifier(j.at("kind").get<std::string>());
    const json& t = j.at("transform");
    spec.transform = parse_transform(t.at("regime").get<std::string>());
    spec.tfidf_denominator = parse_tfidf_denominator(t.at("tfidf_denominator").get<std::string>());
    spec.bigrams = t.at("bigrams").get<bool>();
    spec.ner_tools = t.at("ner_tools").get<std::vector<std::string>>();
    if (!t.at("pca_k").is_null()) spec.pca_k = t.at("pca_k").get<int>();

    const json& v = j.at("vocabulary");
    Vocabulary vocab;
    for (const auto& f : v.at("features"))
      vocab.add(f.at(0).get<std::string>(), parse_feature_kind(f.at(1).get<std::string>()), f.at(2).get<std::int64_t>());
    vocab.set_num_documents(v.at("num_documents").get<std::int64_t>());
    vocab.set_includes_bigrams(spec.bigrams);

    std::optional<PcaModel> pca;
    if (!j.at("pca").is_null()) {
      const json& jp = j.at("pca");
      PcaModel m;
      m.mean = vector_from(jp.at("mean"));
      m.explained_variance = vector_from(jp.at("explained_variance"));
      const auto k = jp.at("k").get<Eigen::Index>();
      const auto comps = jp.at("components").get<std::vector<double>>();
      if (k <= 0 || static_cast<Eigen::Index>(comps.size()) != m.mean.size() * k)
        throw DataError("model: PCA component matrix has the wrong size");
      m.components = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          comps.data(), m.mean.size(), k);
      pca = std::move(m);
    }

    FeaturePipeline pipeline = FeaturePipeline::restore(spec, std::move(vocab), std::move(pca));
    if (pipeline.vocabulary().fingerprint() != v.at("fingerprint").get<std::string>())
      throw DataError("model: vocabulary fingerprint does not match its feature list");

    const Vector weights = vector_from(j.at("weights"));
    const Eigen::Index expected = pipeline.pca() ? pipeline.pca()->k()
                                  : spec.classifier == ClassifierKind::Vtt ? pipeline.text_vocabulary().size()
                                                                           : pipeline.vocabulary().size();
    if (weights.size() != expected)
      throw DataError("model: " + std::to_string(weights.size()) + " weights, expected " + std::to_string(expected));

    SavedModel saved{std::move(pipeline), Model{}, HyperParams{}};
    if (spec.classifier == ClassifierKind::Vtt) {
      VttModel m;
      m.theta = weights;
      m.lambda = -j.at("bias").get<double>();
      m.beta = vector_from(j.at("beta"));
      m.ner_tool_ids = j.at("ner_tool_ids").get<std::vector<std::string>>();
      if (m.ner_tool_ids != spec.ner_tools || m.beta.size() != static_cast<Eigen::Index>(spec.ner_tools.size()))
        throw DataError("model: VTT beta terms do not match its NER tools");
      saved.params.vtt_lambda = m.lambda;
      saved.params.vtt_beta.assign(m.beta.data(), m.beta.data() + m.beta.size());
      saved.model = std::move(m);
    } else {
      saved.model = LinearModel{spec.classifier, weights, j.at("bias").get<double>()};
    }
    return saved;
  } catch (const json::exception& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const SavedModel& saved) {
  std::ofstream out(path);
  out << model_to_json(saved).dump(1) << '\n';
  out.close();
  if (!out) throw DataError("cannot write model " + path.string());
}

SavedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("model " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace lintext
