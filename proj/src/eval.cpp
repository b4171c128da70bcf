#include "lintext/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lintext {

Confusion confusion(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) throw DataError("confusion: length mismatch");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool t = is_positive(truth[i]);
    const bool p = is_positive(predicted[i]);
    if (t && p) ++c.tp;
    else if (!t && p) ++c.fp;
    else if (t && !p) ++c.fn;
    else ++c.tn;
  }
  return c;
}

F1Result f1(const Confusion& c) {
  const long denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) return {0.0, true};
  return {2.0 * static_cast<double>(c.tp) / static_cast<double>(denom), false};
}

double mcc(const Confusion& c) {
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);
  const double a = tp + fp, b = tp + fn, d = tn + fp, e = tn + fn;
  if (a == 0 || b == 0 || d == 0 || e == 0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(a * b * d * e);
}

PrCurve interpolated_pr_auc(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw DataError("interpolated_pr_auc: length mismatch");
  const long positives = static_cast<long>(std::count(labels.begin(), labels.end(), Label::Relevant));
  if (positives == 0) throw DataError("interpolated_pr_auc: no positive labels");
  for (double s : scores)
    if (!std::isfinite(s)) throw DataError("interpolated_pr_auc: non-finite score");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const double p = static_cast<double>(positives);
  PrCurve curve;
  long tp_a = 0, fp_a = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    long tp_b = tp_a, fp_b = fp_a;
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      (is_positive(labels[order[i]]) ? tp_b : fp_b) += 1;
      ++i;
    }
    if (tp_b == 0) {
      fp_a = fp_b;
      continue;
    }
    if (curve.points.empty()) {
      // Interpolating from (0, 0) holds precision constant down to recall 0.
      curve.points.push_back({0.0, static_cast<double>(tp_b) / static_cast<double>(tp_b + fp_b)});
      tp_a = 0;
      fp_a = 0;
    }
    if (tp_b == tp_a) {
      curve.points.push_back({static_cast<double>(tp_b) / p,
                              static_cast<double>(tp_b) / static_cast<double>(tp_b + fp_b)});
    } else {
      const double slope = static_cast<double>(fp_b - fp_a) / static_cast<double>(tp_b - tp_a);
      for (long x = 1; x <= tp_b - tp_a; ++x) {
        const double tp = static_cast<double>(tp_a + x);
        const double fp = static_cast<double>(fp_a) + slope * static_cast<double>(x);
        curve.points.push_back({tp / p, tp / (tp + fp)});
      }
    }
    tp_a = tp_b;
    fp_a = fp_b;
  }
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto& a = curve.points[k - 1];
    const auto& b = curve.points[k];
    curve.area += (b.recall - a.recall) * 0.5 * (a.precision + b.precision);
  }
  return curve;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

}  // namespace lintext
