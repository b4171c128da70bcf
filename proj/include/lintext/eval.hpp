#pragma once

#include <span>
#include <vector>

#include "lintext/common.hpp"

namespace lintext {

struct Confusion {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  long total() const { return tp + fp + tn + fn; }
};

Confusion confusion(std::span<const Label> truth, std::span<const Label> predicted);

struct F1Result {
  double value;
  bool undefined;  // tp + fp + fn == 0; value reported as 0
};

F1Result f1(const Confusion& c);

/// Zero whenever any marginal in the denominator is zero.
double mcc(const Confusion& c);

struct PrPoint {
  double recall;
  double precision;
};

struct PrCurve {
  std::vector<PrPoint> points;
  double area = 0.0;
};

/// Davis-Goadrich interpolated precision/recall curve and its trapezoidal
/// area. Scores are ranked descending with tied scores forming one step.
/// Between consecutive cut points A and B every intermediate true-positive
/// count is visited with false positives interpolated linearly. Cut points
/// with no true positives are not plotted; the curve starts at recall 0
/// with the precision of the first cut that has a true positive, which is
/// the constant precision of interpolating from the empty prediction set.
PrCurve interpolated_pr_auc(std::span<const double> scores, std::span<const Label> labels);

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
};

Summary summarize(std::span<const double> values);

}  // namespace lintext
