#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "lintext/eval.hpp"

using namespace lintext;
using doctest::Approx;

namespace {

constexpr Label P = Label::Relevant;
constexpr Label N = Label::Irrelevant;

// Enumerates every threshold "score >= t" over the distinct scores, keeps
// the achievable (TP, FP) points with TP > 0, fills in Davis-Goadrich
// interpolants between neighbours (the first from the empty set) and
// integrates with the trapezoid rule, holding precision flat to recall 0.
double brute_force_iauc(const std::vector<double>& scores, const std::vector<Label>& labels) {
  std::set<double, std::greater<>> thresholds(scores.begin(), scores.end());
  double pos = 0;
  for (Label l : labels) pos += is_positive(l);
  std::vector<std::pair<double, double>> cuts = {{0.0, 0.0}};
  for (double t : thresholds) {
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] >= t) (is_positive(labels[i]) ? tp : fp) += 1;
    cuts.emplace_back(tp, fp);
  }
  std::vector<std::pair<double, double>> curve;  // (recall, precision)
  std::pair<double, double> prev = cuts[0];
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    const auto [tb, fb] = cuts[k];
    if (tb == 0) {
      prev = {0.0, 0.0};
      continue;
    }
    const auto [ta, fa] = prev;
    if (tb == ta) {
      curve.emplace_back(tb / pos, tb / (tb + fb));
    } else {
      for (double x = 1; ta + x <= tb; ++x) {
        const double fp = fa + x * (fb - fa) / (tb - ta);
        curve.emplace_back((ta + x) / pos, (ta + x) / (ta + x + fp));
      }
    }
    prev = cuts[k];
  }
  double area = curve.front().first * curve.front().second;
  for (std::size_t k = 1; k < curve.size(); ++k)
    area += (curve[k].first - curve[k - 1].first) * (curve[k].second + curve[k - 1].second) / 2;
  return area;
}

}  // namespace

TEST_CASE("f1 examples") {
  CHECK(f1(Confusion{8, 2, 0, 2}).value == Approx(0.8));
  CHECK(f1(Confusion{5, 0, 5, 0}).value == 1.0);
  const F1Result degenerate = f1(Confusion{0, 0, 5, 5});
  CHECK(degenerate.value == 0.0);
  CHECK_FALSE(degenerate.undefined);
  const F1Result none = f1(Confusion{0, 0, 5, 0});
  CHECK(none.value == 0.0);
  CHECK(none.undefined);
}

TEST_CASE("mcc examples") {
  CHECK(mcc(Confusion{10, 0, 10, 0}) == 1.0);
  CHECK(mcc(Confusion{25, 25, 25, 25}) == 0.0);
  CHECK(mcc(Confusion{45, 10, 40, 5}) == Approx(1750.0 / std::sqrt(55.0 * 50 * 50 * 45)).epsilon(1e-15));
  CHECK(mcc(Confusion{45, 10, 40, 5}) == Approx(0.70353).epsilon(1e-5));
  CHECK(mcc(Confusion{0, 0, 10, 5}) == 0.0);
  CHECK(mcc(Confusion{0, 10, 0, 10}) == -1.0);
}

TEST_CASE("confusion counts") {
  const std::vector<Label> truth = {P, P, N, N, P};
  const std::vector<Label> pred = {P, N, P, N, P};
  const Confusion c = confusion(truth, pred);
  CHECK(c.tp == 2);
  CHECK(c.fn == 1);
  CHECK(c.fp == 1);
  CHECK(c.tn == 1);
  CHECK_THROWS_AS(confusion(truth, std::vector<Label>{P}), DataError);
}

TEST_CASE("label inversion negates mcc") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<long> d(0, 30);
    const Confusion c{d(rng), d(rng), d(rng), d(rng)};
    const Confusion inv{c.tn, c.fn, c.tp, c.fp};
    CHECK(mcc(inv) == Approx(mcc(c)).epsilon(1e-14));
    const Confusion flipped{c.fn, c.tn, c.fp, c.tp};  // predictions negated
    CHECK(mcc(flipped) == Approx(-mcc(c)).epsilon(1e-14));
    CHECK(std::abs(mcc(c)) <= 1.0);
  }
}

TEST_CASE("iauc examples") {
  CHECK(interpolated_pr_auc(std::vector<double>{4, 3, 2, 1}, std::vector<Label>{P, P, N, N}).area == 1.0);

  const PrCurve second = interpolated_pr_auc(std::vector<double>{2, 1}, std::vector<Label>{N, P});
  CHECK(second.points.back().recall == 1.0);
  CHECK(second.points.back().precision == 0.5);
  CHECK(second.area == 0.5);

  // Cuts (1,0) (1,1) (2,1) (2,2): 0.5 * 1 + 0.5 * (1/2 + 2/3) / 2.
  const double four = interpolated_pr_auc(std::vector<double>{4, 3, 2, 1}, std::vector<Label>{P, N, P, N}).area;
  CHECK(four == Approx(0.7916666666666666).epsilon(1e-15));
  CHECK(four == Approx(brute_force_iauc({4, 3, 2, 1}, {P, N, P, N})).epsilon(1e-15));

  CHECK_THROWS_AS(interpolated_pr_auc(std::vector<double>{1, 2}, std::vector<Label>{N, N}), DataError);
  CHECK_THROWS_AS(interpolated_pr_auc(std::vector<double>{NAN, 2}, std::vector<Label>{P, N}), DataError);
}

TEST_CASE("tied scores move as one step") {
  // A tie holding one positive and one negative interpolates through
  // precision 1/2 at recall 1/2.
  const PrCurve c = interpolated_pr_auc(std::vector<double>{1, 1, 0}, std::vector<Label>{P, N, P});
  CHECK(c.points.front().precision == 0.5);
  CHECK(c.area == Approx(brute_force_iauc({1, 1, 0}, {P, N, P})).epsilon(1e-15));
}

TEST_CASE("iauc agrees with brute force on every short list") {
  std::mt19937 rng(17);
  long checked = 0;
  for (std::size_t len = 1; len <= 8; ++len) {
    for (unsigned mask = 1; mask < (1u << len); ++mask) {
      std::vector<Label> labels(len);
      for (std::size_t i = 0; i < len; ++i) labels[i] = (mask >> i) & 1 ? P : N;
      // Distinct scores in list order, then two tie patterns.
      std::vector<double> distinct(len);
      for (std::size_t i = 0; i < len; ++i) distinct[i] = static_cast<double>(len - i);
      std::vector<double> ties(len), coarse(len);
      std::uniform_int_distribution<int> d(0, 3);
      for (std::size_t i = 0; i < len; ++i) {
        ties[i] = static_cast<double>(d(rng));
        coarse[i] = static_cast<double>((len - i) / 2);
      }
      for (const auto* s : {&distinct, &ties, &coarse}) {
        const double got = interpolated_pr_auc(*s, labels).area;
        CHECK(std::abs(got - brute_force_iauc(*s, labels)) <= 1e-10);
        CHECK(got >= 0.0);
        CHECK(got <= 1.0 + 1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked == 3 * 502);
}

TEST_CASE("summaries") {
  const Summary s = summarize(std::vector<double>{1, 2, 3, 4});
  CHECK(s.mean == 2.5);
  CHECK(s.std_error == Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(summarize(std::vector<double>{7}).std_error == 0.0);
}
