#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "lintext/classifiers.hpp"

using namespace lintext;
using doctest::Approx;

namespace {

struct Toy {
  DenseMatrix x;
  std::vector<Label> y;
};

Toy random_2d(unsigned seed, int n = 20) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Toy t{DenseMatrix(n, 2), {}};
  for (int i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    t.x(i, 0) = g(rng) + (pos ? 0.8 : -0.8);
    t.x(i, 1) = g(rng) + (pos ? 0.3 : -0.3);
    t.y.push_back(pos ? Label::Relevant : Label::Irrelevant);
  }
  return t;
}

Toy random_binary(unsigned seed, int n, int k) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Toy t{DenseMatrix::Zero(n, k), {}};
  for (int i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    for (int j = 0; j < k; ++j) t.x(i, j) = u(rng) < (j < 3 && pos ? 0.7 : 0.3) ? 1.0 : 0.0;
    t.y.push_back(pos ? Label::Relevant : Label::Irrelevant);
  }
  return t;
}

// Dual of the augmented-bias SVM, solved by projected gradient ascent:
// max sum(a) - 0.5 a'Qa, 0 <= a <= C, Q_ij = y_i y_j (x_i.x_j + 1).
double svm_dual_oracle(const Toy& t, double c) {
  const Eigen::Index n = t.x.rows();
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = sign_of(t.y[static_cast<std::size_t>(i)]);
  DenseMatrix k = t.x * t.x.transpose();
  k.array() += 1.0;
  const DenseMatrix q = y.asDiagonal() * k * y.asDiagonal();
  const double step = 1.0 / Eigen::SelfAdjointEigenSolver<DenseMatrix>(q).eigenvalues().maxCoeff();
  Vector a = Vector::Zero(n);
  for (int it = 0; it < 200000; ++it) {
    const Vector grad = Vector::Ones(n) - q * a;
    a = (a + step * grad).cwiseMax(0.0).cwiseMin(c);
  }
  return a.sum() - 0.5 * a.dot(q * a);
}

DenseMatrix permute_cols(const DenseMatrix& x, const std::vector<Eigen::Index>& perm) {
  DenseMatrix out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) out.col(c) = x.col(perm[static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace

TEST_CASE("feature statistics") {
  DenseMatrix x(8, 3);
  // rows 0-3 positive, 4-7 negative
  x << 1, 1, 0,  //
      1, 1, 0,   //
      1, 0, 0,   //
      1, 0, 0,   //
      0, 1, 0,   //
      0, 0, 0,   //
      0, 0, 0,   //
      0, 0, 0;
  const std::vector<Label> y = {Label::Relevant, Label::Relevant, Label::Relevant, Label::Relevant,
                                Label::Irrelevant, Label::Irrelevant, Label::Irrelevant, Label::Irrelevant};
  const FeatureStats s = feature_stats(Matrix(x), y);
  CHECK(s.p[0] == 1.0);
  CHECK(s.n[0] == 0.0);
  CHECK(s.p[1] == 0.5);
  CHECK(s.n[1] == 0.25);
  CHECK(s.p[2] == 0.0);
  CHECK(s.n[2] == 0.0);
  const std::vector<Label> one_class(8, Label::Relevant);
  CHECK_THROWS_AS(feature_stats(Matrix(x), one_class), DataError);
}

TEST_CASE("vtt angles") {
  FeatureStats s{Vector(5), Vector(5)};
  s.p << 0.3, 1.0, 0.5, 0.0, 0.0;
  s.n << 0.3, 0.0, 0.25, 0.0, 0.4;
  const Vector th = vtt_theta(s);
  CHECK(th[0] == 0.0);
  CHECK(th[1] == Approx(M_PI / 4).epsilon(1e-15));
  CHECK(th[2] == Approx(0.321751).epsilon(1e-6));
  CHECK(th[3] == 0.0);
  CHECK(th[4] == Approx(-M_PI / 4).epsilon(1e-15));
}

TEST_CASE("vtt score examples") {
  VttModel m;
  m.theta = Vector(2);
  m.theta << M_PI / 4, -M_PI / 4;
  Vector x(2);
  x << 1, 1;
  CHECK(std::abs(vtt_score(m, x)) <= 1e-15);
  CHECK(vtt_score(m, Vector(Vector::Zero(2))) == 0.0);
  CHECK(label_for_score(vtt_score(m, Vector(Vector::Zero(2)))) == Label::Irrelevant);

  m.beta = Vector::Constant(1, 2.0);
  m.lambda = 0.7;
  m.ner_tool_ids = {"tool"};
  const std::vector<double> c = {2.0};
  CHECK(vtt_score(m, Vector(Vector::Zero(2)), c) == Approx(-0.7));
  const std::vector<double> wrong = {1.0, 2.0};
  CHECK_THROWS_AS(vtt_score(m, x, wrong), DataError);
}

TEST_CASE("svm separates a textbook pair") {
  DenseMatrix x(2, 2);
  x << 1, 0, -1, 0;
  const std::vector<Label> y = {Label::Relevant, Label::Irrelevant};
  const LinearModel m = train_svm(Matrix(x), y, 1000.0);
  CHECK(std::abs(m.weights[1]) <= 1e-6);
  CHECK(m.weights[0] > 0);
  CHECK(m.score(Matrix(x), 0) >= 1 - 1e-4);
  CHECK(-m.score(Matrix(x), 1) >= 1 - 1e-4);
}

TEST_CASE("svm objective matches the dual oracle") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Toy t = random_2d(seed);
    const LinearModel m = train_svm(Matrix(t.x), t.y, 1.0);
    const double primal = svm_primal_objective(Matrix(t.x), t.y, 1.0, m);
    const double dual = svm_dual_oracle(t, 1.0);
    CAPTURE(seed);
    CHECK(std::abs(primal - dual) <= 1e-4 * std::abs(dual));
  }
}

TEST_CASE("svm on duplicated separable data keeps the boundary") {
  DenseMatrix x(4, 2);
  x << 2, 1, 1, 2, -1, -2, -2, -1;
  const std::vector<Label> y = {Label::Relevant, Label::Relevant, Label::Irrelevant, Label::Irrelevant};
  DenseMatrix xx(8, 2);
  xx << x, x;
  std::vector<Label> yy = y;
  yy.insert(yy.end(), y.begin(), y.end());
  const LinearModel a = train_svm(Matrix(x), y, 1000.0);
  const LinearModel b = train_svm(Matrix(xx), yy, 1000.0);
  CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() <= 1e-3);
  CHECK(std::abs(a.bias - b.bias) <= 1e-3);
}

TEST_CASE("svm reports the iteration cap") {
  const Toy t = random_2d(9);
  try {
    train_svm(Matrix(t.x), t.y, 100.0, SolverOptions{1e-12, 2});
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("logistic regression gradient matches finite differences") {
  const Toy t = random_2d(4);
  Vector w(2);
  w << 0.3, -0.2;
  const double b = 0.1, c = 0.7, h = 1e-6;
  const Vector g = logreg_gradient(Matrix(t.x), t.y, c, w, b);
  for (int i = 0; i < 2; ++i) {
    Vector wp = w, wm = w;
    wp[i] += h;
    wm[i] -= h;
    const double fd = (logreg_objective(Matrix(t.x), t.y, c, wp, b) - logreg_objective(Matrix(t.x), t.y, c, wm, b)) / (2 * h);
    CHECK(g[i] == Approx(fd).epsilon(1e-6));
  }
  const double fd_b = (logreg_objective(Matrix(t.x), t.y, c, w, b + h) - logreg_objective(Matrix(t.x), t.y, c, w, b - h)) / (2 * h);
  CHECK(g[2] == Approx(fd_b).epsilon(1e-6));
}

TEST_CASE("logistic regression converges to a stationary point") {
  for (unsigned seed : {4u, 5u, 6u}) {
    const Toy t = random_2d(seed);
    for (double c : {0.01, 1.0, 100.0}) {
      const LinearModel m = train_logreg(Matrix(t.x), t.y, c);
      CHECK(logreg_gradient(Matrix(t.x), t.y, c, m.weights, m.bias).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("logistic regression without signal") {
  const DenseMatrix zeros = DenseMatrix::Zero(4, 3);
  const std::vector<Label> balanced = {Label::Relevant, Label::Irrelevant, Label::Relevant, Label::Irrelevant};
  const LinearModel a = train_logreg(Matrix(zeros), balanced, 1.0);
  CHECK(a.weights.cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(a.bias) <= 1e-12);
  const std::vector<Label> three_to_one = {Label::Relevant, Label::Relevant, Label::Relevant, Label::Irrelevant};
  const LinearModel b = train_logreg(Matrix(zeros), three_to_one, 1.0);
  CHECK(b.bias == Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("naive bayes smoothing and uninformative features") {
  DenseMatrix x(8, 2);
  x << 1, 1, 1, 0, 1, 1, 0, 0,  //
      0, 1, 0, 0, 1, 1, 0, 0;
  const std::vector<Label> y = {Label::Relevant, Label::Relevant, Label::Relevant, Label::Relevant,
                                Label::Irrelevant, Label::Irrelevant, Label::Irrelevant, Label::Irrelevant};
  const LinearModel m = train_naive_bayes(Matrix(x), y, 1.0);
  // Feature 0: 3 of 4 positives, 1 of 4 negatives. Feature 1: 2 of 4 in both.
  const double qp = 4.0 / 6.0, qn = 2.0 / 6.0;
  CHECK(m.weights[0] == Approx(std::log(qp * (1 - qn) / (qn * (1 - qp)))).epsilon(1e-14));
  CHECK(std::abs(m.weights[1]) <= 1e-15);
  CHECK_THROWS(train_naive_bayes(Matrix(x), y, 0.0));
}

TEST_CASE("naive bayes scores equal the enumerated posterior odds") {
  const Toy t = random_binary(12, 30, 2);
  const double alpha = 0.5;
  const LinearModel m = train_naive_bayes(Matrix(t.x), t.y, alpha);
  double n_pos = 0, n_neg = 0, c_pos[2] = {0, 0}, c_neg[2] = {0, 0};
  for (int r = 0; r < 30; ++r) {
    const bool pos = is_positive(t.y[static_cast<std::size_t>(r)]);
    (pos ? n_pos : n_neg) += 1;
    for (int j = 0; j < 2; ++j) (pos ? c_pos : c_neg)[j] += t.x(r, j);
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int x[2] = {a, b};
      double lp = std::log(n_pos / 30), ln = std::log(n_neg / 30);
      for (int j = 0; j < 2; ++j) {
        const double qp = (c_pos[j] + alpha) / (n_pos + 2 * alpha);
        const double qn = (c_neg[j] + alpha) / (n_neg + 2 * alpha);
        lp += std::log(x[j] ? qp : 1 - qp);
        ln += std::log(x[j] ? qn : 1 - qn);
      }
      DenseMatrix row(1, 2);
      row << a, b;
      CHECK(m.score(Matrix(row), 0) == Approx(lp - ln).epsilon(1e-12));
    }
}

TEST_CASE("lda matches the closed-form 2x2 inverse") {
  const Toy t = random_2d(21, 40);
  const double g = 0.1;
  const LinearModel m = train_lda(Matrix(t.x), t.y, g);

  Eigen::Vector2d mp = Eigen::Vector2d::Zero(), mn = Eigen::Vector2d::Zero();
  double np = 0, nn = 0;
  for (int r = 0; r < 40; ++r) {
    if (is_positive(t.y[static_cast<std::size_t>(r)])) {
      mp += t.x.row(r).transpose();
      ++np;
    } else {
      mn += t.x.row(r).transpose();
      ++nn;
    }
  }
  mp /= np;
  mn /= nn;
  double s00 = 0, s01 = 0, s11 = 0;
  for (int r = 0; r < 40; ++r) {
    const Eigen::Vector2d d = t.x.row(r).transpose() - (is_positive(t.y[static_cast<std::size_t>(r)]) ? mp : mn);
    s00 += d[0] * d[0];
    s01 += d[0] * d[1];
    s11 += d[1] * d[1];
  }
  s00 /= 38;
  s01 /= 38;
  s11 /= 38;
  const double tr = (s00 + s11) / 2;
  const double a = (1 - g) * s00 + g * tr, b = (1 - g) * s01, d = (1 - g) * s11 + g * tr;
  const double det = a * d - b * b;
  const Eigen::Vector2d diff = mp - mn;
  const double w0 = (d * diff[0] - b * diff[1]) / det;
  const double w1 = (-b * diff[0] + a * diff[1]) / det;
  const double bias = -0.5 * (w0 * (mp[0] + mn[0]) + w1 * (mp[1] + mn[1])) + std::log(np / nn);
  CHECK(std::abs(m.weights[0] - w0) <= 1e-10);
  CHECK(std::abs(m.weights[1] - w1) <= 1e-10);
  CHECK(std::abs(m.bias - bias) <= 1e-10);
}

TEST_CASE("full shrinkage points lda along the mean difference") {
  const Toy t = random_2d(22, 40);
  const LinearModel m = train_lda(Matrix(t.x), t.y, 1.0);
  const LinearModel d = train_dlda(Matrix(t.x), t.y, 1.0);
  Vector diff = Vector::Zero(2);
  for (int r = 0; r < 40; ++r) diff += (is_positive(t.y[static_cast<std::size_t>(r)]) ? 1.0 : -1.0) / 20.0 * t.x.row(r).transpose();
  CHECK(std::abs(m.weights.normalized().dot(diff.normalized()) - 1.0) <= 1e-12);
  CHECK((m.weights - d.weights).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("singular lda and dlda") {
  DenseMatrix x(4, 3);
  x << 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0;  // third column constant
  const std::vector<Label> y = {Label::Relevant, Label::Relevant, Label::Irrelevant, Label::Irrelevant};
  CHECK_THROWS_AS(train_lda(Matrix(x), y, 0.0), DataError);
  CHECK_THROWS_AS(train_dlda(Matrix(x), y, 0.0), DataError);
  CHECK_NOTHROW(train_lda(Matrix(x), y, 0.5));
  CHECK_NOTHROW(train_dlda(Matrix(x), y, 0.5));
}

TEST_CASE("dlda zero mean difference gives zero weight") {
  DenseMatrix x(4, 2);
  x << 1, 2, 3, 3, 1, 0, 3, 1;
  const std::vector<Label> y = {Label::Relevant, Label::Relevant, Label::Irrelevant, Label::Irrelevant};
  const LinearModel m = train_dlda(Matrix(x), y, 0.0);
  CHECK(m.weights[0] == 0.0);
  CHECK(m.weights[1] > 0.0);
}

TEST_CASE("every classifier is invariant to column permutation") {
  const Toy t = random_binary(31, 40, 6);
  const std::vector<Eigen::Index> perm = {3, 0, 5, 1, 4, 2};
  const DenseMatrix xp = permute_cols(t.x, perm);
  for (auto kind : {ClassifierKind::Vtt, ClassifierKind::Svm, ClassifierKind::LogReg, ClassifierKind::NaiveBayes,
                    ClassifierKind::Lda, ClassifierKind::DiagLda}) {
    CAPTURE(to_string(kind));
    HyperParams h;
    h.lda_shrinkage = h.dlda_shrinkage = 0.2;
    h.vtt_lambda_quantile = 0.5;
    const Matrix a(SparseMatrix(t.x.sparseView())), b(SparseMatrix(xp.sparseView()));
    TrainingView va{&a, &a, nullptr, t.y, {}}, vb{&b, &b, nullptr, t.y, {}};
    const Model ma = make_trainer(kind, va)->fit(h);
    const Model mb = make_trainer(kind, vb)->fit(h);
    for (Eigen::Index r = 0; r < 40; ++r)
      CHECK(predict(ma, a, r).score == Approx(predict(mb, b, r).score).epsilon(1e-9));
  }
}

TEST_CASE("training is deterministic") {
  const Toy t = random_2d(41, 30);
  const LinearModel a = train_svm(Matrix(t.x), t.y, 1.0), b = train_svm(Matrix(t.x), t.y, 1.0);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  const LinearModel c = train_logreg(Matrix(t.x), t.y, 1.0), d = train_logreg(Matrix(t.x), t.y, 1.0);
  CHECK(c.weights == d.weights);
}

TEST_CASE("trainer objects reproduce the free functions") {
  const Toy t = random_2d(51, 30);
  const Matrix m(t.x);
  TrainingView v{&m, nullptr, nullptr, t.y, {}};
  HyperParams h;
  h.svm_c = 0.5;
  h.logreg_c = 2.0;
  h.lda_shrinkage = 0.3;
  const LinearModel svm = std::get<LinearModel>(make_trainer(ClassifierKind::Svm, v)->fit(h));
  CHECK(svm.weights == train_svm(m, t.y, 0.5).weights);
  const LinearModel lr = std::get<LinearModel>(make_trainer(ClassifierKind::LogReg, v)->fit(h));
  CHECK(lr.weights == train_logreg(m, t.y, 2.0).weights);
  const LinearModel lda = std::get<LinearModel>(make_trainer(ClassifierKind::Lda, v)->fit(h));
  CHECK((lda.weights - train_lda(m, t.y, 0.3).weights).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("vtt trainer routes NER counts to beta terms") {
  const Toy t = random_binary(61, 20, 4);
  const Matrix m(SparseMatrix(t.x.sparseView()));
  DenseMatrix ner(20, 2);
  for (int r = 0; r < 20; ++r) ner.row(r) << r % 3, r % 5;
  TrainingView v{&m, &m, &ner, t.y, {"a", "b"}};
  HyperParams h;
  h.vtt_beta = {2.0, 4.0};
  h.vtt_lambda = 0.25;
  const auto vtt = std::get<VttModel>(make_trainer(ClassifierKind::Vtt, v)->fit(h));
  CHECK(vtt.theta.size() == 4);
  CHECK(vtt.beta.size() == 2);
  const std::vector<double> counts = {2.0, 1.0};
  const double expected = m.row_dot(0, vtt.theta) - (2.0 - 2.0) / 2.0 - (4.0 - 1.0) / 4.0 - 0.25;
  CHECK(predict(Model(vtt), m, 0, counts).score == Approx(expected).epsilon(1e-14));
  h.vtt_beta = {1.0};
  CHECK_THROWS_AS(make_trainer(ClassifierKind::Vtt, v)->fit(h), UsageError);
}

TEST_CASE("vtt quantile threshold splits the training scores") {
  const Toy t = random_binary(71, 40, 5);
  const Matrix m(SparseMatrix(t.x.sparseView()));
  TrainingView v{&m, &m, nullptr, t.y, {}};
  HyperParams h;
  h.vtt_lambda_quantile = 0.5;
  const auto vtt = std::get<VttModel>(make_trainer(ClassifierKind::Vtt, v)->fit(h));
  std::vector<double> scores;
  for (Eigen::Index r = 0; r < 40; ++r) scores.push_back(m.row_dot(r, vtt.theta));
  CHECK(vtt.lambda == Approx(quantile(scores, 0.5)));
}

TEST_CASE("quantile interpolates") {
  CHECK(quantile({3, 1, 2, 4}, 0.0) == 1.0);
  CHECK(quantile({3, 1, 2, 4}, 1.0) == 4.0);
  CHECK(quantile({3, 1, 2, 4}, 0.5) == 2.5);
  CHECK(quantile({10, 20}, 0.25) == 12.5);
}

TEST_CASE("predict tie rule and dimension check") {
  LinearModel m{ClassifierKind::Svm, Vector::Ones(2), -1.0};
  DenseMatrix x(1, 2);
  x << 0.5, 0.5;
  const Prediction p = predict(Model(m), Matrix(x), 0);
  CHECK(p.score == 0.0);
  CHECK(p.label == Label::Irrelevant);
  CHECK_THROWS_AS(predict(Model(m), Matrix(DenseMatrix(DenseMatrix::Zero(1, 3))), 0), DataError);
}

TEST_CASE("hyperparameter validation") {
  HyperParams h;
  h.svm_c = 0;
  CHECK_THROWS_AS(h.validate(ClassifierKind::Svm), UsageError);
  CHECK_NOTHROW(h.validate(ClassifierKind::LogReg));
  h.lda_shrinkage = 1.5;
  CHECK_THROWS_AS(h.validate(ClassifierKind::Lda), UsageError);
  CHECK(parse_classifier("dlda") == ClassifierKind::DiagLda);
  CHECK_THROWS_AS(parse_classifier("knn"), UsageError);
}

TEST_CASE("dlda scores equal gaussian naive bayes log odds") {
  std::mt19937 rng(81);
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = 60, d = 5;
  DenseMatrix x(n, d);
  std::vector<Label> y;
  for (int r = 0; r < n; ++r) {
    const bool pos = r % 3 != 0;
    for (int j = 0; j < d; ++j) x(r, j) = (1.0 + j) * g(rng) + (pos ? 0.5 * j : -0.2);
    y.push_back(pos ? Label::Relevant : Label::Irrelevant);
  }
  const LinearModel m = train_dlda(Matrix(x), y, 0.0);

  Vector mp = Vector::Zero(d), mn = Vector::Zero(d), var = Vector::Zero(d);
  double np = 0, nn = 0;
  for (int r = 0; r < n; ++r) {
    if (is_positive(y[static_cast<std::size_t>(r)])) {
      mp += x.row(r).transpose();
      ++np;
    } else {
      mn += x.row(r).transpose();
      ++nn;
    }
  }
  mp /= np;
  mn /= nn;
  for (int r = 0; r < n; ++r) {
    const Vector dev = x.row(r).transpose() - (is_positive(y[static_cast<std::size_t>(r)]) ? mp : mn);
    var += dev.cwiseProduct(dev);
  }
  var /= n - 2;

  for (int r = 0; r < n; ++r) {
    double lp = std::log(np / n), ln = std::log(nn / n);
    for (int j = 0; j < d; ++j) {
      lp -= (x(r, j) - mp[j]) * (x(r, j) - mp[j]) / (2 * var[j]);
      ln -= (x(r, j) - mn[j]) * (x(r, j) - mn[j]) / (2 * var[j]);
    }
    CHECK(std::abs(m.score(Matrix(x), r) - (lp - ln)) <= 1e-10);
  }
}
