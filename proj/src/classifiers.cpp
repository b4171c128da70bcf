#include "lintext/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

namespace lintext {

std::string_view to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::Vtt: return "vtt";
    case ClassifierKind::Svm: return "svm";
    case ClassifierKind::LogReg: return "logreg";
    case ClassifierKind::NaiveBayes: return "nb";
    case ClassifierKind::Lda: return "lda";
    case ClassifierKind::DiagLda: return "dlda";
  }
  return "?";
}

ClassifierKind parse_classifier(std::string_view text) {
  for (auto k : {ClassifierKind::Vtt, ClassifierKind::Svm, ClassifierKind::LogReg,
                 ClassifierKind::NaiveBayes, ClassifierKind::Lda, ClassifierKind::DiagLda})
    if (to_string(k) == text) return k;
  throw UsageError("unknown classifier '" + std::string(text) +
                   "' (expected vtt, svm, logreg, nb, lda or dlda)");
}

ClassifierKind kind_of(const Model& model) {
  if (std::holds_alternative<VttModel>(model)) return ClassifierKind::Vtt;
  return std::get<LinearModel>(model).kind;
}

namespace {

using RowMajorDense = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_training_input(const Matrix& m, std::span<const Label> labels, const char* who) {
  if (static_cast<std::size_t>(m.rows()) != labels.size())
    throw DataError(std::string(who) + ": " + std::to_string(m.rows()) + " rows but " +
                    std::to_string(labels.size()) + " labels");
  const std::size_t pos = count_positive(labels);
  if (pos == 0 || pos == labels.size())
    throw DataError(std::string(who) + ": training data must contain both classes");
}

Vector signed_labels(std::span<const Label> labels) {
  Vector y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = sign_of(labels[i]);
  return y;
}

double dot_row(const SparseMatrix& m, Eigen::Index r, const Vector& w) {
  double s = 0.0;
  for (SparseMatrix::InnerIterator it(m, r); it; ++it) s += it.value() * w[it.col()];
  return s;
}
double dot_row(const RowMajorDense& m, Eigen::Index r, const Vector& w) { return m.row(r).dot(w); }

void axpy_row(const SparseMatrix& m, Eigen::Index r, double a, Vector& w) {
  for (SparseMatrix::InnerIterator it(m, r); it; ++it) w[it.col()] += a * it.value();
}
void axpy_row(const RowMajorDense& m, Eigen::Index r, double a, Vector& w) {
  w += a * m.row(r).transpose();
}

double sq_norm_row(const SparseMatrix& m, Eigen::Index r) {
  double s = 0.0;
  for (SparseMatrix::InnerIterator it(m, r); it; ++it) s += it.value() * it.value();
  return s;
}
double sq_norm_row(const RowMajorDense& m, Eigen::Index r) { return m.row(r).squaredNorm(); }

// ---------------------------------------------------------------------------
// SVM: dual coordinate descent with shrinking, L1 (hinge) loss.

template <class M>
LinearModel svm_dual_cd(const M& x, const Vector& y, double c, SolverOptions opt) {
  const Eigen::Index n = x.rows();
  Vector w = Vector::Zero(x.cols());
  double b = 0.0;
  Vector alpha = Vector::Zero(n);
  Vector qd(n);
  for (Eigen::Index i = 0; i < n; ++i) qd[i] = sq_norm_row(x, i) + 1.0;

  std::vector<Eigen::Index> index(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) index[static_cast<std::size_t>(i)] = i;
  std::mt19937 rng(20130117u);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  double pg_max_old = kInf;
  double pg_min_old = -kInf;
  std::size_t active = index.size();

  for (int epoch = 0; epoch < opt.max_iterations; ++epoch) {
    for (std::size_t i = 0; i + 1 < active; ++i) {
      const std::size_t j = i + rng() % (active - i);
      std::swap(index[i], index[j]);
    }
    double pg_max = -kInf;
    double pg_min = kInf;
    double violation = 0.0;
    for (std::size_t s = 0; s < active; ++s) {
      const Eigen::Index i = index[s];
      const double g = y[i] * (dot_row(x, i, w) + b) - 1.0;
      double pg = 0.0;
      if (alpha[i] == 0.0) {
        if (g > pg_max_old) {
          --active;
          std::swap(index[s], index[active]);
          --s;
          continue;
        }
        if (g < 0.0) pg = g;
      } else if (alpha[i] == c) {
        if (g < pg_min_old) {
          --active;
          std::swap(index[s], index[active]);
          --s;
          continue;
        }
        if (g > 0.0) pg = g;
      } else {
        pg = g;
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      violation = std::max(violation, std::abs(pg));
      if (std::abs(pg) > 1e-14) {
        const double old = alpha[i];
        alpha[i] = std::clamp(old - g / qd[i], 0.0, c);
        const double d = (alpha[i] - old) * y[i];
        axpy_row(x, i, d, w);
        b += d;
      }
    }
    if (violation < opt.tolerance) {
      if (active == index.size()) return {ClassifierKind::Svm, w, b};
      active = index.size();
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max <= 0.0 ? kInf : pg_max;
    pg_min_old = pg_min >= 0.0 ? -kInf : pg_min;
  }
  throw ConvergenceError("svm: dual coordinate descent did not converge within the cap of " +
                         std::to_string(opt.max_iterations) + " epochs");
}

// ---------------------------------------------------------------------------
// Logistic regression: Newton iterations with preconditioned conjugate
// gradient, Armijo backtracking.

double log1p_exp_neg(double margin) {
  // log(1 + exp(-margin)), stable for either sign
  return margin > 0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

template <class M>
double logreg_value(const M& x, const Vector& y, double c, const Vector& w, double b) {
  const Vector z = (x * w).array() + b;
  double f = 0.5 * w.squaredNorm() / c;
  for (Eigen::Index r = 0; r < z.size(); ++r) f += log1p_exp_neg(y[r] * z[r]);
  return f;
}

template <class M>
LinearModel logreg_newton(const M& x, const Vector& y, double c, SolverOptions opt) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Vector w = Vector::Zero(d);
  double b = 0.0;
  // Intercept-only start: the exact optimum when every feature is zero.
  {
    const double pos = (y.array() > 0).count();
    b = std::log(pos / (static_cast<double>(n) - pos));
  }
  Vector diag_h(n), coef(n);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const Vector z = (x * w).array() + b;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double s = sigmoid(y[r] * z[r]);
      coef[r] = -y[r] * (1.0 - s);
      diag_h[r] = s * (1.0 - s);
    }
    Vector gw = w / c + x.transpose() * coef;
    const double gb = coef.sum();
    const double gnorm = std::max(gw.cwiseAbs().maxCoeff(), std::abs(gb));
    if (gnorm < opt.tolerance) return {ClassifierKind::LogReg, w, b};

    // Jacobi preconditioner of the Hessian [X^T D X + I/C, X^T D; D^T X, sum D].
    Vector precond_w = Vector::Constant(d, 1.0 / c);
    if constexpr (std::is_same_v<M, SparseMatrix>) {
      for (Eigen::Index r = 0; r < n; ++r)
        for (SparseMatrix::InnerIterator it(x, r); it; ++it)
          precond_w[it.col()] += diag_h[r] * it.value() * it.value();
    } else {
      precond_w += (x.array().square().colwise() * diag_h.array()).colwise().sum().transpose().matrix();
    }
    const double damping = 1e-12;
    const double precond_b = diag_h.sum() + damping;

    auto hess = [&](const Vector& vw, double vb, Vector& out_w, double& out_b) {
      Vector u = (x * vw).array() + vb;
      u.array() *= diag_h.array();
      out_w = x.transpose() * u + vw / c;
      out_b = u.sum() + damping * vb;
    };

    // Preconditioned CG on H p = -g.
    Vector pw = Vector::Zero(d);
    double pb = 0.0;
    Vector rw = -gw;
    double rb = -gb;
    Vector zw = rw.cwiseQuotient(precond_w);
    double zb = rb / precond_b;
    Vector dw = zw;
    double db = zb;
    double rz = rw.dot(zw) + rb * zb;
    const double gnorm2 = std::sqrt(gw.squaredNorm() + gb * gb);
    const double cg_tol = std::min(0.1, std::sqrt(gnorm2)) * gnorm2;
    const int cg_cap = static_cast<int>(std::min<Eigen::Index>(d + 1, 2000));
    Vector hw;
    double hb = 0.0;
    for (int k = 0; k < cg_cap; ++k) {
      if (std::sqrt(rw.squaredNorm() + rb * rb) <= cg_tol) break;
      hess(dw, db, hw, hb);
      const double curv = dw.dot(hw) + db * hb;
      if (curv <= 0.0) break;
      const double step = rz / curv;
      pw += step * dw;
      pb += step * db;
      rw -= step * hw;
      rb -= step * hb;
      zw = rw.cwiseQuotient(precond_w);
      zb = rb / precond_b;
      const double rz_new = rw.dot(zw) + rb * zb;
      const double beta = rz_new / rz;
      rz = rz_new;
      dw = zw + beta * dw;
      db = zb + beta * db;
    }
    if (pw.squaredNorm() + pb * pb == 0.0) {
      pw = -gw;
      pb = -gb;
    }

    const double f0 = logreg_value(x, y, c, w, b);
    const double slope = gw.dot(pw) + gb * pb;
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector w_try = w + step * pw;
      const double b_try = b + step * pb;
      const double f1 = logreg_value(x, y, c, w_try, b_try);
      if (f1 <= f0 + 1e-4 * step * slope + 1e-13 * std::abs(f0)) {
        w = w_try;
        b = b_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw ConvergenceError("logreg: line search failed at gradient norm " + std::to_string(gnorm));
  }
  throw ConvergenceError("logreg: Newton iterations did not converge within the cap of " +
                         std::to_string(opt.max_iterations) + " iterations");
}

template <class F>
decltype(auto) with_row_major(const Matrix& m, F&& f) {
  if (m.is_sparse()) return f(m.sparse());
  const RowMajorDense rm = m.dense();
  return f(rm);
}

// ---------------------------------------------------------------------------
// Class-conditional moments shared by LDA and dLDA.

struct ClassMoments {
  Vector mean_pos;
  Vector mean_neg;
  double n_pos = 0;
  double n_neg = 0;

  double log_prior_ratio() const { return std::log(n_pos / n_neg); }
  double dof() const { return std::max(1.0, n_pos + n_neg - 2.0); }
};

ClassMoments class_means(const Matrix& m, std::span<const Label> labels) {
  ClassMoments cm;
  cm.mean_pos = Vector::Zero(m.cols());
  cm.mean_neg = Vector::Zero(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Vector& target = is_positive(labels[static_cast<std::size_t>(r)]) ? cm.mean_pos : cm.mean_neg;
    (is_positive(labels[static_cast<std::size_t>(r)]) ? cm.n_pos : cm.n_neg) += 1.0;
    if (m.is_sparse()) {
      for (SparseMatrix::InnerIterator it(m.sparse(), r); it; ++it) target[it.col()] += it.value();
    } else {
      target += m.dense().row(r).transpose();
    }
  }
  cm.mean_pos /= cm.n_pos;
  cm.mean_neg /= cm.n_neg;
  return cm;
}

LinearModel discriminant(ClassifierKind kind, Vector weights, const ClassMoments& cm) {
  const double bias = -0.5 * weights.dot(cm.mean_pos + cm.mean_neg) + cm.log_prior_ratio();
  return {kind, std::move(weights), bias};
}

class LdaTrainer final : public Trainer {
 public:
  LdaTrainer(const Matrix& m, std::span<const Label> labels) {
    check_training_input(m, labels, "lda");
    moments_ = class_means(m, labels);
    DenseMatrix centered = m.to_dense();
    for (Eigen::Index r = 0; r < centered.rows(); ++r)
      centered.row(r) -= (is_positive(labels[static_cast<std::size_t>(r)]) ? moments_.mean_pos
                                                                           : moments_.mean_neg)
                             .transpose();
    const Eigen::Index d = m.cols();
    scatter_ = DenseMatrix::Zero(d, d);
    scatter_.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / moments_.dof());
    scatter_ = scatter_.selfadjointView<Eigen::Lower>();
    mean_diag_ = scatter_.trace() / static_cast<double>(d);
  }

  LinearModel fit_lda(double shrinkage) const {
    if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) throw UsageError("lda: shrinkage must lie in [0, 1]");
    const Eigen::Index d = scatter_.rows();
    DenseMatrix sigma = (1.0 - shrinkage) * scatter_;
    sigma.diagonal().array() += shrinkage * mean_diag_;
    Eigen::LLT<DenseMatrix> llt(sigma);
    const double scale = std::max(sigma.diagonal().maxCoeff(), std::numeric_limits<double>::min());
    bool singular = llt.info() != Eigen::Success || !(mean_diag_ > 0.0);
    if (!singular) {
      const Vector l_diag = llt.matrixLLT().diagonal();
      singular = l_diag.minCoeff() * l_diag.minCoeff() <= 1e-10 * scale;
    }
    if (singular)
      throw DataError("lda: shrunk covariance is singular (d=" + std::to_string(d) +
                      ", shrinkage=" + std::to_string(shrinkage) +
                      "); project onto principal components or use shrinkage > 0");
    return discriminant(ClassifierKind::Lda, llt.solve(moments_.mean_pos - moments_.mean_neg), moments_);
  }

  Model fit(const HyperParams& p) const override { return fit_lda(p.lda_shrinkage); }

 private:
  ClassMoments moments_;
  DenseMatrix scatter_;
  double mean_diag_ = 0.0;
};

class DldaTrainer final : public Trainer {
 public:
  DldaTrainer(const Matrix& m, std::span<const Label> labels) {
    check_training_input(m, labels, "dlda");
    moments_ = class_means(m, labels);
    const Eigen::Index d = m.cols();
    // Pooled within-class variance per feature: sum of squares about each
    // row's class mean.
    variance_ = Vector::Zero(d);
    if (m.is_sparse()) {
      Vector sumsq_pos = Vector::Zero(d), sumsq_neg = Vector::Zero(d);
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Vector& target = is_positive(labels[static_cast<std::size_t>(r)]) ? sumsq_pos : sumsq_neg;
        for (SparseMatrix::InnerIterator it(m.sparse(), r); it; ++it)
          target[it.col()] += it.value() * it.value();
      }
      // sum (x - mu)^2 = sum x^2 - n mu^2, per class
      variance_ = (sumsq_pos - moments_.n_pos * moments_.mean_pos.cwiseAbs2()) +
                  (sumsq_neg - moments_.n_neg * moments_.mean_neg.cwiseAbs2());
      variance_ = variance_.cwiseMax(0.0);
    } else {
      const DenseMatrix& x = m.dense();
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const Vector& mu =
            is_positive(labels[static_cast<std::size_t>(r)]) ? moments_.mean_pos : moments_.mean_neg;
        variance_ += (x.row(r).transpose() - mu).cwiseAbs2();
      }
    }
    variance_ /= moments_.dof();
    mean_var_ = variance_.mean();
  }

  LinearModel fit_dlda(double shrinkage) const {
    if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) throw UsageError("dlda: shrinkage must lie in [0, 1]");
    const Vector sigma = (1.0 - shrinkage) * variance_.array() + shrinkage * mean_var_;
    const double floor = 1e-12 * std::max(mean_var_, std::numeric_limits<double>::min());
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
      if (!(sigma[i] > floor))
        throw DataError("dlda: feature " + std::to_string(i) +
                        " has zero variance; use shrinkage > 0");
    return discriminant(ClassifierKind::DiagLda,
                        (moments_.mean_pos - moments_.mean_neg).cwiseQuotient(sigma), moments_);
  }

  Model fit(const HyperParams& p) const override { return fit_dlda(p.dlda_shrinkage); }

 private:
  ClassMoments moments_;
  Vector variance_;
  double mean_var_ = 0.0;
};

class NaiveBayesTrainer final : public Trainer {
 public:
  NaiveBayesTrainer(const Matrix& m, std::span<const Label> labels) {
    check_training_input(m, labels, "naive bayes");
    if (!m.is_binary()) throw DataError("naive bayes: requires a binary occurrence matrix");
    count_pos_ = Vector::Zero(m.cols());
    count_neg_ = Vector::Zero(m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const bool pos = is_positive(labels[static_cast<std::size_t>(r)]);
      (pos ? n_pos_ : n_neg_) += 1.0;
      Vector& target = pos ? count_pos_ : count_neg_;
      if (m.is_sparse()) {
        for (SparseMatrix::InnerIterator it(m.sparse(), r); it; ++it) target[it.col()] += it.value();
      } else {
        target += m.dense().row(r).transpose();
      }
    }
  }

  LinearModel fit_nb(double alpha) const {
    if (!(alpha > 0.0)) throw DataError("naive bayes: alpha must be > 0");
    const Vector q_pos = (count_pos_.array() + alpha) / (n_pos_ + 2.0 * alpha);
    const Vector q_neg = (count_neg_.array() + alpha) / (n_neg_ + 2.0 * alpha);
    const Eigen::ArrayXd absent = (1.0 - q_pos.array()).log() - (1.0 - q_neg.array()).log();
    Vector w = (q_pos.array().log() - q_neg.array().log() - absent).matrix();
    const double bias = std::log(n_pos_ / n_neg_) + absent.sum();
    return {ClassifierKind::NaiveBayes, std::move(w), bias};
  }

  Model fit(const HyperParams& p) const override { return fit_nb(p.nb_alpha); }

 private:
  Vector count_pos_, count_neg_;
  double n_pos_ = 0, n_neg_ = 0;
};

class SvmTrainer final : public Trainer {
 public:
  SvmTrainer(const Matrix& m, std::span<const Label> labels) : m_(m), labels_(labels) {
    check_training_input(m, labels, "svm");
  }
  Model fit(const HyperParams& p) const override { return train_svm(m_, labels_, p.svm_c); }

 private:
  const Matrix& m_;
  std::span<const Label> labels_;
};

class LogRegTrainer final : public Trainer {
 public:
  LogRegTrainer(const Matrix& m, std::span<const Label> labels) : m_(m), labels_(labels) {
    check_training_input(m, labels, "logreg");
  }
  Model fit(const HyperParams& p) const override { return train_logreg(m_, labels_, p.logreg_c); }

 private:
  const Matrix& m_;
  std::span<const Label> labels_;
};

double ner_term(const Vector& beta, std::span<const double> counts) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    s += (beta[j] - counts[static_cast<std::size_t>(j)]) / beta[j];
  return s;
}

class VttTrainer final : public Trainer {
 public:
  explicit VttTrainer(const TrainingView& view) : view_(view) {
    const Matrix& occ = view.occurrence ? *view.occurrence : *view.features;
    theta_ = vtt_theta(feature_stats(occ, view.labels));
    if (view.features->cols() != theta_.size())
      throw DataError("vtt: scoring matrix has " + std::to_string(view.features->cols()) +
                      " columns, occurrence matrix has " + std::to_string(theta_.size()));
    const Eigen::Index n = view.features->rows();
    text_scores_.resize(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r)
      text_scores_[static_cast<std::size_t>(r)] = view.features->row_dot(r, theta_);
    num_tools_ = view.ner ? view.ner->cols() : 0;
    if (view.ner && view.ner->rows() != n) throw DataError("vtt: NER counts not aligned with rows");
  }

  Model fit(const HyperParams& p) const override {
    VttModel model;
    model.theta = theta_;
    model.ner_tool_ids = view_.ner_tool_ids;
    if (static_cast<Eigen::Index>(p.vtt_beta.size()) != num_tools_)
      throw UsageError("vtt: expected " + std::to_string(num_tools_) + " beta values, got " +
                       std::to_string(p.vtt_beta.size()));
    model.beta = Eigen::Map<const Vector>(p.vtt_beta.data(), num_tools_);
    for (Eigen::Index j = 0; j < num_tools_; ++j)
      if (!(model.beta[j] > 0.0)) throw UsageError("vtt: beta values must be > 0");
    if (p.vtt_lambda_quantile) {
      std::vector<double> scores = text_scores_;
      if (num_tools_ > 0) {
        std::vector<double> counts(static_cast<std::size_t>(num_tools_));
        for (std::size_t r = 0; r < scores.size(); ++r) {
          for (Eigen::Index j = 0; j < num_tools_; ++j)
            counts[static_cast<std::size_t>(j)] = (*view_.ner)(static_cast<Eigen::Index>(r), j);
          scores[r] -= ner_term(model.beta, counts);
        }
      }
      model.lambda = quantile(std::move(scores), *p.vtt_lambda_quantile);
    } else {
      model.lambda = p.vtt_lambda;
    }
    return model;
  }

 private:
  TrainingView view_;
  Vector theta_;
  std::vector<double> text_scores_;
  Eigen::Index num_tools_ = 0;
};

}  // namespace

FeatureStats feature_stats(const Matrix& m, std::span<const Label> labels) {
  if (static_cast<std::size_t>(m.rows()) != labels.size())
    throw DataError("feature_stats: rows and labels differ in length");
  if (!m.is_binary()) throw DataError("feature_stats: matrix is not binary");
  const std::size_t pos = count_positive(labels);
  if (pos == 0 || pos == labels.size())
    throw DataError("feature_stats: a class has zero documents");
  FeatureStats s{Vector::Zero(m.cols()), Vector::Zero(m.cols())};
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Vector& target = is_positive(labels[static_cast<std::size_t>(r)]) ? s.p : s.n;
    if (m.is_sparse()) {
      for (SparseMatrix::InnerIterator it(m.sparse(), r); it; ++it) target[it.col()] += it.value();
    } else {
      target += m.dense().row(r).transpose();
    }
  }
  s.p /= static_cast<double>(pos);
  s.n /= static_cast<double>(labels.size() - pos);
  return s;
}

Vector vtt_theta(const FeatureStats& stats) {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  Vector theta(stats.p.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double p = stats.p[i];
    const double n = stats.n[i];
    if (n == 0.0)
      theta[i] = p > 0.0 ? kQuarterPi : 0.0;
    else
      theta[i] = std::atan(p / n) - kQuarterPi;
  }
  return theta;
}

double vtt_score(const VttModel& model, const Matrix& x, Eigen::Index row,
                 std::span<const double> ner_counts) {
  if (x.cols() != model.theta.size())
    throw DataError("vtt_score: row has " + std::to_string(x.cols()) + " features, model has " +
                    std::to_string(model.theta.size()));
  if (static_cast<Eigen::Index>(ner_counts.size()) != model.num_tools())
    throw DataError("vtt_score: expected " + std::to_string(model.num_tools()) +
                    " NER counts, got " + std::to_string(ner_counts.size()));
  return x.row_dot(row, model.theta) - ner_term(model.beta, ner_counts) - model.lambda;
}

double vtt_score(const VttModel& model, const Vector& x, std::span<const double> ner_counts) {
  if (x.size() != model.theta.size()) throw DataError("vtt_score: dimension mismatch");
  if (static_cast<Eigen::Index>(ner_counts.size()) != model.num_tools())
    throw DataError("vtt_score: expected " + std::to_string(model.num_tools()) +
                    " NER counts, got " + std::to_string(ner_counts.size()));
  return x.dot(model.theta) - ner_term(model.beta, ner_counts) - model.lambda;
}

LinearModel train_svm(const Matrix& m, std::span<const Label> labels, double c, SolverOptions options) {
  check_training_input(m, labels, "svm");
  if (!(c > 0.0)) throw UsageError("svm: C must be > 0");
  const Vector y = signed_labels(labels);
  return with_row_major(m, [&](const auto& x) { return svm_dual_cd(x, y, c, options); });
}

LinearModel train_logreg(const Matrix& m, std::span<const Label> labels, double c, SolverOptions options) {
  check_training_input(m, labels, "logreg");
  if (!(c > 0.0)) throw UsageError("logreg: C must be > 0");
  const Vector y = signed_labels(labels);
  if (m.is_sparse()) return logreg_newton(m.sparse(), y, c, options);
  return logreg_newton(m.dense(), y, c, options);
}

LinearModel train_naive_bayes(const Matrix& m, std::span<const Label> labels, double alpha) {
  return NaiveBayesTrainer(m, labels).fit_nb(alpha);
}

LinearModel train_lda(const Matrix& m, std::span<const Label> labels, double shrinkage) {
  return LdaTrainer(m, labels).fit_lda(shrinkage);
}

LinearModel train_dlda(const Matrix& m, std::span<const Label> labels, double shrinkage) {
  return DldaTrainer(m, labels).fit_dlda(shrinkage);
}

double svm_primal_objective(const Matrix& m, std::span<const Label> labels, double c,
                            const LinearModel& model) {
  double f = 0.5 * (model.weights.squaredNorm() + model.bias * model.bias);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    f += c * std::max(0.0, 1.0 - sign_of(labels[static_cast<std::size_t>(r)]) * model.score(m, r));
  return f;
}

double logreg_objective(const Matrix& m, std::span<const Label> labels, double c,
                        const Vector& weights, double bias) {
  const Vector y = signed_labels(labels);
  if (m.is_sparse()) return logreg_value(m.sparse(), y, c, weights, bias);
  return logreg_value(m.dense(), y, c, weights, bias);
}

Vector logreg_gradient(const Matrix& m, std::span<const Label> labels, double c,
                       const Vector& weights, double bias) {
  const Vector y = signed_labels(labels);
  Vector coef(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double z = m.row_dot(r, weights) + bias;
    coef[r] = -y[r] * (1.0 - sigmoid(y[r] * z));
  }
  Vector g(m.cols() + 1);
  g.head(m.cols()) = weights / c;
  if (m.is_sparse())
    g.head(m.cols()) += m.sparse().transpose() * coef;
  else
    g.head(m.cols()) += m.dense().transpose() * coef;
  g[m.cols()] = coef.sum();
  return g;
}

Prediction predict(const Model& model, const Matrix& m, Eigen::Index row,
                   std::span<const double> ner_counts) {
  double score = 0.0;
  if (const auto* vtt = std::get_if<VttModel>(&model)) {
    score = vtt_score(*vtt, m, row, ner_counts);
  } else {
    const auto& lin = std::get<LinearModel>(model);
    if (m.cols() != lin.weights.size())
      throw DataError("predict: row has " + std::to_string(m.cols()) + " features, model has " +
                      std::to_string(lin.weights.size()));
    score = lin.score(m, row);
  }
  return {score, label_for_score(score)};
}

void HyperParams::validate(ClassifierKind kind) const {
  switch (kind) {
    case ClassifierKind::Svm:
      if (!(svm_c > 0)) throw UsageError("svm C must be > 0");
      break;
    case ClassifierKind::LogReg:
      if (!(logreg_c > 0)) throw UsageError("logreg C must be > 0");
      break;
    case ClassifierKind::NaiveBayes:
      if (!(nb_alpha > 0)) throw UsageError("nb alpha must be > 0");
      break;
    case ClassifierKind::Lda:
      if (!(lda_shrinkage >= 0 && lda_shrinkage <= 1)) throw UsageError("lda shrinkage must lie in [0, 1]");
      break;
    case ClassifierKind::DiagLda:
      if (!(dlda_shrinkage >= 0 && dlda_shrinkage <= 1)) throw UsageError("dlda shrinkage must lie in [0, 1]");
      break;
    case ClassifierKind::Vtt:
      for (double b : vtt_beta)
        if (!(b > 0)) throw UsageError("vtt beta values must be > 0");
      if (vtt_lambda_quantile && !(*vtt_lambda_quantile >= 0 && *vtt_lambda_quantile <= 1))
        throw UsageError("vtt lambda quantile must lie in [0, 1]");
      break;
  }
}

std::string describe(ClassifierKind kind, const HyperParams& p) {
  std::ostringstream os;
  os.precision(6);
  switch (kind) {
    case ClassifierKind::Svm: os << "C=" << p.svm_c; break;
    case ClassifierKind::LogReg: os << "C=" << p.logreg_c; break;
    case ClassifierKind::NaiveBayes: os << "alpha=" << p.nb_alpha; break;
    case ClassifierKind::Lda: os << "shrinkage=" << p.lda_shrinkage; break;
    case ClassifierKind::DiagLda: os << "shrinkage=" << p.dlda_shrinkage; break;
    case ClassifierKind::Vtt:
      if (p.vtt_lambda_quantile)
        os << "lambda_quantile=" << *p.vtt_lambda_quantile;
      else
        os << "lambda=" << p.vtt_lambda;
      if (!p.vtt_beta.empty()) {
        os << " beta=";
        for (std::size_t j = 0; j < p.vtt_beta.size(); ++j) os << (j ? "," : "") << p.vtt_beta[j];
      }
      break;
  }
  return os.str();
}

std::unique_ptr<Trainer> make_trainer(ClassifierKind kind, const TrainingView& view) {
  if (!view.features) throw UsageError("make_trainer: no feature matrix");
  switch (kind) {
    case ClassifierKind::Vtt: return std::make_unique<VttTrainer>(view);
    case ClassifierKind::Svm: return std::make_unique<SvmTrainer>(*view.features, view.labels);
    case ClassifierKind::LogReg: return std::make_unique<LogRegTrainer>(*view.features, view.labels);
    case ClassifierKind::NaiveBayes: return std::make_unique<NaiveBayesTrainer>(*view.features, view.labels);
    case ClassifierKind::Lda: return std::make_unique<LdaTrainer>(*view.features, view.labels);
    case ClassifierKind::DiagLda: return std::make_unique<DldaTrainer>(*view.features, view.labels);
  }
  throw UsageError("make_trainer: unknown classifier");
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DataError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace lintext
