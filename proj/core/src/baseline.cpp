// Copyright 2026 The snnfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snnfc/baseline.hpp"

#include <cmath>

#include "snnfc/errors.hpp"

namespace snnfc {

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd z = logits.array() - logits.maxCoeff();
  Eigen::VectorXd e = z.array().exp();
  return e / e.sum();
}

}  // namespace

Eigen::VectorXd logreg_probabilities(const LogRegModel& model, const Eigen::VectorXd& x) {
  return softmax(model.weights * x + model.bias);
}

double logreg_loss_and_gradient(const LogRegModel& model, const Eigen::MatrixXd& features,
                                const std::vector<int>& labels, Eigen::MatrixXd* grad_w,
                                Eigen::VectorXd* grad_b) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (features.rows() != n) throw ConfigError("logreg: features/labels size mismatch");
  const Eigen::Index n_classes = model.weights.rows();

  // Logits for all samples at once: n x classes.
  Eigen::MatrixXd logits = features * model.weights.transpose();
  logits.rowwise() += model.bias.transpose();

  double loss = 0.0;
  Eigen::MatrixXd delta(n, n_classes);  // softmax - onehot
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd p = softmax(logits.row(i).transpose());
    const int y = labels[static_cast<size_t>(i)];
    loss -= std::log(std::max(p(y), 1e-300));
    delta.row(i) = p.transpose();
    delta(i, y) -= 1.0;
  }
  loss /= static_cast<double>(n);
  loss += 0.5 * model.l2 * model.weights.squaredNorm();

  if (grad_w) *grad_w = delta.transpose() * features / static_cast<double>(n) + model.l2 * model.weights;
  if (grad_b) *grad_b = delta.colwise().sum().transpose() / static_cast<double>(n);
  return loss;
}

LogRegModel logreg_train(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                         int n_classes, const LogRegConfig& config) {
  LogRegModel model;
  model.weights = Eigen::MatrixXd::Zero(n_classes, features.cols());
  model.bias = Eigen::VectorXd::Zero(n_classes);
  model.l2 = config.l2;

  Eigen::MatrixXd grad_w;
  Eigen::VectorXd grad_b;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = logreg_loss_and_gradient(model, features, labels, &grad_w, &grad_b);
    if (!std::isfinite(loss))
      throw TrainError("logreg_train: loss diverged at epoch " + std::to_string(epoch));
    model.weights -= config.learning_rate * grad_w;
    model.bias -= config.learning_rate * grad_b;
  }
  return model;
}

int logreg_predict(const LogRegModel& model, const Eigen::VectorXd& x) {
  Eigen::VectorXd logits = model.weights * x + model.bias;
  int best = 0;
  for (Eigen::Index c = 1; c < logits.size(); ++c)
    if (logits(c) > logits(best)) best = static_cast<int>(c);
  return best;
}

Eigen::MatrixXd one_hot_matrix(const std::vector<Record>& records, const FeatureSchema& schema) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(records.size()),
                                              schema.one_hot_dim());
  for (size_t i = 0; i < records.size(); ++i) {
    int offset = 0;
    for (int k = 0; k < schema.feature_count(); ++k) {
      out(static_cast<Eigen::Index>(i), offset + records[i].values[static_cast<size_t>(k)]) = 1.0;
      offset += schema.keys[static_cast<size_t>(k)].cardinality();
    }
  }
  return out;
}

}  // namespace snnfc
