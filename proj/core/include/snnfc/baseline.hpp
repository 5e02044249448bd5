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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "snnfc/dataset.hpp"

namespace snnfc {

struct LogRegConfig {
  double learning_rate = 0.1;
  double l2 = 1e-4;
  int epochs = 200;       // full-batch gradient descent
  uint64_t seed = 1;
};

struct LogRegModel {
  Eigen::MatrixXd weights;  // classes x features
  Eigen::VectorXd bias;     // classes
  double l2 = 0.0;
};

// Softmax probabilities per class; rows of the result sum to 1.
Eigen::VectorXd logreg_probabilities(const LogRegModel& model, const Eigen::VectorXd& x);

// Multinomial cross-entropy loss (mean over samples) plus L2 penalty, and its
// gradient. Exposed so tests can check the gradient against finite differences.
double logreg_loss_and_gradient(const LogRegModel& model, const Eigen::MatrixXd& features,
                                const std::vector<int>& labels, Eigen::MatrixXd* grad_w,
                                Eigen::VectorXd* grad_b);

LogRegModel logreg_train(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                         int n_classes, const LogRegConfig& config);

// Argmax of the softmax; ties break to the lowest class index.
int logreg_predict(const LogRegModel& model, const Eigen::VectorXd& x);

// One-hot feature matrix (samples x dim) for a record list.
Eigen::MatrixXd one_hot_matrix(const std::vector<Record>& records, const FeatureSchema& schema);

}  // namespace snnfc
