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
#include <functional>
#include <string>
#include <vector>

#include "snnfc/baseline.hpp"
#include "snnfc/dataset.hpp"
#include "snnfc/encoding.hpp"
#include "snnfc/neuron.hpp"
#include "snnfc/prng.hpp"

namespace snnfc {

enum class ModelKind {
  kStdpUnsupervised,
  kStdpSupervised,
  kProbBackprop,
  kSnuBackprop,
  kLogReg,
};

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

// Pair-based STDP with winner-take-all inhibition and adaptive thresholds.
struct StdpConfig {
  double a_plus = 0.01;
  double a_minus = 0.012;
  double tau_plus = 20.0;
  double tau_minus = 20.0;
  double w_min = 0.0;
  double w_max = 1.0;
  int neurons_per_class = 5;     // output layer size = neurons_per_class * M
  double inhibition = 1.0;       // membrane subtracted from WTA losers
  double threshold = 2.0;        // base firing threshold
  double theta_increment = 0.01; // adaptive threshold bump per emitted spike
  double theta_decay = 0.98;     // per-sample decay of the adaptive component
  int epochs = 3;
  double init_weight_scale = 0.3;
  // Divisive per-neuron weight normalization toward this mean weight after
  // every sample; 0 disables it and leaves the pure pair rule.
  double weight_norm_mean = 0.15;
  double lif_leak = 0.9;
  int lif_refractory = 2;
};

struct TrainConfig {
  ModelKind kind = ModelKind::kSnuBackprop;
  std::vector<int> hidden_layers;     // weight-matrix count = hidden_layers.size() + 1
  double learning_rate = 0.05;
  int epochs = 40;
  int batch_size = 32;
  uint64_t seed = 1;

  EncodingConfig encoding;
  TargetConfig targets;
  StdpConfig stdp;
  SrmKernels srm;

  double snu_leak = 0.8;
  double snu_bias = -1.0;             // initial bias (negative threshold)
  // Fraction of the init bound added to every weight, biasing layers toward
  // positive drive so spiking starts at a healthy rate (0 = symmetric init).
  double snu_init_shift = 0.0;
  // BCE weight on target-spike timesteps; counters the heavy silence
  // imbalance of sparse temporal targets.
  double snu_positive_weight = 1.0;
  double surrogate_steepness = 5.0;
  bool srm_sampled_eval = false;      // default is expectation (threshold 0.5) decoding
  uint64_t eval_seed = 9;             // used only by sampled SRM evaluation

  LogRegConfig logreg;                // kLogReg baseline
};

struct TrainedModel {
  ModelKind kind = ModelKind::kSnuBackprop;
  FeatureSchema schema;
  TrainConfig config;

  // SNU stack (kSnuBackprop).
  std::vector<SnuLayer> snu_layers;

  // SRM stack (kProbBackprop): weight matrices, post x pre.
  std::vector<MatrixXd> srm_weights;

  // STDP single layer.
  MatrixXd stdp_weights;              // n_neurons x n_inputs
  VectorXd stdp_thresholds;           // frozen per-neuron thresholds
  LifParams lif;
  std::vector<int> class_map;         // output neuron -> class (rate decoding)

  TargetSet targets;                  // temporal decoding (backprop models)

  LogRegModel logreg;                 // kLogReg baseline

  // Per-layer 99.9th-percentile |pre-activation| over the training split,
  // recorded at training time for crossbar output scaling (SNU only).
  std::vector<double> hw_output_scales;

  std::vector<double> loss_curve;     // per-epoch training loss
  double train_accuracy = 0.0;
};

struct EvalResult {
  double accuracy = 0.0;
  Eigen::MatrixXi confusion;          // true class x predicted class
  std::vector<int> predictions;
};

// ---------------------------------------------------------------------------
// Training entry points
// ---------------------------------------------------------------------------

TrainedModel stdp_train_unsupervised(const std::vector<Record>& train,
                                     const FeatureSchema& schema, const TrainConfig& config);

TrainedModel stdp_train_supervised(const std::vector<Record>& train,
                                   const FeatureSchema& schema, const TrainConfig& config);

TrainedModel prob_bp_train(const std::vector<Record>& train, const FeatureSchema& schema,
                           const TrainConfig& config);

TrainedModel snu_bpt_train(const std::vector<Record>& train, const FeatureSchema& schema,
                           const TrainConfig& config);

TrainedModel train_model(const std::vector<Record>& train, const FeatureSchema& schema,
                         const TrainConfig& config);

EvalResult evaluate(const TrainedModel& model, const std::vector<Record>& test);

// ---------------------------------------------------------------------------
// Forward/gradient internals, exposed for oracles and the hardware simulator
// ---------------------------------------------------------------------------

// Hard-step SNU inference over one encoded sample. `linear_override`, when
// given, replaces every layer's W*x product (the crossbar hook).
SpikePattern snu_forward(const std::vector<SnuLayer>& layers, const SpikePattern& input,
                         const std::function<VectorXd(int layer, const VectorXd& x)>*
                             linear_override = nullptr);

// Soft-surrogate forward + BPTT gradients of the mean per-timestep BCE against
// per-sample targets. Batch-major: patterns[i] is one encoded sample.
struct SnuGradients {
  std::vector<MatrixXd> d_weights;
  std::vector<VectorXd> d_bias;
  double loss = 0.0;
};
SnuGradients snu_loss_and_gradients(const std::vector<SnuLayer>& layers,
                                    const std::vector<const SpikePattern*>& patterns,
                                    const std::vector<const SpikePattern*>& targets,
                                    double steepness, double positive_weight = 1.0);

// SRM forward for one sample. Training samples hidden spikes and clamps the
// output reset to the target train; evaluation thresholds probabilities at 0.5
// (or samples, when `sample_rng` is given).
struct SrmForward {
  std::vector<SpikePattern> layer_spikes;  // per weight layer, the emitted spikes
  std::vector<MatrixXd> membranes;         // per weight layer, u (post x T)
  MatrixXd input_psp;                      // PSP traces of the encoded input
  std::vector<MatrixXd> hidden_psp;        // PSP traces of each hidden layer's spikes
};
SrmForward srm_forward(const std::vector<MatrixXd>& weights, const SpikePattern& input,
                       const SrmKernels& kernels, const SpikePattern* clamp_output_reset,
                       Rng* sample_rng);

// Per-timestep log-likelihood of a target train given membrane potentials, and
// its exact gradient with respect to the potentials: beta * (z - rho(u)).
double srm_log_likelihood(const MatrixXd& membrane, const SpikePattern& target, double beta,
                          MatrixXd* d_membrane = nullptr);

}  // namespace snnfc
