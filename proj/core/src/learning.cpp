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

#include "snnfc/learning.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "snnfc/errors.hpp"
#include "snnfc/prng.hpp"

namespace snnfc {

namespace {

constexpr double kBceClamp = 1e-12;

MatrixXd init_weights(int rows, int cols, Rng& rng, double shift = 0.0) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
  MatrixXd w(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) w(r, c) = rng.next_uniform(-bound, bound) + shift * bound;
  return w;
}

std::vector<int> layer_sizes(int n_in, const std::vector<int>& hidden, int n_out) {
  std::vector<int> sizes;
  sizes.push_back(n_in);
  for (int h : hidden) {
    if (h < 1) throw ConfigError("hidden layer size must be >= 1");
    sizes.push_back(h);
  }
  sizes.push_back(n_out);
  return sizes;
}

void check_encoding_consistency(const TrainConfig& config) {
  if (config.targets.n_steps != config.encoding.n_steps)
    throw ConfigError("target window must match encoding window");
  if (config.batch_size < 1) throw ConfigError("batch_size must be >= 1");
}

std::vector<int> epoch_order(size_t n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order.data(), order.size());
  return order;
}

// --------------------------------------------------------------------------
// STDP (System 1)
// --------------------------------------------------------------------------

struct StdpNet {
  MatrixXd weights;      // n_neurons x n_inputs
  VectorXd theta_adapt;  // adaptive threshold component
  LifParams lif;
};

// Runs one sample through the WTA layer. During training (plastic == true)
// weights and adaptive thresholds are updated in place; `eligible_begin/end`
// restricts which neurons may win (teacher forcing), with [0, n) meaning all.
// Returns per-neuron spike counts; fills `output_spikes` when non-null.
std::vector<int> stdp_run_sample(StdpNet& net, const SpikePattern& pattern,
                                 const StdpConfig& cfg, bool plastic, int eligible_begin,
                                 int eligible_end, SpikePattern* output_spikes = nullptr) {
  const int n_neurons = static_cast<int>(net.weights.rows());
  const int n_inputs = static_cast<int>(net.weights.cols());
  const int T = pattern.n_steps;
  const double decay_pre = std::exp(-1.0 / cfg.tau_plus);
  const double decay_post = std::exp(-1.0 / cfg.tau_minus);

  VectorXd v = VectorXd::Zero(n_neurons);
  std::vector<int> refractory(static_cast<size_t>(n_neurons), 0);
  VectorXd pre_trace = VectorXd::Zero(n_inputs);
  VectorXd post_trace = VectorXd::Zero(n_neurons);
  std::vector<int> spike_counts(static_cast<size_t>(n_neurons), 0);
  if (output_spikes) *output_spikes = SpikePattern(n_neurons, T);
  std::vector<int> active;
  active.reserve(16);

  for (int t = 0; t < T; ++t) {
    pre_trace *= decay_pre;
    post_trace *= decay_post;

    active.clear();
    for (int i = 0; i < n_inputs; ++i)
      if (pattern.at(i, t)) active.push_back(i);

    // Integrate.
    for (int j = 0; j < n_neurons; ++j) {
      if (refractory[static_cast<size_t>(j)] > 0) {
        --refractory[static_cast<size_t>(j)];
        continue;
      }
      double current = 0.0;
      for (int i : active) current += net.weights(j, i);
      v(j) = net.lif.leak_factor * v(j) + current;
    }

    // Pre-spike depression, then saturate the pre traces.
    if (plastic) {
      for (int i : active) {
        for (int j = 0; j < n_neurons; ++j) {
          double w = net.weights(j, i) - cfg.a_minus * post_trace(j);
          net.weights(j, i) = std::clamp(w, cfg.w_min, cfg.w_max);
        }
      }
    }
    for (int i : active) pre_trace(i) = 1.0;

    // Winner-take-all spike.
    int winner = -1;
    double best_margin = 0.0;
    for (int j = eligible_begin; j < eligible_end; ++j) {
      if (refractory[static_cast<size_t>(j)] > 0) continue;
      const double theta = cfg.threshold + net.theta_adapt(j);
      const double margin = v(j) - theta;
      if (margin >= 0.0 && (winner < 0 || margin > best_margin)) {
        winner = j;
        best_margin = margin;
      }
    }
    if (winner >= 0) {
      ++spike_counts[static_cast<size_t>(winner)];
      if (output_spikes) output_spikes->set(winner, t, 1);
      v(winner) = net.lif.resting;
      refractory[static_cast<size_t>(winner)] = net.lif.refractory_steps;
      if (plastic) {
        net.theta_adapt(winner) += cfg.theta_increment;
        for (int i = 0; i < n_inputs; ++i) {
          double w = net.weights(winner, i) + cfg.a_plus * pre_trace(i);
          net.weights(winner, i) = std::clamp(w, cfg.w_min, cfg.w_max);
        }
      }
      post_trace(winner) = 1.0;
      for (int j = 0; j < n_neurons; ++j) {
        if (j == winner) continue;
        v(j) = std::max(v(j) - cfg.inhibition, -cfg.threshold);
      }
    }
  }
  return spike_counts;
}

TrainedModel stdp_train(const std::vector<Record>& train, const FeatureSchema& schema,
                        const TrainConfig& config, bool supervised) {
  check_encoding_consistency(config);
  if (train.empty()) throw TrainError("stdp_train: empty training set");
  Codebook codebook(schema, config.encoding);
  const int n_classes = schema.class_count();
  const int n_neurons = config.stdp.neurons_per_class * n_classes;

  Rng rng(config.seed);
  StdpNet net;
  net.weights = MatrixXd(n_neurons, codebook.input_neurons());
  Rng init_rng = rng.fork(0);
  for (int j = 0; j < n_neurons; ++j)
    for (int i = 0; i < codebook.input_neurons(); ++i)
      net.weights(j, i) = init_rng.next_uniform(0.0, config.stdp.init_weight_scale);
  net.theta_adapt = VectorXd::Zero(n_neurons);
  net.lif.threshold = config.stdp.threshold;
  net.lif.leak_factor = config.stdp.lif_leak;
  net.lif.refractory_steps = config.stdp.lif_refractory;

  for (int epoch = 0; epoch < config.stdp.epochs; ++epoch) {
    Rng order_rng = rng.fork(1000 + static_cast<uint64_t>(epoch));
    auto order = epoch_order(train.size(), order_rng);
    long epoch_spikes = 0;
    for (int idx : order) {
      const Record& rec = train[static_cast<size_t>(idx)];
      SpikePattern pattern = encode_record(rec, codebook);
      int begin = 0, end = n_neurons;
      if (supervised) {
        begin = rec.label * config.stdp.neurons_per_class;
        end = begin + config.stdp.neurons_per_class;
      }
      auto counts = stdp_run_sample(net, pattern, config.stdp, /*plastic=*/true, begin, end);
      epoch_spikes += std::accumulate(counts.begin(), counts.end(), 0l);
      // Homeostasis decays per eligible presentation so that class imbalance
      // does not skew thresholds across class groups.
      for (int j = begin; j < end; ++j) net.theta_adapt(j) *= config.stdp.theta_decay;
      if (config.stdp.weight_norm_mean > 0.0) {
        const double target = config.stdp.weight_norm_mean *
                              static_cast<double>(codebook.input_neurons());
        for (int j = begin; j < end; ++j) {
          const double mass = net.weights.row(j).sum();
          if (mass > 0.0) {
            net.weights.row(j) *= target / mass;
            net.weights.row(j) = net.weights.row(j)
                                     .cwiseMax(config.stdp.w_min)
                                     .cwiseMin(config.stdp.w_max);
          }
        }
      }
    }
    if (epoch_spikes == 0)
      throw TrainError("stdp_train: dead network, no output spikes over a full epoch");
  }

  TrainedModel model;
  model.kind = supervised ? ModelKind::kStdpSupervised : ModelKind::kStdpUnsupervised;
  model.schema = schema;
  model.config = config;
  model.stdp_weights = net.weights;
  if (supervised) {
    // A class group that never competed during teacher forcing still carries
    // the base threshold; give it the mean adaptive gain of the groups that
    // did, so inference is not biased toward untrained classes.
    std::vector<long> presented(static_cast<size_t>(n_classes), 0);
    for (const Record& rec : train) ++presented[static_cast<size_t>(rec.label)];
    double presented_sum = 0.0;
    long presented_neurons = 0;
    for (int c = 0; c < n_classes; ++c) {
      if (presented[static_cast<size_t>(c)] == 0) continue;
      presented_sum +=
          net.theta_adapt.segment(c * config.stdp.neurons_per_class, config.stdp.neurons_per_class)
              .sum();
      presented_neurons += config.stdp.neurons_per_class;
    }
    if (presented_neurons > 0) {
      const double mean_gain = presented_sum / static_cast<double>(presented_neurons);
      for (int c = 0; c < n_classes; ++c)
        if (presented[static_cast<size_t>(c)] == 0)
          net.theta_adapt
              .segment(c * config.stdp.neurons_per_class, config.stdp.neurons_per_class)
              .setConstant(mean_gain);
    }
  }
  model.stdp_thresholds = VectorXd::Constant(n_neurons, config.stdp.threshold) + net.theta_adapt;
  model.lif = net.lif;

  model.class_map.assign(static_cast<size_t>(n_neurons), 0);
  if (supervised) {
    for (int j = 0; j < n_neurons; ++j)
      model.class_map[static_cast<size_t>(j)] = j / config.stdp.neurons_per_class;
  } else {
    // Labeled pass: each neuron goes to the class it fired most for.
    MatrixXd response = MatrixXd::Zero(n_neurons, n_classes);
    StdpNet frozen = net;
    for (const Record& rec : train) {
      SpikePattern pattern = encode_record(rec, codebook);
      auto counts = stdp_run_sample(frozen, pattern, config.stdp, /*plastic=*/false, 0, n_neurons);
      for (int j = 0; j < n_neurons; ++j) response(j, rec.label) += counts[static_cast<size_t>(j)];
    }
    for (int j = 0; j < n_neurons; ++j) {
      int best_class = 0;
      double best_score = -1.0;
      for (int c = 0; c < n_classes; ++c) {
        if (response(j, c) > best_score) {
          best_score = response(j, c);
          best_class = c;
        }
      }
      model.class_map[static_cast<size_t>(j)] = best_class;
    }
  }

  model.train_accuracy = evaluate(model, train).accuracy;
  return model;
}

// --------------------------------------------------------------------------
// SNU helpers
// --------------------------------------------------------------------------

double percentile_from_histogram(const std::vector<long>& hist, double max_value,
                                 double percentile) {
  long total = 0;
  for (long h : hist) total += h;
  if (total == 0 || max_value <= 0.0) return 1.0;
  const auto want = static_cast<long>(std::ceil(percentile * static_cast<double>(total)));
  long seen = 0;
  for (size_t b = 0; b < hist.size(); ++b) {
    seen += hist[b];
    if (seen >= want)
      return max_value * static_cast<double>(b + 1) / static_cast<double>(hist.size());
  }
  return max_value;
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kStdpUnsupervised: return "stdp-unsup";
    case ModelKind::kStdpSupervised: return "stdp-sup";
    case ModelKind::kProbBackprop: return "prob-bp";
    case ModelKind::kSnuBackprop: return "snu-bp";
    case ModelKind::kLogReg: return "logreg";
  }
  throw ConfigError("unknown model kind");
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "stdp-unsup") return ModelKind::kStdpUnsupervised;
  if (name == "stdp-sup") return ModelKind::kStdpSupervised;
  if (name == "prob-bp") return ModelKind::kProbBackprop;
  if (name == "snu-bp") return ModelKind::kSnuBackprop;
  if (name == "logreg") return ModelKind::kLogReg;
  throw ConfigError("unknown model kind: " + name);
}

TrainedModel stdp_train_unsupervised(const std::vector<Record>& train,
                                     const FeatureSchema& schema, const TrainConfig& config) {
  return stdp_train(train, schema, config, /*supervised=*/false);
}

TrainedModel stdp_train_supervised(const std::vector<Record>& train,
                                   const FeatureSchema& schema, const TrainConfig& config) {
  return stdp_train(train, schema, config, /*supervised=*/true);
}

// --------------------------------------------------------------------------
// SNU forward and BPTT (System 3)
// --------------------------------------------------------------------------

SpikePattern snu_forward(const std::vector<SnuLayer>& layers, const SpikePattern& input,
                         const std::function<VectorXd(int layer, const VectorXd& x)>*
                             linear_override) {
  const int T = input.n_steps;
  const size_t n_layers = layers.size();
  std::vector<VectorXd> s(n_layers), y(n_layers);
  for (size_t l = 0; l < n_layers; ++l) {
    s[l] = VectorXd::Zero(layers[l].weights.rows());
    y[l] = VectorXd::Zero(layers[l].weights.rows());
  }
  const auto& out_layer = layers.back();
  SpikePattern output(static_cast<int>(out_layer.weights.rows()), T);

  VectorXd x(input.n_neurons);
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < input.n_neurons; ++i) x(i) = input.at(i, t);
    const VectorXd* layer_in = &x;
    for (size_t l = 0; l < n_layers; ++l) {
      const SnuLayer& layer = layers[l];
      VectorXd drive = linear_override ? (*linear_override)(static_cast<int>(l), *layer_in)
                                       : VectorXd(layer.weights * (*layer_in));
      s[l] = (drive + (layer.leak * s[l].array() * (1.0 - y[l].array())).matrix()).cwiseMax(0.0);
      y[l] = ((s[l] + layer.bias).array() >= 0.0).cast<double>();
      layer_in = &y[l];
    }
    for (int j = 0; j < output.n_neurons; ++j)
      output.set(j, t, y[n_layers - 1](j) > 0.5 ? 1 : 0);
  }
  return output;
}

SnuGradients snu_loss_and_gradients(const std::vector<SnuLayer>& layers,
                                    const std::vector<const SpikePattern*>& patterns,
                                    const std::vector<const SpikePattern*>& targets,
                                    double steepness, double positive_weight) {
  const auto B = static_cast<int>(patterns.size());
  if (B == 0 || targets.size() != patterns.size())
    throw ConfigError("snu_loss_and_gradients: batch/target mismatch");
  const int T = patterns[0]->n_steps;
  const int n_in = patterns[0]->n_neurons;
  const auto n_layers = static_cast<int>(layers.size());
  // Loss is the per-sample BCE summed over timesteps and output neurons,
  // averaged over the batch.
  const double scale = 1.0 / static_cast<double>(B);

  // Forward, caching per layer and timestep.
  std::vector<MatrixXd> x_steps(static_cast<size_t>(T), MatrixXd(B, n_in));
  for (int b = 0; b < B; ++b)
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < n_in; ++i) x_steps[static_cast<size_t>(t)](b, i) = patterns[static_cast<size_t>(b)]->at(i, t);

  // cache[l][t]: S, Y, relu mask
  std::vector<std::vector<MatrixXd>> S(static_cast<size_t>(n_layers)), Y(static_cast<size_t>(n_layers));
  std::vector<std::vector<Eigen::ArrayXXd>> mask(static_cast<size_t>(n_layers));
  for (int l = 0; l < n_layers; ++l) {
    S[static_cast<size_t>(l)].resize(static_cast<size_t>(T));
    Y[static_cast<size_t>(l)].resize(static_cast<size_t>(T));
    mask[static_cast<size_t>(l)].resize(static_cast<size_t>(T));
  }

  double loss = 0.0;
  for (int t = 0; t < T; ++t) {
    const MatrixXd* in = &x_steps[static_cast<size_t>(t)];
    for (int l = 0; l < n_layers; ++l) {
      const SnuLayer& layer = layers[static_cast<size_t>(l)];
      MatrixXd pre = (*in) * layer.weights.transpose();
      if (t > 0) {
        pre.array() += layer.leak * S[static_cast<size_t>(l)][static_cast<size_t>(t - 1)].array() *
                       (1.0 - Y[static_cast<size_t>(l)][static_cast<size_t>(t - 1)].array());
      }
      mask[static_cast<size_t>(l)][static_cast<size_t>(t)] = (pre.array() > 0.0).cast<double>();
      MatrixXd s_t = pre.cwiseMax(0.0);
      MatrixXd y_t = s_t;
      y_t.rowwise() += layer.bias.transpose();
      y_t = y_t.unaryExpr([steepness](double v) { return spike_probability(v, steepness); });
      S[static_cast<size_t>(l)][static_cast<size_t>(t)] = std::move(s_t);
      Y[static_cast<size_t>(l)][static_cast<size_t>(t)] = std::move(y_t);
      in = &Y[static_cast<size_t>(l)][static_cast<size_t>(t)];
    }
    // Per-step BCE against each sample's target column.
    const MatrixXd& y_out = Y[static_cast<size_t>(n_layers - 1)][static_cast<size_t>(t)];
    for (int b = 0; b < B; ++b) {
      const SpikePattern& z = *targets[static_cast<size_t>(b)];
      for (int j = 0; j < y_out.cols(); ++j) {
        const double y = std::clamp(y_out(b, j), kBceClamp, 1.0 - kBceClamp);
        loss -= z.at(j, t) ? positive_weight * std::log(y) : std::log(1.0 - y);
      }
    }
  }
  loss *= scale;

  // Backward through time, top layer first within each step.
  SnuGradients grads;
  grads.loss = loss;
  grads.d_weights.resize(static_cast<size_t>(n_layers));
  grads.d_bias.resize(static_cast<size_t>(n_layers));
  for (int l = 0; l < n_layers; ++l) {
    grads.d_weights[static_cast<size_t>(l)] = MatrixXd::Zero(layers[static_cast<size_t>(l)].weights.rows(),
                                                             layers[static_cast<size_t>(l)].weights.cols());
    grads.d_bias[static_cast<size_t>(l)] = VectorXd::Zero(layers[static_cast<size_t>(l)].bias.size());
  }

  // g_next[l] = dL/dPRE at step t+1 for layer l.
  std::vector<MatrixXd> g_next(static_cast<size_t>(n_layers));
  for (int l = 0; l < n_layers; ++l)
    g_next[static_cast<size_t>(l)] = MatrixXd::Zero(B, layers[static_cast<size_t>(l)].weights.rows());

  for (int t = T - 1; t >= 0; --t) {
    MatrixXd d_upper_in;  // dL/dY of the layer below, filled by layer l+1
    for (int l = n_layers - 1; l >= 0; --l) {
      const SnuLayer& layer = layers[static_cast<size_t>(l)];
      const MatrixXd& y_t = Y[static_cast<size_t>(l)][static_cast<size_t>(t)];
      const MatrixXd& s_t = S[static_cast<size_t>(l)][static_cast<size_t>(t)];

      // dL/d(pre-sigmoid): output layer contributes (y - z) directly; every
      // layer converts its dL/dY via sigma' = y(1-y).
      MatrixXd d_w_space;
      if (l == n_layers - 1) {
        d_w_space = y_t;
        for (int b = 0; b < B; ++b) {
          const SpikePattern& z = *targets[static_cast<size_t>(b)];
          for (int j = 0; j < d_w_space.cols(); ++j) {
            // d/dv of the weighted BCE through y = sigmoid(v):
            // z=1: pw*(y-1); z=0: y.
            if (z.at(j, t))
              d_w_space(b, j) = positive_weight * (d_w_space(b, j) - 1.0);
          }
        }
        d_w_space *= scale;
      } else {
        d_w_space = d_upper_in.array() * y_t.array() * (1.0 - y_t.array());
      }
      // Reset-factor path: y_t also gates next step's state carry.
      if (t < T - 1) {
        MatrixXd d_y_reset = -layer.leak * (s_t.array() * g_next[static_cast<size_t>(l)].array()).matrix();
        d_w_space.array() += d_y_reset.array() * y_t.array() * (1.0 - y_t.array());
      }

      MatrixXd d_s = steepness * d_w_space;
      if (t < T - 1) {
        d_s.array() += layer.leak *
                       (1.0 - y_t.array()) * g_next[static_cast<size_t>(l)].array();
      }
      MatrixXd d_pre = d_s.array() * mask[static_cast<size_t>(l)][static_cast<size_t>(t)];

      const MatrixXd& in = (l == 0) ? x_steps[static_cast<size_t>(t)]
                                    : Y[static_cast<size_t>(l - 1)][static_cast<size_t>(t)];
      grads.d_weights[static_cast<size_t>(l)].noalias() += d_pre.transpose() * in;
      grads.d_bias[static_cast<size_t>(l)] +=
          (steepness * d_w_space).colwise().sum().transpose();
      if (l > 0) d_upper_in = d_pre * layer.weights;
      g_next[static_cast<size_t>(l)] = std::move(d_pre);
    }
  }
  return grads;
}

TrainedModel snu_bpt_train(const std::vector<Record>& train, const FeatureSchema& schema,
                           const TrainConfig& config) {
  check_encoding_consistency(config);
  if (train.empty()) throw TrainError("snu_bpt_train: empty training set");
  Codebook codebook(schema, config.encoding);
  const int n_classes = schema.class_count();

  TrainedModel model;
  model.kind = ModelKind::kSnuBackprop;
  model.schema = schema;
  model.config = config;
  model.targets = generate_targets(n_classes, n_classes, config.targets);

  Rng rng(config.seed);
  auto sizes = layer_sizes(codebook.input_neurons(), config.hidden_layers, n_classes);
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    SnuLayer layer;
    Rng layer_rng = rng.fork(static_cast<uint64_t>(l));
    layer.weights = init_weights(sizes[l + 1], sizes[l], layer_rng, config.snu_init_shift);
    layer.bias = VectorXd::Constant(sizes[l + 1], config.snu_bias);
    layer.leak = config.snu_leak;
    model.snu_layers.push_back(std::move(layer));
  }

  const auto n = train.size();
  std::vector<SpikePattern> batch_patterns;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng order_rng = rng.fork(1000 + static_cast<uint64_t>(epoch));
    auto order = epoch_order(n, order_rng);
    double epoch_loss = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < n; start += static_cast<size_t>(config.batch_size)) {
      const size_t end = std::min(n, start + static_cast<size_t>(config.batch_size));
      batch_patterns.clear();
      std::vector<const SpikePattern*> pattern_ptrs, target_ptrs;
      for (size_t i = start; i < end; ++i) {
        const Record& rec = train[static_cast<size_t>(order[i])];
        batch_patterns.push_back(encode_record(rec, codebook));
        target_ptrs.push_back(&model.targets.patterns[static_cast<size_t>(rec.label)]);
      }
      for (const auto& p : batch_patterns) pattern_ptrs.push_back(&p);

      SnuGradients grads = snu_loss_and_gradients(model.snu_layers, pattern_ptrs, target_ptrs,
                                                  config.surrogate_steepness,
                                                  config.snu_positive_weight);
      if (!std::isfinite(grads.loss))
        throw TrainError("snu_bpt_train: loss diverged at epoch " + std::to_string(epoch));
      for (size_t l = 0; l < model.snu_layers.size(); ++l) {
        model.snu_layers[l].weights -= config.learning_rate * grads.d_weights[l];
        model.snu_layers[l].bias -= config.learning_rate * grads.d_bias[l];
      }
      epoch_loss += grads.loss;
      ++batches;
    }
    model.loss_curve.push_back(epoch_loss / static_cast<double>(batches));
  }

  // Crossbar output-scale calibration: per layer, the 99.9th percentile of
  // |W*x| over the training split under hard-step inference.
  {
    const size_t n_layers = model.snu_layers.size();
    std::vector<double> max_abs(n_layers, 0.0);
    std::vector<std::vector<long>> hist(n_layers, std::vector<long>(8192, 0));
    for (int pass = 0; pass < 2; ++pass) {
      for (const Record& rec : train) {
        SpikePattern pattern = encode_record(rec, codebook);
        std::vector<VectorXd> s(n_layers), y(n_layers);
        for (size_t l = 0; l < n_layers; ++l) {
          s[l] = VectorXd::Zero(model.snu_layers[l].weights.rows());
          y[l] = VectorXd::Zero(model.snu_layers[l].weights.rows());
        }
        VectorXd x(pattern.n_neurons);
        for (int t = 0; t < pattern.n_steps; ++t) {
          for (int i = 0; i < pattern.n_neurons; ++i) x(i) = pattern.at(i, t);
          const VectorXd* in = &x;
          for (size_t l = 0; l < n_layers; ++l) {
            const SnuLayer& layer = model.snu_layers[l];
            VectorXd drive = layer.weights * (*in);
            for (Eigen::Index j = 0; j < drive.size(); ++j) {
              const double a = std::abs(drive(j));
              if (pass == 0) {
                max_abs[l] = std::max(max_abs[l], a);
              } else if (max_abs[l] > 0.0) {
                auto bin = static_cast<size_t>(std::min(
                    8191.0, std::floor(a / max_abs[l] * 8192.0)));
                ++hist[l][bin];
              }
            }
            s[l] = (drive + (layer.leak * s[l].array() * (1.0 - y[l].array())).matrix())
                       .cwiseMax(0.0);
            y[l] = ((s[l] + layer.bias).array() >= 0.0).cast<double>();
            in = &y[l];
          }
        }
      }
    }
    for (size_t l = 0; l < n_layers; ++l)
      model.hw_output_scales.push_back(percentile_from_histogram(hist[l], max_abs[l], 0.999));
  }

  model.train_accuracy = evaluate(model, train).accuracy;
  return model;
}

// --------------------------------------------------------------------------
// SRM probabilistic backpropagation (System 2)
// --------------------------------------------------------------------------

double srm_log_likelihood(const MatrixXd& membrane, const SpikePattern& target, double beta,
                          MatrixXd* d_membrane) {
  if (membrane.rows() != target.n_neurons || membrane.cols() != target.n_steps)
    throw ConfigError("srm_log_likelihood: shape mismatch");
  double ll = 0.0;
  if (d_membrane) d_membrane->resize(membrane.rows(), membrane.cols());
  for (int j = 0; j < membrane.rows(); ++j) {
    for (int t = 0; t < membrane.cols(); ++t) {
      const double p = spike_probability(membrane(j, t), beta);
      const double z = target.at(j, t);
      const double pc = std::clamp(p, kBceClamp, 1.0 - kBceClamp);
      ll += z * std::log(pc) + (1.0 - z) * std::log(1.0 - pc);
      if (d_membrane) (*d_membrane)(j, t) = beta * (z - p);
    }
  }
  return ll;
}

namespace {

// Acausal PSP filter used for hidden-layer credit assignment:
// out(j, s) = sum_{t > s} err(j, t) * eps(t - s).
MatrixXd psp_backfilter(const MatrixXd& err, const SrmKernels& kernels) {
  const double am = std::exp(-1.0 / kernels.eps_tau_m);
  const double as = std::exp(-1.0 / kernels.eps_tau_s);
  const double norm = kernels.eps_norm();
  MatrixXd out(err.rows(), err.cols());
  for (int j = 0; j < err.rows(); ++j) {
    double tm = 0.0, ts = 0.0;
    for (int t = static_cast<int>(err.cols()) - 1; t >= 0; --t) {
      tm = tm * am + err(j, t);
      ts = ts * as + err(j, t);
      out(j, t) = norm * (tm - ts);  // eps(0) = 0 cancels the t == s term
    }
  }
  return out;
}

}  // namespace

SrmForward srm_forward(const std::vector<MatrixXd>& weights, const SpikePattern& input,
                       const SrmKernels& kernels, const SpikePattern* clamp_output_reset,
                       Rng* sample_rng) {
  SrmForward fwd;
  fwd.input_psp = psp_filter(input, kernels);
  const int T = input.n_steps;
  const double ak = std::exp(-1.0 / kernels.kappa_tau);

  const MatrixXd* psp_in = &fwd.input_psp;
  for (size_t l = 0; l < weights.size(); ++l) {
    const bool is_output = (l + 1 == weights.size());
    const auto n_post = static_cast<int>(weights[l].rows());
    MatrixXd u = weights[l] * (*psp_in);
    SpikePattern spikes(n_post, T);

    if (is_output && clamp_output_reset) {
      // Teacher clamping: the reset term follows the target train, so the
      // membrane is an affine function of the weights during training.
      u += reset_filter(*clamp_output_reset, kernels);
      for (int j = 0; j < n_post; ++j)
        for (int t = 0; t < T; ++t) {
          const double p = spike_probability(u(j, t), kernels.beta);
          const bool s = sample_rng ? (sample_rng->next_double() < p) : (p >= 0.5);
          spikes.set(j, t, s ? 1 : 0);
        }
    } else {
      std::vector<double> ktrace(static_cast<size_t>(n_post), 0.0);
      for (int t = 0; t < T; ++t) {
        for (int j = 0; j < n_post; ++j) {
          u(j, t) += kernels.kappa_amplitude * ktrace[static_cast<size_t>(j)];
          const double p = spike_probability(u(j, t), kernels.beta);
          const bool s = sample_rng ? (sample_rng->next_double() < p) : (p >= 0.5);
          spikes.set(j, t, s ? 1 : 0);
          ktrace[static_cast<size_t>(j)] =
              ktrace[static_cast<size_t>(j)] * ak + (s ? 1.0 : 0.0);
        }
      }
    }

    fwd.membranes.push_back(std::move(u));
    if (!is_output) fwd.hidden_psp.push_back(psp_filter(spikes, kernels));
    fwd.layer_spikes.push_back(std::move(spikes));
    if (!is_output) psp_in = &fwd.hidden_psp.back();
  }
  return fwd;
}

TrainedModel prob_bp_train(const std::vector<Record>& train, const FeatureSchema& schema,
                           const TrainConfig& config) {
  check_encoding_consistency(config);
  if (train.empty()) throw TrainError("prob_bp_train: empty training set");
  Codebook codebook(schema, config.encoding);
  const int n_classes = schema.class_count();

  TrainedModel model;
  model.kind = ModelKind::kProbBackprop;
  model.schema = schema;
  model.config = config;
  model.targets = generate_targets(n_classes, n_classes, config.targets);

  Rng rng(config.seed);
  auto sizes = layer_sizes(codebook.input_neurons(), config.hidden_layers, n_classes);
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    Rng layer_rng = rng.fork(static_cast<uint64_t>(l));
    model.srm_weights.push_back(init_weights(sizes[l + 1], sizes[l], layer_rng));
  }
  const size_t n_layers = model.srm_weights.size();

  const auto n = train.size();
  const double inv_T = 1.0 / static_cast<double>(config.encoding.n_steps);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng order_rng = rng.fork(1000 + static_cast<uint64_t>(epoch));
    Rng noise_rng = rng.fork(5000 + static_cast<uint64_t>(epoch));
    auto order = epoch_order(n, order_rng);
    double epoch_ll = 0.0;

    std::vector<MatrixXd> grad(n_layers);
    for (size_t l = 0; l < n_layers; ++l)
      grad[l] = MatrixXd::Zero(model.srm_weights[l].rows(), model.srm_weights[l].cols());
    int in_batch = 0;

    for (size_t pos = 0; pos < n; ++pos) {
      const Record& rec = train[static_cast<size_t>(order[pos])];
      SpikePattern pattern = encode_record(rec, codebook);
      const SpikePattern& z = model.targets.patterns[static_cast<size_t>(rec.label)];
      Rng sample_rng = noise_rng.fork(static_cast<uint64_t>(pos));

      SrmForward fwd = srm_forward(model.srm_weights, pattern, config.srm, &z, &sample_rng);
      MatrixXd err;  // beta * (z - rho(u_out)), output neurons x T
      epoch_ll += srm_log_likelihood(fwd.membranes.back(), z, config.srm.beta, &err);

      const MatrixXd& pre_psp = n_layers == 1 ? fwd.input_psp : fwd.hidden_psp.back();
      grad[n_layers - 1].noalias() += inv_T * err * pre_psp.transpose();

      if (n_layers == 2) {
        // Hidden credit assignment through the expected PSP contribution:
        // backfiltered output error, scaled by rho'(u_hidden).
        MatrixXd f = psp_backfilter(err, config.srm);
        MatrixXd g = model.srm_weights[1].transpose() * f;
        const MatrixXd& u_h = fwd.membranes.front();
        for (int j = 0; j < g.rows(); ++j)
          for (int t = 0; t < g.cols(); ++t) {
            const double p = spike_probability(u_h(j, t), config.srm.beta);
            g(j, t) *= config.srm.beta * p * (1.0 - p);
          }
        grad[0].noalias() += inv_T * g * fwd.input_psp.transpose();
      }

      if (++in_batch == config.batch_size || pos + 1 == n) {
        const double step = config.learning_rate / static_cast<double>(in_batch);
        for (size_t l = 0; l < n_layers; ++l) {
          model.srm_weights[l] += step * grad[l];  // ascent on log-likelihood
          grad[l].setZero();
        }
        in_batch = 0;
      }
    }
    const double mean_nll = -epoch_ll / static_cast<double>(n);
    if (!std::isfinite(mean_nll))
      throw TrainError("prob_bp_train: loss diverged at epoch " + std::to_string(epoch));
    model.loss_curve.push_back(mean_nll);
  }

  model.train_accuracy = evaluate(model, train).accuracy;
  return model;
}

// --------------------------------------------------------------------------
// Evaluation
// --------------------------------------------------------------------------

TrainedModel train_model(const std::vector<Record>& train, const FeatureSchema& schema,
                         const TrainConfig& config) {
  switch (config.kind) {
    case ModelKind::kStdpUnsupervised: return stdp_train_unsupervised(train, schema, config);
    case ModelKind::kStdpSupervised: return stdp_train_supervised(train, schema, config);
    case ModelKind::kProbBackprop: return prob_bp_train(train, schema, config);
    case ModelKind::kSnuBackprop: return snu_bpt_train(train, schema, config);
    case ModelKind::kLogReg: {
      TrainedModel model;
      model.kind = ModelKind::kLogReg;
      model.schema = schema;
      model.config = config;
      std::vector<int> labels;
      for (const auto& r : train) labels.push_back(r.label);
      model.logreg = logreg_train(one_hot_matrix(train, schema), labels, schema.class_count(),
                                  config.logreg);
      model.train_accuracy = evaluate(model, train).accuracy;
      return model;
    }
  }
  throw ConfigError("train_model: unknown kind");
}

EvalResult evaluate(const TrainedModel& model, const std::vector<Record>& test) {
  if (test.empty()) throw DataError("evaluate: empty test set");
  const int n_classes = model.schema.class_count();
  EvalResult result;
  result.confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
  result.predictions.reserve(test.size());

  std::unique_ptr<Codebook> codebook;
  if (model.kind != ModelKind::kLogReg)
    codebook = std::make_unique<Codebook>(model.schema, model.config.encoding);

  StdpNet stdp_net;
  if (model.kind == ModelKind::kStdpUnsupervised || model.kind == ModelKind::kStdpSupervised) {
    stdp_net.weights = model.stdp_weights;
    stdp_net.theta_adapt = model.stdp_thresholds.array() - model.config.stdp.threshold;
    stdp_net.lif = model.lif;
  }

  long correct = 0;
  for (size_t i = 0; i < test.size(); ++i) {
    const Record& rec = test[i];
    int predicted = 0;
    switch (model.kind) {
      case ModelKind::kLogReg: {
        auto x = one_hot(rec, model.schema);
        predicted = logreg_predict(model.logreg,
                                   Eigen::Map<const VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
        break;
      }
      case ModelKind::kStdpUnsupervised:
      case ModelKind::kStdpSupervised: {
        SpikePattern pattern = encode_record(rec, *codebook);
        SpikePattern output;
        stdp_run_sample(stdp_net, pattern, model.config.stdp, /*plastic=*/false, 0,
                        static_cast<int>(stdp_net.weights.rows()), &output);
        predicted = decode_rate(output, model.class_map);
        break;
      }
      case ModelKind::kProbBackprop: {
        SpikePattern pattern = encode_record(rec, *codebook);
        std::unique_ptr<Rng> sampler;
        if (model.config.srm_sampled_eval)
          sampler = std::make_unique<Rng>(
              hash_mix({model.config.eval_seed, static_cast<uint64_t>(i)}));
        SrmForward fwd = srm_forward(model.srm_weights, pattern, model.config.srm, nullptr,
                                     sampler.get());
        predicted = decode_temporal(fwd.layer_spikes.back(), model.targets);
        break;
      }
      case ModelKind::kSnuBackprop: {
        SpikePattern pattern = encode_record(rec, *codebook);
        SpikePattern output = snu_forward(model.snu_layers, pattern);
        predicted = decode_temporal(output, model.targets);
        break;
      }
    }
    result.predictions.push_back(predicted);
    result.confusion(rec.label, predicted) += 1;
    if (predicted == rec.label) ++correct;
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  return result;
}

}  // namespace snnfc
