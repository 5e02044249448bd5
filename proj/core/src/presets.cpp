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

#include "snnfc/presets.hpp"

#include "snnfc/errors.hpp"

namespace snnfc {

namespace {

void apply_stdp_preset(TrainConfig& c, const std::string& dataset, bool supervised) {
  if (supervised) {
    c.stdp.tau_plus = 3.0;
    c.stdp.tau_minus = 3.0;
    c.stdp.a_plus = 0.03;
    c.stdp.a_minus = 0.036;
    c.stdp.theta_increment = 0.005;
    c.stdp.threshold = 2.0;
    c.stdp.weight_norm_mean = 0.15;
    c.stdp.inhibition = 1.0;
    if (dataset == "car") {
      c.stdp.epochs = 5;
      c.stdp.neurons_per_class = 10;
      c.stdp.lif_leak = 0.6;
    } else {
      c.stdp.epochs = 2;
      c.stdp.neurons_per_class = 16;
      c.stdp.lif_leak = 0.7;
    }
  } else {
    if (dataset == "car") {
      c.stdp.epochs = 5;
      c.stdp.neurons_per_class = 10;
      c.stdp.tau_plus = 3.0;
      c.stdp.tau_minus = 3.0;
      c.stdp.lif_leak = 0.7;
      c.stdp.a_plus = 0.01;
      c.stdp.a_minus = 0.012;
      c.stdp.theta_increment = 0.005;
      c.stdp.threshold = 2.0;
      c.stdp.weight_norm_mean = 0.15;
      c.stdp.inhibition = 1.0;
    } else {
      // Strong homeostatic turn-taking with concentrated weight mass.
      c.stdp.epochs = 4;
      c.stdp.neurons_per_class = 20;
      c.stdp.tau_plus = 3.0;
      c.stdp.tau_minus = 2.0;
      c.stdp.lif_leak = 0.7;
      c.stdp.a_plus = 0.05;
      c.stdp.a_minus = 0.04;
      c.stdp.threshold = 3.0;
      c.stdp.theta_increment = 0.3;
      c.stdp.theta_decay = 0.999;
      c.stdp.weight_norm_mean = 0.08;
      c.stdp.inhibition = 3.0;
    }
  }
}

}  // namespace

ModelKind system_to_kind(int system, const std::string& mode) {
  switch (system) {
    case 1:
      if (mode == "sup") return ModelKind::kStdpSupervised;
      if (mode == "unsup" || mode.empty()) return ModelKind::kStdpUnsupervised;
      throw ConfigError("system 1 mode must be 'unsup' or 'sup', got '" + mode + "'");
    case 2:
      if (!mode.empty()) throw ConfigError("--mode applies to system 1 only");
      return ModelKind::kProbBackprop;
    case 3:
      if (!mode.empty()) throw ConfigError("--mode applies to system 1 only");
      return ModelKind::kSnuBackprop;
    default:
      throw ConfigError("unknown system " + std::to_string(system) + " (expected 1, 2, or 3)");
  }
}

TrainConfig preset_config(ModelKind kind, const std::string& dataset, int layers) {
  TrainConfig c;
  c.kind = kind;
  c.seed = 1;
  c.encoding.master_seed = 1;
  c.targets.seed = 1;

  switch (kind) {
    case ModelKind::kSnuBackprop: {
      if (layers < 2) throw ConfigError("SNU networks need at least 2 layers");
      c.hidden_layers.assign(static_cast<size_t>(layers - 1), 64);
      c.surrogate_steepness = 3.0;
      c.snu_positive_weight = 20.0;
      c.learning_rate = 0.01;
      c.batch_size = 32;
      if (dataset == "car") {
        c.epochs = 200;
      } else if (dataset == "nursery") {
        c.epochs = 40;
      } else {
        c.epochs = 20;
      }
      break;
    }
    case ModelKind::kProbBackprop: {
      if (layers < 1 || layers > 2)
        throw ConfigError("probabilistic backprop supports 1 or 2 layers");
      if (layers == 2) c.hidden_layers = {40};
      c.learning_rate = 0.1;
      c.batch_size = 32;
      c.epochs = dataset == "car" ? 30 : 10;
      break;
    }
    case ModelKind::kStdpUnsupervised:
      apply_stdp_preset(c, dataset, /*supervised=*/false);
      break;
    case ModelKind::kStdpSupervised:
      apply_stdp_preset(c, dataset, /*supervised=*/true);
      break;
    case ModelKind::kLogReg:
      c.logreg = LogRegConfig{};
      break;
  }
  return c;
}

}  // namespace snnfc
