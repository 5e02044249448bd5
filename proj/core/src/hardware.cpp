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

#include "snnfc/hardware.hpp"

#include <cmath>

#include "snnfc/errors.hpp"
#include "snnfc/prng.hpp"

namespace snnfc {

MappedLayer map_weights(const Eigen::MatrixXd& weights, const CrossbarConfig& config) {
  if (!weights.allFinite()) throw ConfigError("map_weights: non-finite weights");
  MappedLayer layer;
  const double max_abs = weights.cwiseAbs().maxCoeff();
  layer.weight_scale = max_abs > 0.0 ? config.g_max / max_abs : 1.0;
  layer.g_plus = (weights.array() > 0.0).cast<double>() * weights.array() * layer.weight_scale;
  layer.g_minus = (weights.array() < 0.0).cast<double>() * (-weights.array()) * layer.weight_scale;
  return layer;
}

void apply_noise(MappedLayer& layer, const NoiseModel& model, const CrossbarConfig& config) {
  if (model.noise_scale == 0.0) return;
  Rng rng(model.seed);
  auto perturb = [&](Eigen::MatrixXd& g) {
    for (Eigen::Index r = 0; r < g.rows(); ++r)
      for (Eigen::Index c = 0; c < g.cols(); ++c) {
        const double noisy =
            g(r, c) + model.noise_scale * model.sigma(g(r, c)) * rng.next_normal();
        g(r, c) = std::clamp(noisy, 0.0, config.g_max);
      }
  };
  perturb(layer.g_plus);
  perturb(layer.g_minus);
}

Eigen::VectorXd crossbar_forward(const Eigen::VectorXd& x, const MappedLayer& layer,
                                 const CrossbarConfig& config, Eigen::VectorXi* quantized_out) {
  if (!(layer.output_scale > 0.0))
    throw ConfigError("crossbar_forward: layer output scale not calibrated");
  Eigen::VectorXd analog = (layer.g_plus - layer.g_minus) * x / layer.weight_scale;
  if (!config.quantize) {
    if (quantized_out) quantized_out->resize(0);
    return analog;
  }
  const double levels = static_cast<double>(config.adc_levels);
  Eigen::VectorXd rescaled(analog.size());
  if (quantized_out) quantized_out->resize(analog.size());
  for (Eigen::Index j = 0; j < analog.size(); ++j) {
    double q = std::round(analog(j) / layer.output_scale * levels);
    q = std::clamp(q, -levels, levels);
    if (quantized_out) (*quantized_out)(j) = static_cast<int>(q);
    rescaled(j) = q / levels * layer.output_scale;
  }
  return rescaled;
}

EvalResult hw_evaluate(const TrainedModel& model, const std::vector<Record>& test,
                       const NoiseModel& noise, const CrossbarConfig& config) {
  if (model.kind != ModelKind::kSnuBackprop)
    throw ConfigError("hw_evaluate: hardware simulation targets SNU models");
  if (model.hw_output_scales.size() != model.snu_layers.size())
    throw ConfigError("hw_evaluate: model has no crossbar calibration data");
  if (test.empty()) throw DataError("hw_evaluate: empty test set");

  auto program = [&](uint64_t seed_salt) {
    std::vector<MappedLayer> mapped;
    for (size_t l = 0; l < model.snu_layers.size(); ++l) {
      MappedLayer layer = map_weights(model.snu_layers[l].weights, config);
      layer.output_scale = model.hw_output_scales[l];
      NoiseModel layer_noise = noise;
      layer_noise.seed = hash_mix({noise.seed, seed_salt, static_cast<uint64_t>(l)});
      apply_noise(layer, layer_noise, config);
      mapped.push_back(std::move(layer));
    }
    return mapped;
  };

  // Programmed-device semantics: one noise draw per evaluation run.
  std::vector<MappedLayer> mapped = program(0);

  Codebook codebook(model.schema, model.config.encoding);
  const int n_classes = model.schema.class_count();
  EvalResult result;
  result.confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
  result.predictions.reserve(test.size());

  long correct = 0;
  for (size_t i = 0; i < test.size(); ++i) {
    if (config.per_sample_noise && i > 0) mapped = program(static_cast<uint64_t>(i));
    std::function<VectorXd(int, const VectorXd&)> linear =
        [&](int l, const VectorXd& x) {
          return crossbar_forward(x, mapped[static_cast<size_t>(l)], config);
        };
    SpikePattern pattern = encode_record(test[i], codebook);
    SpikePattern output = snu_forward(model.snu_layers, pattern, &linear);
    const int predicted = decode_temporal(output, model.targets);
    result.predictions.push_back(predicted);
    result.confusion(test[i].label, predicted) += 1;
    if (predicted == test[i].label) ++correct;
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
  return result;
}

}  // namespace snnfc
