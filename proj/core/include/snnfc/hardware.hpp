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

#include "snnfc/learning.hpp"

namespace snnfc {

// Conductance-dependent programming noise: sigma(g) = c0 + c1*g + c2*g^2 over
// the device's conductance range, times a global scale factor. The default
// coefficients are a plausible concave fit shape for PCM-style devices and are
// configuration, not ground truth; sweep results should be read as trends.
struct NoiseModel {
  double c0 = 0.3;
  double c1 = 0.05;
  double c2 = -0.0008;
  double noise_scale = 1.0;   // 0 disables noise entirely
  uint64_t seed = 1;

  double sigma(double g) const { return c0 + c1 * g + c2 * g * g; }
};

struct CrossbarConfig {
  double g_max = 25.0;        // conductance ceiling, muS
  int adc_levels = 127;       // outputs quantized to [-adc_levels, +adc_levels]
  bool quantize = true;       // false = ideal (infinite-resolution) readout
  bool per_sample_noise = false;  // resample device noise per inference
};

// One linear layer mapped onto a differential crossbar pair.
struct MappedLayer {
  Eigen::MatrixXd g_plus;
  Eigen::MatrixXd g_minus;
  double weight_scale = 1.0;  // conductance units per weight unit
  double output_scale = 1.0;  // |pre-activation| range used by the ADC
};

// Differential mapping: scale = g_max / max|W|; positive entries go to the
// plus device, negative to the minus device. All-zero W maps with unit scale.
MappedLayer map_weights(const Eigen::MatrixXd& weights, const CrossbarConfig& config);

// Adds noise_scale * sigma(g) * N(0,1) element-wise to every programmed
// device, clipped back into [0, g_max]. Deterministic given model.seed.
void apply_noise(MappedLayer& layer, const NoiseModel& model, const CrossbarConfig& config);

// Analog readout (G+ - G-) * x / weight_scale, then 8-bit quantization against
// output_scale and rescaling back to pre-activation units. `quantized_out`
// receives the raw ADC codes when non-null.
Eigen::VectorXd crossbar_forward(const Eigen::VectorXd& x, const MappedLayer& layer,
                                 const CrossbarConfig& config,
                                 Eigen::VectorXi* quantized_out = nullptr);

// Full inference of a software-trained SNU model with every linear layer
// replaced by the crossbar path. Device noise is sampled once per call
// (one programming of the arrays) unless config.per_sample_noise is set.
EvalResult hw_evaluate(const TrainedModel& model, const std::vector<Record>& test,
                       const NoiseModel& noise, const CrossbarConfig& config);

}  // namespace snnfc
