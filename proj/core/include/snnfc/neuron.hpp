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

#include "snnfc/encoding.hpp"

namespace snnfc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Leaky integrate-and-fire (discrete grid, reset to resting on spike)
// ---------------------------------------------------------------------------

struct LifParams {
  double threshold = 1.0;
  double leak_factor = 0.9;   // membrane multiplier per step, in (0,1)
  double resting = 0.0;
  int refractory_steps = 2;
};

struct LifState {
  VectorXd membrane;
  std::vector<int> refractory_remaining;

  explicit LifState(int n_neurons)
      : membrane(VectorXd::Zero(n_neurons)), refractory_remaining(static_cast<size_t>(n_neurons), 0) {}
};

// One step: membrane <- leak*membrane + input (non-refractory neurons only);
// spike where membrane >= threshold, then reset and enter refractory period.
// `thresholds` overrides the scalar threshold per neuron when non-null
// (adaptive-threshold training uses this).
void lif_step(const LifParams& params, LifState& state, const VectorXd& input_current,
              const VectorXd* thresholds, std::vector<uint8_t>& spikes_out);

// ---------------------------------------------------------------------------
// Spike response model (double-exponential PSP kernel, exponential reset
// kernel, logistic escape-rate firing)
// ---------------------------------------------------------------------------

struct SrmKernels {
  double eps_tau_m = 10.0;   // PSP decay time constant (steps)
  double eps_tau_s = 2.5;    // PSP rise time constant (steps)
  double kappa_tau = 10.0;   // reset kernel time constant
  double kappa_amplitude = -5.0;
  double beta = 1.0;         // firing steepness

  // Peak-normalization constant of the double-exponential PSP kernel.
  double eps_norm() const;
};

// Causal PSP traces of a spike train: row n holds (spikes_n * eps)(t) on the
// discrete grid, eps(0) = 0 by construction. O(neurons * steps).
MatrixXd psp_filter(const SpikePattern& spikes, const SrmKernels& kernels);

// Reset traces: row j holds (spikes_j * kappa)(t); a spike at t contributes
// from t+1 onward so the potential that caused it is unaffected.
MatrixXd reset_filter(const SpikePattern& spikes, const SrmKernels& kernels);

// Membrane potentials u (n_post x T): weighted PSP input plus own-reset term.
MatrixXd srm_membrane(const MatrixXd& weights, const SpikePattern& input_spikes,
                      const SpikePattern& own_spikes, const SrmKernels& kernels);

// Numerically stable logistic rho(u) = 1 / (1 + exp(-beta*u)).
double spike_probability(double u, double beta);

// ---------------------------------------------------------------------------
// Spiking neural unit (discrete-time recurrence with post-spike state reset)
// ---------------------------------------------------------------------------

struct SnuLayer {
  MatrixXd weights;  // post x pre
  VectorXd bias;     // negative of the spiking threshold
  double leak = 0.8; // l(tau) in [0,1)
};

struct SnuStepResult {
  VectorXd state;
  VectorXd output;
};

// Hard step: s = max(0, W*x + leak * s_prev .* (1 - y_prev)), y = 1[s+b >= 0].
SnuStepResult snu_step(const SnuLayer& layer, const VectorXd& x, const VectorXd& s_prev,
                       const VectorXd& y_prev);

// Training-mode step with the surrogate output h(v) = sigmoid(steepness * v).
SnuStepResult snu_step_soft(const SnuLayer& layer, const VectorXd& x, const VectorXd& s_prev,
                            const VectorXd& y_prev, double steepness);

}  // namespace snnfc
