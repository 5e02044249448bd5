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

#include "snnfc/neuron.hpp"

#include <cmath>

#include "snnfc/errors.hpp"

namespace snnfc {

void lif_step(const LifParams& params, LifState& state, const VectorXd& input_current,
              const VectorXd* thresholds, std::vector<uint8_t>& spikes_out) {
  const int n = static_cast<int>(state.membrane.size());
  spikes_out.assign(static_cast<size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (state.refractory_remaining[static_cast<size_t>(j)] > 0) {
      --state.refractory_remaining[static_cast<size_t>(j)];
      continue;
    }
    double v = params.leak_factor * state.membrane(j) + input_current(j);
    const double theta = thresholds ? (*thresholds)(j) : params.threshold;
    if (v >= theta) {
      spikes_out[static_cast<size_t>(j)] = 1;
      state.membrane(j) = params.resting;
      state.refractory_remaining[static_cast<size_t>(j)] = params.refractory_steps;
    } else {
      state.membrane(j) = v;
    }
  }
}

double SrmKernels::eps_norm() const {
  // Peak of exp(-t/tau_m) - exp(-t/tau_s) is at t* = ln(tau_m/tau_s) * tau_m*tau_s/(tau_m-tau_s).
  const double tm = eps_tau_m, ts = eps_tau_s;
  const double t_star = std::log(tm / ts) * tm * ts / (tm - ts);
  return 1.0 / (std::exp(-t_star / tm) - std::exp(-t_star / ts));
}

MatrixXd psp_filter(const SpikePattern& spikes, const SrmKernels& kernels) {
  const double am = std::exp(-1.0 / kernels.eps_tau_m);
  const double as = std::exp(-1.0 / kernels.eps_tau_s);
  const double norm = kernels.eps_norm();
  MatrixXd out(spikes.n_neurons, spikes.n_steps);
  for (int n = 0; n < spikes.n_neurons; ++n) {
    const uint8_t* row = spikes.row(n);
    double tm = 0.0, ts = 0.0;
    for (int t = 0; t < spikes.n_steps; ++t) {
      tm = tm * am + row[t];
      ts = ts * as + row[t];
      out(n, t) = norm * (tm - ts);  // zero at the spike step itself
    }
  }
  return out;
}

MatrixXd reset_filter(const SpikePattern& spikes, const SrmKernels& kernels) {
  const double ak = std::exp(-1.0 / kernels.kappa_tau);
  MatrixXd out(spikes.n_neurons, spikes.n_steps);
  for (int n = 0; n < spikes.n_neurons; ++n) {
    const uint8_t* row = spikes.row(n);
    double trace = 0.0;
    for (int t = 0; t < spikes.n_steps; ++t) {
      out(n, t) = kernels.kappa_amplitude * trace;
      trace = trace * ak + row[t];
    }
  }
  return out;
}

MatrixXd srm_membrane(const MatrixXd& weights, const SpikePattern& input_spikes,
                      const SpikePattern& own_spikes, const SrmKernels& kernels) {
  if (weights.cols() != input_spikes.n_neurons)
    throw ConfigError("srm_membrane: weight columns must match input neurons");
  if (weights.rows() != own_spikes.n_neurons || input_spikes.n_steps != own_spikes.n_steps)
    throw ConfigError("srm_membrane: own-spike history shape mismatch");
  MatrixXd u = weights * psp_filter(input_spikes, kernels);
  u += reset_filter(own_spikes, kernels);
  return u;
}

double spike_probability(double u, double beta) {
  const double z = beta * u;
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

SnuStepResult snu_step(const SnuLayer& layer, const VectorXd& x, const VectorXd& s_prev,
                       const VectorXd& y_prev) {
  SnuStepResult r;
  r.state = (layer.weights * x +
             (layer.leak * s_prev.array() * (1.0 - y_prev.array())).matrix())
                .cwiseMax(0.0);
  r.output = ((r.state + layer.bias).array() >= 0.0).cast<double>();
  return r;
}

SnuStepResult snu_step_soft(const SnuLayer& layer, const VectorXd& x, const VectorXd& s_prev,
                            const VectorXd& y_prev, double steepness) {
  SnuStepResult r;
  r.state = (layer.weights * x +
             (layer.leak * s_prev.array() * (1.0 - y_prev.array())).matrix())
                .cwiseMax(0.0);
  r.output = (r.state + layer.bias)
                 .unaryExpr([steepness](double v) { return spike_probability(v, steepness); });
  return r;
}

}  // namespace snnfc
