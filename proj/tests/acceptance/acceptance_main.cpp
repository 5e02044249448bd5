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
//
// Acceptance suite: one line per criterion. Quantitative criteria run against
// the genuine UCI files when they are present under SNNFC_DATA_DIR (default
// ./data); otherwise the synthetic stand-in datasets are generated and used,
// and each line says so. Thresholds are fixed here and do not depend on the
// data source. Slow-tier checks (adult/connect-4 SNN training) run only when
// SNNFC_ACCEPT_SLOW=1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "snnfc/datagen.hpp"
#include "snnfc/dataset.hpp"
#include "snnfc/encoding.hpp"
#include "snnfc/hardware.hpp"
#include "snnfc/learning.hpp"
#include "snnfc/presets.hpp"
#include "snnfc/prng.hpp"

namespace fs = std::filesystem;
using namespace snnfc;

namespace {

// ---- pinned thresholds -----------------------------------------------------
constexpr double kSnuCarFloor = 0.94;
constexpr double kSnuNurseryFloor = 0.98;
constexpr double kLogRegAdultCenter = 0.852, kLogRegAdultTol = 0.010;
constexpr double kLogRegCarCenter = 0.863, kLogRegCarTol = 0.020;
constexpr double kLogRegNurseryCenter = 0.930, kLogRegNurseryTol = 0.020;
constexpr double kProbBpTol = 0.06;
constexpr double kProbBpCarOneLayer = 0.655, kProbBpCarTwoLayer = 0.877;
constexpr double kProbBpNurseryOneLayer = 0.739, kProbBpNurseryTwoLayer = 0.884;
constexpr double kStdpSupCarFloor = 0.65;
constexpr double kStdpSupMajoritySlack = 0.03;
constexpr double kStdpUnsupTol = 0.10;
constexpr double kStdpUnsupCarRows[2] = {0.505, 0.596};
constexpr double kStdpUnsupNurseryRows[2] = {0.672, 0.703};
constexpr double kHwNoise1Tol = 0.015;
constexpr double kHwNoise10MinDrop = 0.10;
constexpr int kHwSeedsPerScale = 5;
constexpr double kGradTolSnn = 1e-4;
constexpr double kGradTolLogReg = 1e-6;

int g_failures = 0;

void report(int criterion, const std::string& sub, bool pass, const std::string& detail) {
  std::printf("[criterion %02d]%s %s%s: %s\n", criterion, pass ? " PASS" : " FAIL",
              sub.c_str(), sub.empty() ? "" : "", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void info(const std::string& text) {
  std::printf("           -- %s\n", text.c_str());
  std::fflush(stdout);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * x);
  return buf;
}

// ---- data ------------------------------------------------------------------

struct DataPack {
  Dataset dataset;
  std::vector<Record> train;
  std::vector<Record> test;
  bool real = false;
  std::string tag() const { return real ? "uci data" : "synthetic stand-in"; }
};

std::string data_dir() {
  if (const char* env = std::getenv("SNNFC_DATA_DIR")) return env;
  return "data";
}

DataPack finish(Dataset ds, bool real) {
  ds.split_seed = 7;
  ds.train_fraction = 0.8;
  Split sp = stratified_split(ds);
  DataPack pack;
  pack.train = gather(ds, sp.train_indices);
  pack.test = gather(ds, sp.test_indices);
  pack.dataset = std::move(ds);
  pack.real = real;
  return pack;
}

DataPack load_car() {
  const std::string real_path = data_dir() + "/car.data";
  if (fs::exists(real_path)) return finish(load_uci_csv(real_path, car_schema()), true);
  fs::create_directories("acceptance_data");
  synth_car("acceptance_data/car.data");
  return finish(load_uci_csv("acceptance_data/car.data", car_schema()), false);
}

DataPack load_nursery() {
  const std::string real_path = data_dir() + "/nursery.data";
  if (fs::exists(real_path)) return finish(load_uci_csv(real_path, nursery_schema()), true);
  fs::create_directories("acceptance_data");
  synth_nursery("acceptance_data/nursery.data");
  return finish(load_uci_csv("acceptance_data/nursery.data", nursery_schema()), false);
}

DataPack load_adult() {
  std::string train_path = data_dir() + "/adult.data";
  std::string test_path = data_dir() + "/adult.test";
  bool real = fs::exists(train_path) && fs::exists(test_path);
  if (!real) {
    fs::create_directories("acceptance_data");
    train_path = "acceptance_data/adult.data";
    test_path = "acceptance_data/adult.test";
    if (!fs::exists(train_path)) synth_adult(train_path, test_path, 1);
  }
  FeatureSchema schema = resolve_adult_bins(train_path);
  Dataset train_ds = load_uci_csv(train_path, schema);
  Dataset test_ds = load_uci_csv(test_path, schema);
  Dataset ds;
  ds.schema = schema;
  ds.records = train_ds.records;
  ds.fixed_is_test.assign(train_ds.records.size(), 0);
  for (auto& r : test_ds.records) {
    ds.records.push_back(std::move(r));
    ds.fixed_is_test.push_back(1);
  }
  return finish(std::move(ds), real);
}

// ---- shared oracles ----------------------------------------------------------

SpikePattern random_pattern(int n_neurons, int n_steps, double p, Rng& rng) {
  SpikePattern out(n_neurons, n_steps);
  for (int n = 0; n < n_neurons; ++n)
    for (int t = 0; t < n_steps; ++t)
      if (rng.next_double() < p) out.set(n, t, 1);
  return out;
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

}  // namespace

int main() {
  Timer total;
  const bool slow_tier = std::getenv("SNNFC_ACCEPT_SLOW") != nullptr;

  std::printf("snnfc acceptance suite (data dir: %s)\n", data_dir().c_str());
  DataPack car = load_car();
  DataPack nursery = load_nursery();
  DataPack adult = load_adult();
  info("car: " + std::to_string(car.dataset.records.size()) + " records, " + car.tag());
  info("nursery: " + std::to_string(nursery.dataset.records.size()) + " records, " +
       nursery.tag());
  info("adult: " + std::to_string(adult.dataset.records.size()) + " records, " + adult.tag());

  // ---- criterion 1: System 3 two-layer on car -----------------------------
  TrainedModel snu_car;
  {
    Timer t;
    TrainConfig config = preset_config(ModelKind::kSnuBackprop, "car", 2);
    snu_car = snu_bpt_train(car.train, car.dataset.schema, config);
    const double acc = evaluate(snu_car, car.test).accuracy;
    std::ostringstream os;
    os << "System 3 two layers, car: test accuracy " << pct(acc) << " >= " << pct(kSnuCarFloor)
       << " (" << car.tag() << ", " << static_cast<int>(t.seconds()) << "s)";
    report(1, "", acc >= kSnuCarFloor, os.str());
  }

  // ---- criterion 2: System 3 two-layer on nursery -------------------------
  TrainedModel snu_nursery;
  {
    Timer t;
    TrainConfig config = preset_config(ModelKind::kSnuBackprop, "nursery", 2);
    snu_nursery = snu_bpt_train(nursery.train, nursery.dataset.schema, config);
    const double acc = evaluate(snu_nursery, nursery.test).accuracy;
    std::ostringstream os;
    os << "System 3 two layers, nursery: test accuracy " << pct(acc) << " >= "
       << pct(kSnuNurseryFloor) << " (" << nursery.tag() << ", "
       << static_cast<int>(t.seconds()) << "s)";
    report(2, "", acc >= kSnuNurseryFloor, os.str());
  }

  // ---- criterion 3: logistic-regression baseline bands ---------------------
  {
    auto run_logreg = [](const DataPack& pack) {
      TrainConfig config = preset_config(ModelKind::kLogReg, pack.dataset.schema.name);
      TrainedModel model = train_model(pack.train, pack.dataset.schema, config);
      return evaluate(model, pack.test).accuracy;
    };
    struct Band {
      const DataPack* pack;
      double center, tol;
    };
    const std::vector<Band> bands = {{&adult, kLogRegAdultCenter, kLogRegAdultTol},
                                     {&car, kLogRegCarCenter, kLogRegCarTol},
                                     {&nursery, kLogRegNurseryCenter, kLogRegNurseryTol}};
    for (const auto& band : bands) {
      const double acc = run_logreg(*band.pack);
      const bool pass = std::abs(acc - band.center) <= band.tol;
      std::ostringstream os;
      os << "logistic regression, " << band.pack->dataset.schema.name << ": " << pct(acc)
         << " within " << pct(band.center) << " +/- " << pct(band.tol) << " ("
         << band.pack->tag() << ")";
      report(3, "", pass, os.str());
    }
  }

  // ---- criterion 4: System 2 two-layer beats one-layer ---------------------
  {
    auto run_prob = [](const DataPack& pack, int layers) {
      TrainConfig config = preset_config(ModelKind::kProbBackprop, pack.dataset.schema.name,
                                         layers);
      TrainedModel model = prob_bp_train(pack.train, pack.dataset.schema, config);
      return evaluate(model, pack.test).accuracy;
    };
    struct Case {
      const DataPack* pack;
      double one_center, two_center;
    };
    for (const Case& c : {Case{&car, kProbBpCarOneLayer, kProbBpCarTwoLayer},
                          Case{&nursery, kProbBpNurseryOneLayer, kProbBpNurseryTwoLayer}}) {
      Timer t;
      const double one = run_prob(*c.pack, 1);
      const double two = run_prob(*c.pack, 2);
      const bool ordering = two > one;
      const bool one_band = std::abs(one - c.one_center) <= kProbBpTol;
      const bool two_band = std::abs(two - c.two_center) <= kProbBpTol;
      std::ostringstream os;
      os << "System 2, " << c.pack->dataset.schema.name << ": two layers " << pct(two)
         << " > one layer " << pct(one) << "; bands " << pct(c.two_center) << "/"
         << pct(c.one_center) << " +/- " << pct(kProbBpTol) << " (" << c.pack->tag() << ", "
         << static_cast<int>(t.seconds()) << "s)";
      report(4, "", ordering && one_band && two_band, os.str());
    }
  }

  // ---- criterion 5: System 1 STDP ------------------------------------------
  {
    auto run_stdp = [](const DataPack& pack, bool supervised) {
      TrainConfig config = preset_config(
          supervised ? ModelKind::kStdpSupervised : ModelKind::kStdpUnsupervised,
          pack.dataset.schema.name);
      TrainedModel model = train_model(pack.train, pack.dataset.schema, config);
      return evaluate(model, pack.test).accuracy;
    };
    struct UnsupBand {
      const DataPack* pack;
      const double* rows;
    };

    for (const DataPack* pack : {&car, &nursery}) {
      Timer t;
      const double majority =
          majority_class_fraction(pack->test, pack->dataset.schema.class_count());
      const double sup = run_stdp(*pack, true);
      bool pass = sup >= majority - kStdpSupMajoritySlack;
      std::ostringstream os;
      os << "supervised STDP, " << pack->dataset.schema.name << ": " << pct(sup)
         << " >= majority " << pct(majority) << " - 3pts";
      if (pack == &car) {
        pass = pass && sup >= kStdpSupCarFloor;
        os << " and >= " << pct(kStdpSupCarFloor);
      }
      os << " (" << pack->tag() << ", " << static_cast<int>(t.seconds()) << "s)";
      report(5, "", pass, os.str());
    }
    for (const UnsupBand& band : {UnsupBand{&car, kStdpUnsupCarRows},
                                  UnsupBand{&nursery, kStdpUnsupNurseryRows}}) {
      Timer t;
      const double unsup = run_stdp(*band.pack, false);
      const double lo = std::min(band.rows[0], band.rows[1]) - kStdpUnsupTol;
      const double hi = std::max(band.rows[0], band.rows[1]) + kStdpUnsupTol;
      std::ostringstream os;
      os << "unsupervised STDP, " << band.pack->dataset.schema.name << ": " << pct(unsup)
         << " within [" << pct(lo) << ", " << pct(hi) << "] (" << band.pack->tag() << ", "
         << static_cast<int>(t.seconds()) << "s)";
      report(5, "", unsup >= lo && unsup <= hi, os.str());
    }
    if (slow_tier) {
      const double majority =
          majority_class_fraction(adult.test, adult.dataset.schema.class_count());
      const double sup = run_stdp(adult, true);
      std::ostringstream os;
      os << "supervised STDP, adult (slow tier): " << pct(sup) << " >= majority "
         << pct(majority) << " - 3pts (" << adult.tag() << ")";
      report(5, "", sup >= majority - kStdpSupMajoritySlack, os.str());
    } else {
      info("criterion 5 slow tier (adult/connect-4) skipped; set SNNFC_ACCEPT_SLOW=1");
    }
  }

  // ---- criterion 6: hardware simulator trends on car -----------------------
  {
    Timer t;
    const double software = evaluate(snu_car, car.test).accuracy;
    NoiseModel noise1;
    noise1.noise_scale = 1.0;
    noise1.seed = 1;
    CrossbarConfig cb;
    const double hw1 = hw_evaluate(snu_car, car.test, noise1, cb).accuracy;
    {
      std::ostringstream os;
      os << "hardware, car, 1x sigma: " << pct(hw1) << " within " << pct(kHwNoise1Tol)
         << " of software " << pct(software);
      report(6, "", std::abs(hw1 - software) <= kHwNoise1Tol, os.str());
    }
    std::vector<double> means;
    for (double scale : {0.0, 1.0, 5.0, 10.0}) {
      double sum = 0.0;
      for (int seed = 1; seed <= kHwSeedsPerScale; ++seed) {
        NoiseModel noise;
        noise.noise_scale = scale;
        noise.seed = static_cast<uint64_t>(seed);
        sum += hw_evaluate(snu_car, car.test, noise, cb).accuracy;
        if (scale == 0.0) {  // no randomness at zero noise
          sum += software * (kHwSeedsPerScale - 1);
          break;
        }
      }
      means.push_back(sum / kHwSeedsPerScale);
    }
    bool monotone = true;
    for (size_t i = 1; i < means.size(); ++i)
      if (means[i] > means[i - 1] + 1e-12) monotone = false;
    {
      std::ostringstream os;
      os << "hardware, car: mean accuracy over scales {0,1,5,10} = {" << pct(means[0]) << ", "
         << pct(means[1]) << ", " << pct(means[2]) << ", " << pct(means[3])
         << "} monotone non-increasing (5 seeds)";
      report(6, "", monotone, os.str());
    }
    {
      const double drop = software - means[3];
      std::ostringstream os;
      os << "hardware, car, 10x sigma: drop " << pct(drop) << " >= " << pct(kHwNoise10MinDrop)
         << " vs software (" << static_cast<int>(t.seconds()) << "s)";
      report(6, "", drop >= kHwNoise10MinDrop, os.str());
    }
  }

  // ---- criterion 7: van Rossum metric axioms --------------------------------
  {
    Rng rng(20260808);
    bool ok = true;
    std::string why;
    for (int i = 0; i < 1000 && ok; ++i) {
      SpikePattern a = random_pattern(3, 40, 0.12, rng);
      SpikePattern b = random_pattern(3, 40, 0.12, rng);
      SpikePattern c = random_pattern(3, 40, 0.12, rng);
      const double dab = van_rossum_distance(a, b, 9.0);
      const double dba = van_rossum_distance(b, a, 9.0);
      const double dac = van_rossum_distance(a, c, 9.0);
      const double dbc = van_rossum_distance(b, c, 9.0);
      if (dab < 0.0) { ok = false; why = "negativity"; }
      if (std::abs(dab - dba) > 1e-12) { ok = false; why = "symmetry"; }
      if (van_rossum_distance(a, a, 9.0) != 0.0) { ok = false; why = "identity"; }
      if (dac > dab + dbc + 1e-9) { ok = false; why = "triangle inequality"; }
    }
    report(7, "", ok,
           ok ? "van Rossum axioms hold on 1000 random triples"
              : "van Rossum axiom violated: " + why);
  }

  // ---- criterion 8: CTE properties -------------------------------------------
  {
    EncodingConfig ec;
    Codebook cb(car.dataset.schema, ec);
    Rng rng(99);
    bool deterministic = true;
    for (int i = 0; i < 50; ++i) {
      const Record& r = car.train[static_cast<size_t>(rng.next_below(car.train.size()))];
      if (!(encode_record(r, cb) == encode_record(r, cb))) deterministic = false;
    }
    report(8, "", deterministic, "identical records encode to identical spike patterns");

    // Monotone mean inner product in shared-pair count, cross-checked against
    // the one-hot dot product (exact shared-pair counter).
    const int K = car.dataset.schema.feature_count();
    std::vector<double> mean_dot(static_cast<size_t>(K) + 1, 0.0);
    bool onehot_ok = true;
    const int trials = 1000;
    for (int s = 0; s <= K; ++s) {
      for (int trial = 0; trial < trials; ++trial) {
        Record a, b;
        int shared = 0;
        for (int k = 0; k < K; ++k) {
          const int card = car.dataset.schema.keys[static_cast<size_t>(k)].cardinality() - 1;
          int va = static_cast<int>(rng.next_below(static_cast<uint64_t>(card)));
          int vb = va;
          if (k >= s) {
            vb = static_cast<int>(rng.next_below(static_cast<uint64_t>(card - 1)));
            if (vb >= va) ++vb;
          }
          a.values.push_back(va);
          b.values.push_back(vb);
          if (va == vb) ++shared;
        }
        a.label = b.label = 0;
        auto xa = one_hot(a, car.dataset.schema);
        auto xb = one_hot(b, car.dataset.schema);
        double dot = 0.0;
        for (size_t j = 0; j < xa.size(); ++j) dot += xa[j] * xb[j];
        if (dot != shared || shared != s) onehot_ok = false;
        mean_dot[static_cast<size_t>(s)] +=
            static_cast<double>(pattern_dot(encode_record(a, cb), encode_record(b, cb)));
      }
      mean_dot[static_cast<size_t>(s)] /= trials;
    }
    bool monotone = true;
    for (int s = 1; s <= K; ++s)
      if (mean_dot[static_cast<size_t>(s)] <= mean_dot[static_cast<size_t>(s - 1)])
        monotone = false;
    report(8, "", monotone,
           "mean encoding inner product strictly increases with shared pairs (1000 pairs/count)");
    report(8, "", onehot_ok, "one-hot dot product equals the shared-pair count exactly");
  }

  // ---- criterion 9: gradient checks ------------------------------------------
  {
    // SNU soft model vs central differences.
    Rng rng(777);
    std::vector<SnuLayer> layers(2);
    layers[0].weights = MatrixXd(4, 6);
    layers[0].bias = VectorXd::Constant(4, -0.6);
    layers[0].leak = 0.8;
    layers[1].weights = MatrixXd(2, 4);
    layers[1].bias = VectorXd::Constant(2, -0.4);
    layers[1].leak = 0.7;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 6; ++c) layers[0].weights(r, c) = rng.next_uniform(-0.6, 0.9);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c) layers[1].weights(r, c) = rng.next_uniform(-0.8, 0.8);
    SpikePattern input = random_pattern(6, 10, 0.3, rng);
    SpikePattern target = random_pattern(2, 10, 0.2, rng);
    std::vector<const SpikePattern*> ins = {&input}, tgts = {&target};
    SnuGradients grads = snu_loss_and_gradients(layers, ins, tgts, 3.0, 20.0);
    double max_rel = 0.0;
    const double h = 1e-6;
    for (size_t l = 0; l < 2; ++l)
      for (Eigen::Index r = 0; r < layers[l].weights.rows(); ++r)
        for (Eigen::Index c = 0; c < layers[l].weights.cols(); ++c) {
          auto plus = layers, minus = layers;
          plus[l].weights(r, c) += h;
          minus[l].weights(r, c) -= h;
          const double fd = (snu_loss_and_gradients(plus, ins, tgts, 3.0, 20.0).loss -
                             snu_loss_and_gradients(minus, ins, tgts, 3.0, 20.0).loss) /
                            (2 * h);
          max_rel = std::max(max_rel, rel_err(grads.d_weights[l](r, c), fd));
        }
    std::ostringstream os;
    os << "SNU BPTT gradient vs finite differences: max relative error " << max_rel << " < "
       << kGradTolSnn;
    report(9, "", max_rel < kGradTolSnn, os.str());
  }
  {
    // SRM output layer vs central differences with frozen hidden noise.
    Rng rng(778);
    std::vector<MatrixXd> weights(2);
    weights[0] = MatrixXd(3, 5);
    weights[1] = MatrixXd(3, 3);
    for (auto& w : weights)
      for (Eigen::Index r = 0; r < w.rows(); ++r)
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.next_uniform(-1, 1);
    SrmKernels kernels;
    SpikePattern input = random_pattern(5, 20, 0.25, rng);
    SpikePattern target = random_pattern(3, 20, 0.15, rng);
    auto forward_ll = [&](const std::vector<MatrixXd>& w) {
      Rng noise(4242);
      SrmForward fwd = srm_forward(w, input, kernels, &target, &noise);
      return srm_log_likelihood(fwd.membranes.back(), target, kernels.beta, nullptr);
    };
    Rng noise(4242);
    SrmForward fwd = srm_forward(weights, input, kernels, &target, &noise);
    MatrixXd err;
    srm_log_likelihood(fwd.membranes.back(), target, kernels.beta, &err);
    MatrixXd analytic = err * fwd.hidden_psp.back().transpose();
    double max_rel = 0.0;
    const double h = 1e-6;
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 3; ++c) {
        auto plus = weights, minus = weights;
        plus[1](r, c) += h;
        minus[1](r, c) -= h;
        const double fd = (forward_ll(plus) - forward_ll(minus)) / (2 * h);
        max_rel = std::max(max_rel, rel_err(analytic(r, c), fd));
      }
    std::ostringstream os;
    os << "SRM output-layer gradient vs finite differences: max relative error " << max_rel
       << " < " << kGradTolSnn;
    report(9, "", max_rel < kGradTolSnn, os.str());
  }
  {
    // Logistic regression vs central differences.
    Rng rng(779);
    const int n = 20, dim = 5, classes = 3;
    Eigen::MatrixXd features(n, dim);
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      for (int d = 0; d < dim; ++d) features(i, d) = rng.next_uniform(-1, 1);
      labels.push_back(static_cast<int>(rng.next_below(classes)));
    }
    LogRegModel model;
    model.weights = Eigen::MatrixXd(classes, dim);
    model.bias = Eigen::VectorXd(classes);
    model.l2 = 1e-3;
    for (int r = 0; r < classes; ++r) {
      model.bias(r) = rng.next_uniform(-0.5, 0.5);
      for (int c = 0; c < dim; ++c) model.weights(r, c) = rng.next_uniform(-0.5, 0.5);
    }
    Eigen::MatrixXd gw;
    Eigen::VectorXd gb;
    logreg_loss_and_gradient(model, features, labels, &gw, &gb);
    double max_rel = 0.0;
    const double h = 1e-6;
    for (int r = 0; r < classes; ++r)
      for (int c = 0; c < dim; ++c) {
        LogRegModel plus = model, minus = model;
        plus.weights(r, c) += h;
        minus.weights(r, c) -= h;
        const double fd =
            (logreg_loss_and_gradient(plus, features, labels, nullptr, nullptr) -
             logreg_loss_and_gradient(minus, features, labels, nullptr, nullptr)) /
            (2 * h);
        max_rel = std::max(max_rel, rel_err(gw(r, c), fd));
      }
    std::ostringstream os;
    os << "logistic-regression gradient vs finite differences: max relative error " << max_rel
       << " < " << kGradTolLogReg;
    report(9, "", max_rel < kGradTolLogReg, os.str());
  }

  // ---- criterion 10: SNU/LIF equivalence --------------------------------------
  {
    Rng rng(1010);
    bool equal = true;
    for (int seq = 0; seq < 200 && equal; ++seq) {
      const int n = 3, T = 40;
      const double leak = 0.5 + 0.4 * rng.next_double();
      const double threshold = 0.5 + rng.next_double();
      SnuLayer layer;
      layer.weights = MatrixXd::Identity(n, n);
      layer.bias = VectorXd::Constant(n, -threshold);
      layer.leak = leak;
      LifParams lif;
      lif.threshold = threshold;
      lif.leak_factor = leak;
      lif.refractory_steps = 0;
      LifState state(n);
      VectorXd s = VectorXd::Zero(n), y = VectorXd::Zero(n);
      std::vector<uint8_t> spikes;
      for (int t = 0; t < T && equal; ++t) {
        VectorXd input(n);
        for (int i = 0; i < n; ++i)
          input(i) = rng.next_double() < 0.3 ? rng.next_uniform(0.0, 1.5) : 0.0;
        auto r = snu_step(layer, input, s, y);
        s = r.state;
        y = r.output;
        lif_step(lif, state, input, nullptr, spikes);
        for (int i = 0; i < n; ++i)
          if (static_cast<uint8_t>(y(i)) != spikes[static_cast<size_t>(i)]) equal = false;
      }
    }
    report(10, "", equal,
           "SNU and LIF emit identical spike trains over 200 random input sequences");
  }

  // ---- criterion 11: zero-noise hardware path ----------------------------------
  {
    EvalResult software = evaluate(snu_car, car.test);
    NoiseModel no_noise;
    no_noise.noise_scale = 0.0;
    CrossbarConfig ideal;
    ideal.quantize = false;
    EvalResult hw = hw_evaluate(snu_car, car.test, no_noise, ideal);
    report(11, "", hw.predictions == software.predictions,
           "zero noise + ideal ADC reproduces software predictions exactly (" +
               std::to_string(car.test.size()) + " records)");

    // 8-bit path: per-layer error within half a quantizer step for in-range
    // pre-activations, and end-to-end accuracy within one point of software.
    CrossbarConfig adc;
    bool bounded = true;
    {
      Codebook cb(snu_car.schema, snu_car.config.encoding);
      std::vector<MappedLayer> mapped;
      for (size_t l = 0; l < snu_car.snu_layers.size(); ++l) {
        MappedLayer layer = map_weights(snu_car.snu_layers[l].weights, adc);
        layer.output_scale = snu_car.hw_output_scales[l];
        mapped.push_back(std::move(layer));
      }
      Rng rng(555);
      for (int i = 0; i < 40 && bounded; ++i) {
        const Record& rec = car.test[static_cast<size_t>(rng.next_below(car.test.size()))];
        SpikePattern pattern = encode_record(rec, cb);
        std::function<VectorXd(int, const VectorXd&)> probe =
            [&](int l, const VectorXd& x) {
              VectorXd exact = snu_car.snu_layers[static_cast<size_t>(l)].weights * x;
              VectorXd quantized = crossbar_forward(x, mapped[static_cast<size_t>(l)], adc);
              const double half_step =
                  mapped[static_cast<size_t>(l)].output_scale / adc.adc_levels / 2.0;
              for (Eigen::Index j = 0; j < exact.size(); ++j) {
                const bool in_range =
                    std::abs(exact(j)) <= mapped[static_cast<size_t>(l)].output_scale;
                if (in_range && std::abs(quantized(j) - exact(j)) > half_step + 1e-12)
                  bounded = false;
              }
              return quantized;
            };
        snu_forward(snu_car.snu_layers, pattern, &probe);
      }
    }
    EvalResult hw8 = hw_evaluate(snu_car, car.test, no_noise, adc);
    const bool acc_close = std::abs(hw8.accuracy - software.accuracy) <= 0.01;
    std::ostringstream os;
    os << "zero-noise 8-bit ADC: per-layer error within half a quantizer step; accuracy "
       << pct(hw8.accuracy) << " within 1pt of software " << pct(software.accuracy);
    report(11, "", bounded && acc_close, os.str());
  }

  // ---- criterion 12: full determinism -------------------------------------------
  {
    bool ok = true;
    std::string detail = "re-running with identical configs reproduces metrics bit-exactly";
    // Evaluation of the stored criterion-1 model.
    EvalResult a = evaluate(snu_car, car.test);
    EvalResult b = evaluate(snu_car, car.test);
    if (!(a.accuracy == b.accuracy && a.predictions == b.predictions &&
          a.confusion == b.confusion))
      ok = false;
    // Retraining small models of each family.
    {
      TrainConfig config = preset_config(ModelKind::kSnuBackprop, "car", 2);
      config.epochs = 2;
      config.hidden_layers = {8};
      std::vector<Record> subset(car.train.begin(), car.train.begin() + 200);
      TrainedModel m1 = snu_bpt_train(subset, car.dataset.schema, config);
      TrainedModel m2 = snu_bpt_train(subset, car.dataset.schema, config);
      for (size_t l = 0; l < m1.snu_layers.size(); ++l)
        if (!(m1.snu_layers[l].weights == m2.snu_layers[l].weights &&
              m1.snu_layers[l].bias == m2.snu_layers[l].bias))
          ok = false;
      if (m1.loss_curve != m2.loss_curve) ok = false;
    }
    {
      TrainConfig config = preset_config(ModelKind::kStdpUnsupervised, "car");
      config.stdp.epochs = 1;
      std::vector<Record> subset(car.train.begin(), car.train.begin() + 200);
      TrainedModel m1 = stdp_train_unsupervised(subset, car.dataset.schema, config);
      TrainedModel m2 = stdp_train_unsupervised(subset, car.dataset.schema, config);
      if (!(m1.stdp_weights == m2.stdp_weights && m1.class_map == m2.class_map)) ok = false;
    }
    {
      TrainConfig config = preset_config(ModelKind::kProbBackprop, "car", 2);
      config.epochs = 1;
      std::vector<Record> subset(car.train.begin(), car.train.begin() + 200);
      TrainedModel m1 = prob_bp_train(subset, car.dataset.schema, config);
      TrainedModel m2 = prob_bp_train(subset, car.dataset.schema, config);
      for (size_t l = 0; l < m1.srm_weights.size(); ++l)
        if (!(m1.srm_weights[l] == m2.srm_weights[l])) ok = false;
    }
    {
      TrainConfig config = preset_config(ModelKind::kLogReg, "car");
      TrainedModel m1 = train_model(car.train, car.dataset.schema, config);
      TrainedModel m2 = train_model(car.train, car.dataset.schema, config);
      if (!(m1.logreg.weights == m2.logreg.weights && m1.logreg.bias == m2.logreg.bias))
        ok = false;
    }
    report(12, "", ok, detail);
  }

  std::printf("acceptance: %s (%d failing checks, %.0fs total)\n",
              g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT", g_failures,
              total.seconds());
  return g_failures == 0 ? 0 : 1;
}
