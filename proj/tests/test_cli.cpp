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
// End-to-end exercises of the snnfc binary: exit codes, manifests, and
// determinism of the command surface. Invoked with the binary path as argv[1].

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "snnfc/manifest.hpp"
#include "snnfc/presets.hpp"

namespace fs = std::filesystem;
using snnfc::Json;

namespace {

std::string g_binary;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "  ok: " << what << "\n";
  } else {
    std::cout << "  FAILED: " << what << "\n";
    ++g_failures;
  }
}

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " >> cli_test.log 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: snnfc_cli_tests <path-to-snnfc-binary>\n";
    return 2;
  }
  g_binary = fs::absolute(argv[1]).string();
  fs::remove_all("cli_work");
  fs::create_directories("cli_work");
  fs::current_path("cli_work");
  std::remove("cli_test.log");

  const std::string base = "--data-dir data --run-dir runs ";

  expect(run("--help") == 0, "--help exits 0");
  expect(run(base + "prepare mushrooms") == 1, "unknown dataset is a usage error (exit 1)");
  {
    std::string log = slurp("cli_test.log");
    expect(log.find("adult") != std::string::npos && log.find("connect4") != std::string::npos,
           "usage error lists the known datasets");
  }
  expect(run(base + "train car") == 2, "training without data is a data error (exit 2)");

  expect(run(base + "synth car") == 0, "synth car");
  expect(run(base + "synth nursery") == 0, "synth nursery");
  expect(run(base + "prepare car --seed 7") == 0, "prepare car");
  expect(run(base + "prepare nursery --seed 7") == 0, "prepare nursery");

  {
    Json first = snnfc::read_json_file("runs/prepare-car/dataset.json");
    expect(run(base + "prepare car --seed 7") == 0, "prepare car again");
    Json second = snnfc::read_json_file("runs/prepare-car/dataset.json");
    expect(first.at("train_fingerprint") == second.at("train_fingerprint") &&
               first.at("test_fingerprint") == second.at("test_fingerprint"),
           "same seed twice gives identical split fingerprints");
    expect(run(base + "prepare car --seed 8") == 0, "prepare car, different seed");
    Json third = snnfc::read_json_file("runs/prepare-car/dataset.json");
    expect(first.at("train_fingerprint") != third.at("train_fingerprint"),
           "different seed changes the split");
    expect(run(base + "prepare car --seed 7") == 0, "restore seed 7 cache");
  }

  expect(run(base + "train car --logreg") == 0, "train logistic baseline");
  expect(run(base + "eval --model runs/car-logreg/model.bin --dataset car") == 0, "eval logreg");
  {
    Json a = snnfc::read_json_file("runs/car-logreg/model.bin.eval.json");
    expect(run(base + "eval --model runs/car-logreg/model.bin --dataset car") == 0, "eval again");
    Json b = snnfc::read_json_file("runs/car-logreg/model.bin.eval.json");
    expect(a.at("metrics") == b.at("metrics"), "eval twice gives identical metrics");
  }

  expect(run(base + "train car --system 1 --mode sup --epochs 1") == 0,
         "train supervised STDP (1 epoch)");
  expect(run(base + "train car --system 1 --mode rubbish") == 1, "bad mode is a usage error");
  expect(run(base + "train car --system 1 --mode sup --hidden 8") == 1,
         "hidden layers with system 1 is a usage error");
  expect(run(base + "train car --logreg --system 3") == 1, "--logreg conflicts with --system");

  expect(run(base + "train car --system 3 --epochs 2 --hidden 8 --out runs/snu-tiny/model.bin") ==
             0,
         "train tiny SNU");
  expect(run(base + "eval --model runs/snu-tiny/model.bin --dataset nursery") == 2,
         "model/dataset mismatch is a data error (exit 2)");
  expect(run(base + "hw-eval --model runs/snu-tiny/model.bin --dataset car --noise-scale 0") == 0,
         "hw-eval zero noise");
  expect(run(base + "hw-eval --model runs/car-logreg/model.bin --dataset car") == 1,
         "hw-eval on a non-SNU model is a usage error");

  expect(run(base +
             "sweep-noise --model runs/snu-tiny/model.bin --dataset car --scales 0,1 --seeds 2 "
             "--out sweep.csv") == 0,
         "sweep-noise");
  {
    std::string csv = slurp("sweep.csv");
    auto lines = static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n'));
    expect(lines == 5, "sweep CSV has header + 4 rows");
    expect(run(base +
               "sweep-noise --model runs/snu-tiny/model.bin --dataset car --scales 0,1 --seeds 2 "
               "--out sweep2.csv") == 0,
           "sweep-noise rerun");
    expect(slurp("sweep2.csv") == csv, "sweep rerun is byte-identical");
  }

  {
    // Unreachable threshold: the network never spikes and training aborts.
    snnfc::TrainConfig config = snnfc::preset_config(snnfc::ModelKind::kStdpUnsupervised, "car");
    config.stdp.threshold = 1e9;
    snnfc::write_json_file("dead.json", snnfc::train_config_to_json(config));
    expect(run(base + "train car --system 1 --mode unsup --config dead.json") == 3,
           "dead network is a training failure (exit 3)");
  }

  expect(run(base + "report --runs runs --out report") == 0, "report");
  expect(fs::exists("report.txt") && fs::exists("report.csv"), "report files written");

  if (g_failures == 0) {
    std::cout << "cli: all checks passed\n";
    return 0;
  }
  std::cout << "cli: " << g_failures << " checks FAILED (see cli_work/cli_test.log)\n";
  return 1;
}
