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

#include "snnfc/model_io.hpp"

#include <cstring>
#include <fstream>

#include "snnfc/errors.hpp"
#include "snnfc/manifest.hpp"

namespace snnfc {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'F', 'C', 'M', 'D', 'L', '1'};

void write_matrix(std::ofstream& out, const MatrixXd& m) {
  // Row-major on disk regardless of Eigen's in-memory layout.
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
}

MatrixXd read_matrix(std::ifstream& in, Eigen::Index rows, Eigen::Index cols) {
  MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      double v;
      in.read(reinterpret_cast<char*>(&v), sizeof(v));
      m(r, c) = v;
    }
  if (!in) throw DataError("model file truncated");
  return m;
}

void write_vector(std::ofstream& out, const VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = v(i);
    out.write(reinterpret_cast<const char*>(&x), sizeof(x));
  }
}

VectorXd read_vector(std::ifstream& in, Eigen::Index n) {
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x;
    in.read(reinterpret_cast<char*>(&x), sizeof(x));
    v(i) = x;
  }
  if (!in) throw DataError("model file truncated");
  return v;
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
  Json header;
  header["kind"] = model_kind_name(model.kind);
  header["schema"] = schema_to_json(model.schema);
  header["schema_fingerprint"] = model.schema.fingerprint();
  header["config"] = train_config_to_json(model.config);
  header["class_map"] = model.class_map;
  header["hw_output_scales"] = model.hw_output_scales;
  header["loss_curve"] = model.loss_curve;
  header["train_accuracy"] = model.train_accuracy;

  Json blocks = Json::array();
  switch (model.kind) {
    case ModelKind::kSnuBackprop:
      for (const auto& layer : model.snu_layers)
        blocks.push_back({{"rows", layer.weights.rows()},
                          {"cols", layer.weights.cols()},
                          {"leak", layer.leak},
                          {"bias", true}});
      break;
    case ModelKind::kProbBackprop:
      for (const auto& w : model.srm_weights)
        blocks.push_back({{"rows", w.rows()}, {"cols", w.cols()}});
      break;
    case ModelKind::kStdpUnsupervised:
    case ModelKind::kStdpSupervised:
      blocks.push_back({{"rows", model.stdp_weights.rows()}, {"cols", model.stdp_weights.cols()}});
      break;
    case ModelKind::kLogReg:
      blocks.push_back(
          {{"rows", model.logreg.weights.rows()}, {"cols", model.logreg.weights.cols()}});
      header["logreg_l2"] = model.logreg.l2;
      break;
  }
  header["blocks"] = std::move(blocks);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::string header_str = header.dump();
  const auto header_len = static_cast<uint64_t>(header_str.size());
  out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
  out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));

  switch (model.kind) {
    case ModelKind::kSnuBackprop:
      for (const auto& layer : model.snu_layers) {
        write_matrix(out, layer.weights);
        write_vector(out, layer.bias);
      }
      break;
    case ModelKind::kProbBackprop:
      for (const auto& w : model.srm_weights) write_matrix(out, w);
      break;
    case ModelKind::kStdpUnsupervised:
    case ModelKind::kStdpSupervised:
      write_matrix(out, model.stdp_weights);
      write_vector(out, model.stdp_thresholds);
      break;
    case ModelKind::kLogReg:
      write_matrix(out, model.logreg.weights);
      write_vector(out, model.logreg.bias);
      break;
  }
  if (!out) throw DataError("failed writing model file: " + path);
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw DataError("not a model file (bad magic): " + path);
  uint64_t header_len = 0;
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  std::string header_str(header_len, '\0');
  in.read(header_str.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw DataError("model file truncated: " + path);
  Json header = Json::parse(header_str);

  TrainedModel model;
  model.kind = model_kind_from_name(header.at("kind").get<std::string>());
  model.schema = schema_from_json(header.at("schema"));
  model.config = train_config_from_json(header.at("config"));
  model.class_map = header.at("class_map").get<std::vector<int>>();
  model.hw_output_scales = header.at("hw_output_scales").get<std::vector<double>>();
  model.loss_curve = header.at("loss_curve").get<std::vector<double>>();
  model.train_accuracy = header.at("train_accuracy").get<double>();

  const Json& blocks = header.at("blocks");
  switch (model.kind) {
    case ModelKind::kSnuBackprop:
      for (const auto& b : blocks) {
        SnuLayer layer;
        const auto rows = b.at("rows").get<Eigen::Index>();
        const auto cols = b.at("cols").get<Eigen::Index>();
        layer.leak = b.at("leak").get<double>();
        layer.weights = read_matrix(in, rows, cols);
        layer.bias = read_vector(in, rows);
        model.snu_layers.push_back(std::move(layer));
      }
      model.targets = generate_targets(model.schema.class_count(), model.schema.class_count(),
                                       model.config.targets);
      break;
    case ModelKind::kProbBackprop:
      for (const auto& b : blocks)
        model.srm_weights.push_back(
            read_matrix(in, b.at("rows").get<Eigen::Index>(), b.at("cols").get<Eigen::Index>()));
      model.targets = generate_targets(model.schema.class_count(), model.schema.class_count(),
                                       model.config.targets);
      break;
    case ModelKind::kStdpUnsupervised:
    case ModelKind::kStdpSupervised: {
      const auto& b = blocks.at(0);
      model.stdp_weights =
          read_matrix(in, b.at("rows").get<Eigen::Index>(), b.at("cols").get<Eigen::Index>());
      model.stdp_thresholds = read_vector(in, model.stdp_weights.rows());
      model.lif.threshold = model.config.stdp.threshold;
      model.lif.leak_factor = model.config.stdp.lif_leak;
      model.lif.refractory_steps = model.config.stdp.lif_refractory;
      break;
    }
    case ModelKind::kLogReg: {
      const auto& b = blocks.at(0);
      model.logreg.weights =
          read_matrix(in, b.at("rows").get<Eigen::Index>(), b.at("cols").get<Eigen::Index>());
      model.logreg.bias = read_vector(in, model.logreg.weights.rows());
      model.logreg.l2 = header.at("logreg_l2").get<double>();
      break;
    }
  }
  return model;
}

}  // namespace snnfc
