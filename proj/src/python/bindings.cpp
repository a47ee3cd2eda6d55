// Copyright 2026 The incgan Authors
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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incgan/bias.hpp"
#include "incgan/errors.hpp"
#include "incgan/exemplars.hpp"
#include "incgan/losses.hpp"
#include "incgan/metrics.hpp"
#include "incgan/ops.hpp"
#include "incgan/report.hpp"

namespace py = pybind11;
using namespace incgan;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Tensor to_tensor(const Array& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array, got " + std::to_string(a.ndim()) + "-D");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return Tensor::from({r, c}, std::vector<double>(a.data(), a.data() + r * c));
}

Array to_array(const Tensor& t) {
  Array out({t.rows(), t.cols()});
  std::copy(t.values().begin(), t.values().end(), out.mutable_data());
  return out;
}

py::dict batch_dict(const LabeledBatch& b) {
  py::dict d;
  d["x"] = to_array(b.inputs);
  d["y"] = py::array_t<int>(static_cast<py::ssize_t>(b.labels.size()), b.labels.data());
  return d;
}

py::dict gaussian_mixture(std::size_t classes, std::size_t dim, std::size_t train_per_class,
                          std::size_t test_per_class, std::uint64_t seed, double separation) {
  DatasetSpec spec;
  spec.classes = classes;
  spec.dim = dim;
  spec.train_per_class = train_per_class;
  spec.test_per_class = test_per_class;
  spec.seed = seed;
  spec.separation = separation;
  const Dataset data = load_dataset(spec);
  py::dict out;
  out["train"] = batch_dict(data.train);
  out["test"] = batch_dict(data.test);
  out["means"] = data.means;
  return out;
}

std::string run_protocol_json(const std::string& method, std::size_t classes, std::size_t parts,
                              std::uint64_t seed, std::optional<double> lambda,
                              std::optional<double> beta, std::size_t memory_size,
                              const std::string& selection, std::size_t epochs,
                              std::size_t gan_iterations, std::uint64_t data_seed) {
  DatasetSpec spec;
  spec.classes = classes;
  spec.seed = data_seed;
  ProtocolConfig cfg;
  cfg.total_classes = classes;
  cfg.parts = parts;
  cfg.seed = seed;
  cfg.method = parse_method(method);
  cfg.lambda = lambda;
  cfg.beta = beta;
  cfg.memory_size = memory_size;
  cfg.selection = parse_selection(selection);
  cfg.schedule.epochs = epochs;
  cfg.gan.iterations = gan_iterations;
  ExperimentReport report;
  {
    py::gil_scoped_release release;
    report = run_protocol(cfg, spec);
  }
  return report_to_json(report).dump();
}

double loss_value(const Tensor& t) { return t.item(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "class-incremental learning core";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("softmax", [](const Array& logits, double t) { return to_array(softmax(to_tensor(logits), t)); },
        py::arg("logits"), py::arg("temperature") = 1.0);

  m.def(
      "cross_entropy",
      [](const Array& logits, const std::vector<int>& labels) {
        return loss_value(cross_entropy_loss(to_tensor(logits), labels));
      },
      py::arg("logits"), py::arg("labels"));

  m.def(
      "distillation_loss",
      [](const Array& teacher, const Array& student, double temperature) {
        LossConfig cfg;
        const Tensor s = to_tensor(student);
        const Tensor t = to_tensor(teacher);
        cfg.temperature = temperature;
        cfg.old_classes = t.cols();
        cfg.new_classes = s.cols() - t.cols();
        return loss_value(distillation_loss_from_logits(t, s, cfg));
      },
      py::arg("teacher_logits"), py::arg("student_logits"), py::arg("temperature") = 2.0);

  m.def(
      "combined_loss",
      [](const Array& teacher, const Array& student, const std::vector<int>& labels, double lambda,
         double temperature) {
        LossConfig cfg;
        const Tensor s = to_tensor(student);
        const Tensor t = to_tensor(teacher);
        cfg.lambda = lambda;
        cfg.temperature = temperature;
        cfg.old_classes = t.cols();
        cfg.new_classes = s.cols() - t.cols();
        cfg.validate();
        const Tensor d = distillation_loss_from_logits(t, s, cfg);
        const Tensor ce = cross_entropy_loss(s, labels);
        return loss_value(combined_loss(d, ce, cfg));
      },
      py::arg("teacher_logits"), py::arg("student_logits"), py::arg("labels"),
      py::arg("lam") = 0.5, py::arg("temperature") = 2.0);

  m.def(
      "apply_bias",
      [](const Array& probabilities, double beta, std::size_t old_classes) {
        const Tensor p = to_tensor(probabilities);
        BiasCorrection bc{beta, old_classes, p.cols() - old_classes};
        return to_array(apply_bias(p, bc));
      },
      py::arg("probabilities"), py::arg("beta"), py::arg("old_classes"));

  m.def(
      "predict",
      [](const Array& logits, double beta, std::size_t old_classes) {
        const Tensor l = to_tensor(logits);
        return predict_from_logits(l, BiasCorrection{beta, old_classes, l.cols() - old_classes});
      },
      py::arg("logits"), py::arg("beta") = 1.0, py::arg("old_classes") = 0);

  m.def(
      "herding_order",
      [](const Array& features, std::size_t count) {
        return herding_order(l2_normalize_rows(to_tensor(features)), count);
      },
      py::arg("features"), py::arg("count"));

  m.def(
      "confusion_matrix",
      [](const std::vector<int>& predictions, const std::vector<int>& labels, std::size_t classes) {
        const ConfusionMatrix cm = confusion_matrix(predictions, labels, classes);
        py::array_t<std::size_t> out({classes, classes});
        std::copy(cm.counts().begin(), cm.counts().end(), out.mutable_data());
        return out;
      },
      py::arg("predictions"), py::arg("labels"), py::arg("classes"));

  m.def("gaussian_mixture", &gaussian_mixture, py::arg("classes") = 8, py::arg("dim") = 2,
        py::arg("train_per_class") = 200, py::arg("test_per_class") = 100, py::arg("seed") = 7,
        py::arg("separation") = 4.5);

  m.def("_run_protocol_json", &run_protocol_json, py::arg("method") = "ours-real",
        py::arg("classes") = 8, py::arg("parts") = 2, py::arg("seed") = 1,
        py::arg("lam") = py::none(), py::arg("beta") = py::none(), py::arg("memory_size") = 40,
        py::arg("selection") = "random", py::arg("epochs") = 15, py::arg("gan_iterations") = 2000,
        py::arg("data_seed") = 7);
}
