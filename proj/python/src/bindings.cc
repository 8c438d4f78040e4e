// Copyright 2026 The ssdlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ssdlab/cli/replay.h"
#include "ssdlab/egta/egta.h"
#include "ssdlab/harness/config.h"
#include "ssdlab/harness/environment.h"
#include "ssdlab/harness/train.h"
#include "ssdlab/learner/checkpoint.h"

namespace py = pybind11;

namespace ssdlab {
namespace {

GameKind ParseGame(const std::string& name) {
  if (name == "gathering") return GameKind::kGathering;
  if (name == "wolfpack") return GameKind::kWolfpack;
  throw py::value_error("game must be 'gathering' or 'wolfpack', got '" + name + "'");
}

Action ToAction(int a) {
  if (a < 0 || a >= kNumActions) throw py::value_error("action index out of range");
  return static_cast<Action>(a);
}

py::array_t<double> ObservationArray(const Observation& obs) {
  py::array_t<double> out({kObsChannels, kObsRows, kObsCols});
  obs.WriteTensor({out.mutable_data(), static_cast<size_t>(kObsSize)});
  return out;
}

class PyEnvironment {
 public:
  PyEnvironment(const std::string& game, const std::string& map_text, int episode_length,
                int n_apple, int n_tagged, int capture_radius, double r_lone, double r_team)
      : env_(MakeConfig(game, map_text, episode_length, n_apple, n_tagged, capture_radius,
                        r_lone, r_team)) {}

  void Reset(uint64_t seed) { env_.Reset(seed); }

  std::pair<double, double> Step(int a, int b) {
    const Action joint[] = {ToAction(a), ToAction(b)};
    const StepResult r = env_.Step(joint);
    return {r.rewards[0], r.rewards[1]};
  }

  py::array_t<double> Observe(int agent) const {
    if (agent < 0 || agent > 1) throw py::value_error("agent must be 0 or 1");
    return ObservationArray(env_.Observe(agent));
  }

  std::string Render() const { return RenderAscii(env_.state()); }
  long Frame() const { return env_.state().step; }
  bool Active(int agent) const { return env_.state().entities.at(agent).active; }
  const Environment& env() const { return env_; }

 private:
  static GameConfig MakeConfig(const std::string& game, const std::string& map_text,
                               int episode_length, int n_apple, int n_tagged,
                               int capture_radius, double r_lone, double r_team) {
    GameConfig cfg;
    cfg.game = ParseGame(game);
    auto map = std::make_shared<const GridMap>(LoadMap(map_text));
    map->ValidateFor(cfg.game);
    cfg.map = std::move(map);
    cfg.episode_length = episode_length;
    cfg.gathering = {n_apple, n_tagged};
    cfg.wolfpack = {capture_radius, r_lone, r_team};
    cfg.gathering.Validate();
    cfg.wolfpack.Validate();
    return cfg;
  }

  Environment env_;
};

class PyPolicy {
 public:
  explicit PyPolicy(const std::filesystem::path& path) : ckpt_(LoadPolicy(path)) {}

  std::vector<double> QValues(const PyEnvironment& env, int agent) const {
    const ActionValues q = ckpt_.net.Forward(env.env().Observe(agent));
    return {q.begin(), q.end()};
  }
  int Act(const PyEnvironment& env, int agent) const {
    return ArgMax(ckpt_.net.Forward(env.env().Observe(agent)));
  }
  int64_t training_step() const { return ckpt_.training_step; }

 private:
  Checkpoint ckpt_;
};

py::dict RowToDict(const MetricsRow& r) {
  py::dict d;
  d["cell_id"] = r.cell_id;
  d["seed"] = r.seed;
  d["step"] = r.step;
  d["agent"] = r.agent;
  d["return"] = r.ret;
  d["metric_name"] = r.metric_name;
  d["metric_value"] = r.metric_value;
  d["epsilon"] = r.epsilon;
  d["loss"] = r.loss;
  return d;
}

}  // namespace
}  // namespace ssdlab

PYBIND11_MODULE(_core, m) {
  using namespace ssdlab;
  m.doc() = "Native core of ssdlab.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<MapError>(m, "MapError", PyExc_ValueError);
  py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);

  m.attr("NUM_ACTIONS") = kNumActions;
  m.def("action_name", [](int a) { return std::string(ActionName(ToAction(a))); });

  m.def(
      "classify_matrix",
      [](double R, double P, double S, double T) {
        const DilemmaClass c = ClassifyMatrix(R, P, S, T);
        return py::make_tuple(c.Name(), c.failed);
      },
      py::arg("R"), py::arg("P"), py::arg("S"), py::arg("T"),
      "Returns (class name, failed condition numbers).");
  m.def(
      "check_inequalities",
      [](double R, double P, double S, double T) {
        return CheckSsdInequalities(R, P, S, T).holds;
      },
      py::arg("R"), py::arg("P"), py::arg("S"), py::arg("T"));

  py::class_<PyEnvironment>(m, "Environment")
      .def(py::init<const std::string&, const std::string&, int, int, int, int, double, double>(),
           py::arg("game"), py::arg("map_text"), py::arg("episode_length") = 1000,
           py::arg("n_apple") = 10, py::arg("n_tagged") = 5, py::arg("capture_radius") = 3,
           py::arg("r_lone") = 1.0, py::arg("r_team") = 2.0)
      .def("reset", &PyEnvironment::Reset, py::arg("seed"))
      .def("step", &PyEnvironment::Step, py::arg("action1"), py::arg("action2"),
           "Advances one frame; returns both players' rewards.")
      .def("observe", &PyEnvironment::Observe, py::arg("agent"),
           "Egocentric RGB view as a (3, 16, 21) array.")
      .def("render", &PyEnvironment::Render)
      .def("active", &PyEnvironment::Active, py::arg("agent"))
      .def_property_readonly("frame", &PyEnvironment::Frame);

  py::class_<PyPolicy>(m, "Policy")
      .def(py::init<const std::filesystem::path&>(), py::arg("checkpoint"))
      .def("q_values", &PyPolicy::QValues, py::arg("env"), py::arg("agent"))
      .def("act", &PyPolicy::Act, py::arg("env"), py::arg("agent"))
      .def_property_readonly("training_step", &PyPolicy::training_step);

  m.def(
      "train",
      [](const std::filesystem::path& config) {
        const ExperimentConfig cfg = LoadExperimentConfig(config);
        TrainResult result;
        {
          py::gil_scoped_release release;
          result = Train(cfg);
        }
        py::list rows;
        for (const MetricsRow& r : result.rows) rows.append(RowToDict(r));
        return rows;
      },
      py::arg("config"), "Runs one experiment; returns its metrics rows as dicts.");
}
