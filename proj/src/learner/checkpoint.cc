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

#include "ssdlab/learner/checkpoint.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

namespace ssdlab {

namespace {

constexpr const char* kMagic = "ssdlab-qnetwork";

void AppendHex(std::string& out, double v) {
  fmt::format_to(std::back_inserter(out), "{:a}", v);
}

class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  std::string Word(const char* what) {
    std::string w;
    if (!(in_ >> w)) Fail(fmt::format("unexpected end of file reading {}", what));
    return w;
  }

  void Expect(const char* keyword) {
    const std::string w = Word(keyword);
    if (w != keyword) Fail(fmt::format("expected '{}', found '{}'", keyword, w));
  }

  long Integer(const char* what) {
    const std::string w = Word(what);
    char* end = nullptr;
    const long v = std::strtol(w.c_str(), &end, 10);
    if (end == w.c_str() || *end != '\0') Fail(fmt::format("bad integer for {}", what));
    return v;
  }

  double Real(const char* what) {
    const std::string w = Word(what);
    char* end = nullptr;
    const double v = std::strtod(w.c_str(), &end);
    if (end == w.c_str() || *end != '\0') Fail(fmt::format("bad number for {}", what));
    return v;
  }

  [[noreturn]] static void Fail(const std::string& why) {
    throw CheckpointError(CheckpointError::Kind::kCorrupt,
                          "corrupt checkpoint: " + why);
  }

 private:
  std::istringstream in_;
};

}  // namespace

std::string SerializeCheckpoint(const QNetwork& net, int64_t training_step) {
  std::string out;
  fmt::format_to(std::back_inserter(out), "{} {}\n", kMagic, kCheckpointVersion);
  fmt::format_to(std::back_inserter(out), "bias {}\n", net.with_bias() ? 1 : 0);
  fmt::format_to(std::back_inserter(out), "layers {}", net.layer_dims().size());
  for (int d : net.layer_dims()) fmt::format_to(std::back_inserter(out), " {}", d);
  fmt::format_to(std::back_inserter(out), "\nstep {}\n", training_step);
  for (int l = 0; l < net.num_layers(); ++l) {
    const Eigen::MatrixXd& w = net.weights(l);
    fmt::format_to(std::back_inserter(out), "weights {} {} {}\n", l, w.rows(), w.cols());
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        if (c) out.push_back(' ');
        AppendHex(out, w(r, c));
      }
      out.push_back('\n');
    }
    const Eigen::VectorXd& b = net.bias(l);
    fmt::format_to(std::back_inserter(out), "bias {} {}\n", l, b.size());
    for (Eigen::Index r = 0; r < b.size(); ++r) {
      if (r) out.push_back(' ');
      AppendHex(out, b(r));
    }
    out.push_back('\n');
  }
  out += "end\n";
  return out;
}

Checkpoint ParseCheckpoint(const std::string& text) {
  Reader in(text);
  if (in.Word("header") != kMagic) Reader::Fail("not a ssdlab checkpoint");
  const long version = in.Integer("version");
  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::kVersionMismatch,
                          fmt::format("checkpoint version {} unsupported (expected {})",
                                      version, kCheckpointVersion));
  }
  in.Expect("bias");
  const long with_bias = in.Integer("bias flag");
  in.Expect("layers");
  const long count = in.Integer("layer count");
  if (count < 2 || count > 64) Reader::Fail("implausible layer count");
  std::vector<int> dims;
  for (long i = 0; i < count; ++i) {
    const long d = in.Integer("layer width");
    if (d <= 0 || d > (1 << 20)) Reader::Fail("implausible layer width");
    dims.push_back(static_cast<int>(d));
  }
  in.Expect("step");
  const long step = in.Integer("step");

  Checkpoint ckpt{QNetwork(dims, with_bias != 0), step};
  QNetwork& net = ckpt.net;
  for (int l = 0; l < net.num_layers(); ++l) {
    Eigen::MatrixXd& w = net.weights(l);
    in.Expect("weights");
    if (in.Integer("layer") != l || in.Integer("rows") != w.rows() ||
        in.Integer("cols") != w.cols()) {
      Reader::Fail(fmt::format("weight block {} has the wrong shape", l));
    }
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = in.Real("weight");
    }
    Eigen::VectorXd& b = net.bias(l);
    in.Expect("bias");
    if (in.Integer("layer") != l || in.Integer("size") != b.size()) {
      Reader::Fail(fmt::format("bias block {} has the wrong shape", l));
    }
    for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = in.Real("bias");
  }
  in.Expect("end");
  return ckpt;
}

void SavePolicy(const QNetwork& net, int64_t training_step,
                const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const std::string text = SerializeCheckpoint(net, training_step);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw CheckpointError(CheckpointError::Kind::kIo,
                          fmt::format("cannot write checkpoint '{}'", path.string()));
  }
}

Checkpoint LoadPolicy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CheckpointError(CheckpointError::Kind::kIo,
                          fmt::format("cannot read checkpoint '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCheckpoint(buffer.str());
}

}  // namespace ssdlab
