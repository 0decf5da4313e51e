#include "stance/svm.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "stance/error.hpp"
#include "stance/random.hpp"
#include "stance/utf8.hpp"

namespace stance {

void TrainConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
  if (!(wi > 0.0 && wi <= 1.0)) throw std::invalid_argument("wi must be in (0, 1]");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_epochs == 0) throw std::invalid_argument("max_epochs must be positive");
}

namespace {

double augment(const TrainConfig& cfg) { return cfg.bias ? 1.0 : 0.0; }

double dot(const std::vector<double>& w, const SparseVector& x, double extra) {
  double s = w.back() * extra;
  for (std::size_t k = 0; k < x.nnz(); ++k) s += w[x.indices[k]] * x.values[k];
  return s;
}

void axpy(std::vector<double>& w, double a, const SparseVector& x, double extra) {
  for (std::size_t k = 0; k < x.nnz(); ++k) w[x.indices[k]] += a * x.values[k];
  w.back() += a * extra;
}

void check_data(const std::vector<Example>& data, std::size_t dimension) {
  bool pos = false;
  bool neg = false;
  for (const auto& ex : data) {
    if (ex.y != 1 && ex.y != -1) throw Error("labels must be +1 or -1");
    (ex.y > 0 ? pos : neg) = true;
    if (ex.x.indices.size() != ex.x.values.size()) throw Error("malformed sparse vector");
    for (std::size_t k = 0; k < ex.x.nnz(); ++k) {
      if (ex.x.indices[k] >= dimension) throw Error("feature index out of range");
      if (!std::isfinite(ex.x.values[k])) throw Error("non-finite feature value");
    }
  }
  if (!pos || !neg) throw Error("training data must contain both classes");
}

}  // namespace

DualSolution train_dual(const std::vector<Example>& data, std::size_t dimension,
                        const TrainConfig& cfg, std::uint64_t feature_digest) {
  cfg.validate();
  check_data(data, dimension);
  const double extra = augment(cfg);
  const std::size_t n = data.size();

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(dimension + 1, 0.0);
  std::vector<double> qdiag(n);
  std::vector<double> upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = data[i].x;
    qdiag[i] = extra * extra;
    for (double v : x.values) qdiag[i] += v * v;
    upper[i] = cfg.cost(data[i].y);
  }

  Rng rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::size_t epoch = 0;
  double violation = 0.0;
  while (epoch < cfg.max_epochs) {
    ++epoch;
    shuffle(std::span(order), rng);
    violation = 0.0;
    for (std::size_t i : order) {
      const auto& ex = data[i];
      const double g = ex.y * dot(w, ex.x, extra) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= upper[i]) {
        pg = std::max(g, 0.0);
      }
      violation = std::max(violation, std::abs(pg));
      if (pg == 0.0) continue;
      // A zero row has a linear objective in its alpha; the minimum is at the
      // upper bound and w does not move.
      const double next = qdiag[i] > 0.0 ? std::clamp(alpha[i] - g / qdiag[i], 0.0, upper[i]) : upper[i];
      const double delta = next - alpha[i];
      alpha[i] = next;
      if (delta != 0.0) axpy(w, delta * ex.y, ex.x, extra);
    }
    if (!std::isfinite(violation)) throw Error("training diverged (non-finite gradient)");
    if (violation < cfg.tolerance) break;
  }
  for (double v : w) {
    if (!std::isfinite(v)) throw Error("training produced a non-finite weight");
  }

  DualSolution sol;
  sol.model.weights = std::move(w);
  sol.model.feature_digest = feature_digest;
  sol.model.seed = cfg.seed;
  sol.model.meta = TrainMeta{cfg.C, cfg.wi, epoch, violation};
  sol.alphas = std::move(alpha);
  return sol;
}

Model train(const std::vector<Example>& data, std::size_t dimension, const TrainConfig& cfg,
            std::uint64_t feature_digest) {
  return train_dual(data, dimension, cfg, feature_digest).model;
}

double dual_objective(const std::vector<Example>& data, const std::vector<double>& alphas,
                      const TrainConfig& cfg) {
  if (alphas.size() != data.size()) throw std::invalid_argument("one alpha per example required");
  std::size_t dimension = 0;
  for (const auto& ex : data) {
    for (auto idx : ex.x.indices) dimension = std::max<std::size_t>(dimension, idx + 1);
  }
  const double extra = augment(cfg);
  std::vector<double> w(dimension + 1, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double a = alphas[i];
    if (!(a >= 0.0 && a <= cfg.cost(data[i].y))) {
      throw std::invalid_argument("alpha " + std::to_string(i) + " outside its box");
    }
    axpy(w, a * data[i].y, data[i].x, extra);
    sum += a;
  }
  double norm2 = 0.0;
  for (double v : w) norm2 += v * v;
  return 0.5 * norm2 - sum;
}

Prediction predict(const Model& model, const SparseVector& x) {
  if (model.weights.empty()) throw Error("empty model");
  for (auto idx : x.indices) {
    if (idx >= model.dimension()) throw Error("feature index beyond model dimension");
  }
  const double margin = dot(model.weights, x, 1.0);
  return Prediction{margin >= 0.0 ? Stance::Supporting : Stance::Opposing, margin};
}

Prediction predict(const Model& model, const FeatureSet& fs, const Document& doc) {
  if (model.feature_digest != fs.digest() || model.dimension() != fs.size()) {
    throw Error("model was trained on a different feature set");
  }
  return predict(model, vectorize(doc, fs));
}

std::string to_text(const Model& model) {
  std::string out = "stance-svm v1\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu\n", model.dimension());
  out += buf;
  std::snprintf(buf, sizeof buf, "%.17g\n", model.meta.C);
  out += buf;
  std::snprintf(buf, sizeof buf, "%.17g\n", model.meta.wi);
  out += buf;
  std::snprintf(buf, sizeof buf, "%" PRIu64 "\n", model.seed);
  out += buf;
  std::snprintf(buf, sizeof buf, "%016" PRIx64 "\n", model.feature_digest);
  out += buf;
  for (double v : model.weights) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out += buf;
  }
  return out;
}

Model parse_model(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const auto t = utf8::trim(line);
    if (!t.empty()) lines.emplace_back(t);
  }
  if (lines.size() < 6 || lines[0] != "stance-svm v1") throw Error("not a stance-svm v1 model");
  Model model;
  try {
    const std::size_t k = std::stoull(lines[1]);
    model.meta.C = std::stod(lines[2]);
    model.meta.wi = std::stod(lines[3]);
    model.seed = std::stoull(lines[4]);
    model.feature_digest = std::stoull(lines[5], nullptr, 16);
    if (lines.size() != 6 + k + 1) throw Error("expected " + std::to_string(k + 1) + " weights");
    for (std::size_t i = 0; i <= k; ++i) model.weights.push_back(std::stod(lines[6 + i]));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
  for (double v : model.weights) {
    if (!std::isfinite(v)) throw Error("model contains a non-finite weight");
  }
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_text(model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace stance
