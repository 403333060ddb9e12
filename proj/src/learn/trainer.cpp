// Copyright 2026 The AOGrasp Toolkit Authors
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


#include "aograsp/learn/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>

#include "aograsp/common/error.hpp"
#include "aograsp/common/parallel.hpp"
#include "aograsp/common/rng.hpp"

namespace aograsp::learn {

const char* to_string(Precision p) { return p == Precision::f64 ? "f64" : "f32"; }

Precision parse_precision(const std::string& text) {
  if (text == "f64") return Precision::f64;
  if (text == "f32") return Precision::f32;
  throw Error("unknown precision '" + text + "' (expected f64 or f32)");
}

void ContrastiveConfig::validate() const {
  if (pairs == 0) throw Error("contrastive: pairs must be >= 1");
  if (negatives == 0) throw Error("contrastive: negatives must be >= 1");
  if (!(m_p >= 0.0) || !(m_n >= 0.0)) throw Error("contrastive: margins must be non-negative");
  if (!(eps_corr >= 0.0)) throw Error("contrastive: eps_corr must be non-negative");
}

void TrainingSet::validate(bool need_targets) const {
  for (std::size_t c = 0; c < clouds.size(); ++c) {
    const auto& tc = clouds[c];
    const std::string where = "training cloud " + std::to_string(c);
    if (tc.cloud.empty()) throw Error(where + ": empty cloud");
    if (need_targets && tc.target.size() != tc.cloud.size()) throw Error(where + ": target length differs from cloud");
    if (!tc.weight.empty() && tc.weight.size() != tc.cloud.size())
      throw Error(where + ": weight length differs from cloud");
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pr = pairs[p];
    if (pr.a >= clouds.size() || pr.b >= clouds.size()) throw Error("training pair " + std::to_string(p) + ": bad cloud id");
    for (const auto& [i, j] : pr.matches)
      if (i >= clouds[pr.a].cloud.size() || j >= clouds[pr.b].cloud.size())
        throw Error("training pair " + std::to_string(p) + ": match index out of range");
  }
}

void TrainConfig::validate() const {
  optimizer.validate();
  weights.validate();
  contrastive.validate();
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Item {
  std::size_t a = 0;
  std::size_t b = kNone;
  const TrainingPair* pair = nullptr;
};

struct Objective {
  bool use_hc = false;
  bool use_mse = false;
  double w_hc = 0.0;
  double w_mse = 0.0;
};

template <typename T>
struct ItemResult {
  std::vector<T> grad;
  double hc = 0.0;
  double mse = 0.0;
};

std::vector<std::pair<std::size_t, std::size_t>> sample_matches(const TrainingPair& pair, std::size_t count, Rng& rng) {
  const auto& all = pair.matches;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(count);
  if (all.size() >= count) {
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t pick = k + rng.index(idx.size() - k);
      std::swap(idx[k], idx[pick]);
      out.push_back(all[idx[k]]);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) out.push_back(all[rng.index(all.size())]);
  }
  return out;
}

// Uniform (with replacement) over points farther than eps from `match`.
std::vector<std::size_t> sample_negatives(const geom::PointCloud& cloud, std::size_t match, std::size_t count,
                                          double eps, Rng& rng) {
  std::vector<std::size_t> out;
  const double eps2 = eps * eps;
  const geom::Point3& m = cloud.points[match];
  const std::size_t max_tries = 64 * count;
  for (std::size_t t = 0; t < max_tries && out.size() < count; ++t) {
    const std::size_t k = rng.index(cloud.size());
    if (k != match && geom::squared_distance(cloud.points[k], m) > eps2) out.push_back(k);
  }
  return out;
}

std::vector<double> to_double(const Vec<double>& v) { return {v.data(), v.data() + v.size()}; }
std::vector<double> to_double(const Vec<float>& v) { return {v.data(), v.data() + v.size()}; }

template <typename T>
ItemResult<T> run_item(const ScorerNetworkT<T>& net, const std::vector<std::optional<PreparedCloud>>& prep,
                       const TrainingSet& data, const Item& item, const TrainConfig& cfg, const Objective& obj,
                       std::uint64_t seed) {
  ItemResult<T> out;
  out.grad.assign(net.parameter_count(), T(0));
  Rng rng(seed);

  const bool paired = item.b != kNone;
  const ForwardCache<T> fa = net.forward(*prep[item.a]);
  std::optional<ForwardCache<T>> fb;
  if (paired) fb = net.forward(*prep[item.b]);

  std::optional<Mat<T>> dfa, dfb;
  if (obj.use_hc && paired) {
    const auto& cc = cfg.contrastive;
    ContrastiveBatch batch;
    batch.f_a = fa.features.template cast<double>();
    batch.f_b = fb->features.template cast<double>();
    batch.m_p = cc.m_p;
    batch.m_n = cc.m_n;
    batch.pairs = sample_matches(*item.pair, cc.pairs, rng);
    const auto& cloud_a = data.clouds[item.a].cloud;
    const auto& cloud_b = data.clouds[item.b].cloud;
    for (const auto& [i, j] : batch.pairs) {
      batch.neg_a.push_back(sample_negatives(cloud_b, j, cc.negatives, cc.eps_corr, rng));
      batch.neg_b.push_back(sample_negatives(cloud_a, i, cc.negatives, cc.eps_corr, rng));
    }
    const ContrastiveResult res = hardest_contrastive_loss(batch);
    out.hc = res.loss;
    dfa = (obj.w_hc * res.grad_a).template cast<T>();
    dfb = (obj.w_hc * res.grad_b).template cast<T>();
  }

  std::optional<Vec<T>> dsa, dsb;
  if (obj.use_mse) {
    const double views = paired ? 2.0 : 1.0;
    auto term = [&](const ForwardCache<T>& f, std::size_t cloud_id) {
      const auto& tc = data.clouds[cloud_id];
      const std::vector<double> pred = to_double(f.scores);
      const LossValue l = tc.weight.empty() ? mse_heatmap_loss(pred, tc.target)
                                            : mse_heatmap_loss(pred, tc.target, tc.weight);
      out.mse += l.loss / views;
      Vec<T> ds(static_cast<Eigen::Index>(pred.size()));
      for (std::size_t i = 0; i < pred.size(); ++i) ds(static_cast<Eigen::Index>(i)) = static_cast<T>(obj.w_mse * l.grad[i] / views);
      return ds;
    };
    dsa = term(fa, item.a);
    if (paired) dsb = term(*fb, item.b);
  }

  net.backward(*prep[item.a], fa, dfa ? &*dfa : nullptr, dsa ? &*dsa : nullptr, out.grad);
  if (paired) net.backward(*prep[item.b], *fb, dfb ? &*dfb : nullptr, dsb ? &*dsb : nullptr, out.grad);
  return out;
}

template <typename T>
TrainResult run_training(const TrainingSet& data, const ScorerNetwork& init, const TrainConfig& cfg, std::uint64_t seed,
                         const std::vector<Item>& items, const Objective& obj, const StepCallback& on_step) {
  const std::size_t threads = resolve_thread_count(cfg.threads);

  std::vector<char> needed(data.clouds.size(), 0);
  for (const auto& it : items) {
    needed[it.a] = 1;
    if (it.b != kNone) needed[it.b] = 1;
  }
  std::vector<std::optional<PreparedCloud>> prep(data.clouds.size());
  parallel_for(data.clouds.size(), threads, [&](std::size_t c) {
    if (needed[c]) prep[c] = prepare_cloud(data.clouds[c].cloud, init.config().encoder);
  });

  ScorerNetworkT<T> net = init.template cast<T>();
  Adam<T> adam(cfg.optimizer, net.parameter_count());
  TrainResult result{init, {}};

  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t bs = cfg.optimizer.batch_size;
  std::vector<T> grad(net.parameter_count());

  for (std::size_t epoch = 0; epoch < cfg.optimizer.epochs; ++epoch) {
    Rng shuffle(derive_seed(seed, 2 * epoch + 1));
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[shuffle.index(k)]);

    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t count = std::min(bs, order.size() - start);
      const std::size_t step = adam.steps() + 1;
      const std::uint64_t step_seed = derive_seed(seed, 2 * step);
      std::vector<ItemResult<T>> parts(count);
      parallel_for(count, threads, [&](std::size_t k) {
        parts[k] = run_item(net, prep, data, items[order[start + k]], cfg, obj, derive_seed(step_seed, k));
      });

      std::fill(grad.begin(), grad.end(), T(0));
      LossRecord rec;
      rec.step = step;
      rec.epoch = epoch;
      for (const auto& p : parts) {
        for (std::size_t q = 0; q < grad.size(); ++q) grad[q] += p.grad[q];
        rec.hc += p.hc;
        rec.mse += p.mse;
      }
      const T inv = T(1) / static_cast<T>(count);
      for (auto& g : grad) g *= inv;
      rec.hc /= static_cast<double>(count);
      rec.mse /= static_cast<double>(count);
      if (!std::isfinite(rec.hc)) throw Error("non-finite loss at step " + std::to_string(step) + " (term hc)");
      if (!std::isfinite(rec.mse)) throw Error("non-finite loss at step " + std::to_string(step) + " (term mse)");
      rec.total = obj.w_hc * rec.hc + obj.w_mse * rec.mse;
      rec.lr = adam.current_rate();
      adam.step(net.parameters(), grad);
      for (const T& p : net.parameters())
        if (!std::isfinite(static_cast<double>(p)))
          throw Error("non-finite parameter after step " + std::to_string(step));
      result.history.push_back(rec);
      if (on_step) on_step(rec);
    }
  }
  result.network = net.template cast<double>();
  return result;
}

TrainResult dispatch(const TrainingSet& data, const ScorerNetwork& init, const TrainConfig& cfg, std::uint64_t seed,
                     const std::vector<Item>& items, const Objective& obj, const StepCallback& on_step) {
  if (cfg.precision == Precision::f32) return run_training<float>(data, init, cfg, seed, items, obj, on_step);
  return run_training<double>(data, init, cfg, seed, items, obj, on_step);
}

}  // namespace

TrainResult pretrain_siamese(const TrainingSet& data, const ScorerNetwork& init, const TrainConfig& cfg,
                             std::uint64_t seed, const StepCallback& on_step) {
  cfg.validate();
  data.validate(false);
  std::vector<Item> items;
  for (const auto& p : data.pairs)
    if (!p.matches.empty()) items.push_back({p.a, p.b, &p});
  if (items.empty()) throw Error("pretrain: dataset has no usable correspondence pairs");
  Objective obj;
  obj.use_hc = true;
  obj.w_hc = 1.0;
  return dispatch(data, init, cfg, seed, items, obj, on_step);
}

TrainResult train_scorer(const TrainingSet& data, const ScorerNetwork& init, const TrainConfig& cfg,
                         std::uint64_t seed, const StepCallback& on_step) {
  cfg.validate();
  data.validate(true);
  std::vector<Item> items;
  for (const auto& p : data.pairs)
    if (!p.matches.empty()) items.push_back({p.a, p.b, &p});
  if (items.empty())
    for (std::size_t c = 0; c < data.clouds.size(); ++c) items.push_back({c, kNone, nullptr});
  if (items.empty()) throw Error("train: dataset is empty");
  Objective obj;
  obj.use_hc = cfg.weights.hc > 0.0;
  obj.use_mse = cfg.weights.mse > 0.0;
  obj.w_hc = cfg.weights.hc;
  obj.w_mse = cfg.weights.mse;
  return dispatch(data, init, cfg, seed, items, obj, on_step);
}

std::string loss_history_csv(const std::vector<LossRecord>& history) {
  std::string out = "step,epoch,lr,hc,mse,total\n";
  char buf[160];
  for (const auto& r : history) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", r.step, r.epoch, r.lr, r.hc, r.mse, r.total);
    out += buf;
  }
  return out;
}

std::vector<double> epoch_means(const std::vector<LossRecord>& history) {
  std::vector<double> sum;
  std::vector<std::size_t> count;
  for (const auto& r : history) {
    if (r.epoch >= sum.size()) {
      sum.resize(r.epoch + 1, 0.0);
      count.resize(r.epoch + 1, 0);
    }
    sum[r.epoch] += r.total;
    ++count[r.epoch];
  }
  for (std::size_t e = 0; e < sum.size(); ++e)
    if (count[e]) sum[e] /= static_cast<double>(count[e]);
  return sum;
}

}  // namespace aograsp::learn
