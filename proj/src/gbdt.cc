#include "listforge/gbdt.h"

#include <algorithm>
#include <cmath>

namespace listforge {

using json = nlohmann::json;

namespace {

constexpr double kMarginClamp = 30.0;
constexpr double kGainEpsilon = 1e-12;

// Per-feature distinct values and each row's index into them.
struct BinnedFeature {
  std::vector<double> values;
  std::vector<uint32_t> bin;
};

BinnedFeature bin_feature(const std::vector<std::vector<double>> &x, size_t f) {
  BinnedFeature b;
  b.values.reserve(x.size());
  for (const auto &row : x) b.values.push_back(row[f]);
  std::sort(b.values.begin(), b.values.end());
  b.values.erase(std::unique(b.values.begin(), b.values.end()), b.values.end());
  b.bin.reserve(x.size());
  for (const auto &row : x) {
    auto it = std::lower_bound(b.values.begin(), b.values.end(), row[f]);
    b.bin.push_back(uint32_t(it - b.values.begin()));
  }
  return b;
}

struct SplitCandidate {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

double leaf_score(double g, double h, double lambda) { return g * g / (h + lambda); }

}  // namespace

void GbdtParams::validate() const {
  if (n_trees < 0) throw Error("n_trees must be >= 0");
  if (max_depth < 0) throw Error("max_depth must be >= 0");
  if (!(learning_rate > 0.0)) throw Error("learning_rate must be > 0");
  if (min_child_weight < 0.0) throw Error("min_child_weight must be >= 0");
  if (lambda < 0.0) throw Error("lambda must be >= 0");
  if (min_split_gain < 0.0) throw Error("min_split_gain must be >= 0");
}

json GbdtParams::to_json() const {
  return {{"n_trees", n_trees},
          {"max_depth", max_depth},
          {"learning_rate", learning_rate},
          {"min_child_weight", min_child_weight},
          {"lambda", lambda},
          {"min_split_gain", min_split_gain},
          {"seed", seed}};
}

GbdtParams GbdtParams::from_json(const json &j) {
  GbdtParams p;
  p.n_trees = j.value("n_trees", p.n_trees);
  p.max_depth = j.value("max_depth", p.max_depth);
  p.learning_rate = j.value("learning_rate", p.learning_rate);
  p.min_child_weight = j.value("min_child_weight", p.min_child_weight);
  p.lambda = j.value("lambda", p.lambda);
  p.min_split_gain = j.value("min_split_gain", p.min_split_gain);
  p.seed = j.value("seed", p.seed);
  p.validate();
  return p;
}

double sigmoid(double margin) {
  margin = std::clamp(margin, -kMarginClamp, kMarginClamp);
  return 1.0 / (1.0 + std::exp(-margin));
}

double log_loss(const std::vector<double> &margins, const std::vector<int> &y) {
  if (margins.empty()) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < margins.size(); ++i) {
    // log(1 + e^m) - y*m, computed stably.
    double m = margins[i];
    double softplus = m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
    total += softplus - (y[i] ? m : 0.0);
  }
  return total / double(margins.size());
}

double RegressionTree::predict(const std::vector<double> &x) const {
  if (nodes.empty()) return 0.0;
  int i = 0;
  while (nodes[i].feature >= 0) {
    const TreeNode &n = nodes[i];
    i = x[n.feature] < n.threshold ? n.left : n.right;
  }
  return nodes[i].value;
}

double GbdtModel::margin(const std::vector<double> &x) const {
  double m = base_score;
  for (const auto &t : trees) m += t.predict(x);
  return m;
}

GbdtModel train_gbdt(const std::vector<std::vector<double>> &x, const std::vector<int> &y,
                     const GbdtParams &params, uint64_t schema_hash,
                     const std::vector<std::string> &feature_names) {
  params.validate();
  if (x.size() != y.size()) throw Error("feature and label counts differ");
  size_t positives = 0;
  for (int v : y) {
    if (v != 0 && v != 1) throw Error("labels must be 0 or 1");
    positives += size_t(v);
  }
  if (positives == 0 || positives == y.size()) {
    throw SingleClassError("training data contains a single class (" +
                           std::to_string(y.size()) + " examples, " +
                           std::to_string(positives) + " positive)");
  }
  const size_t n = x.size();
  const size_t dims = x[0].size();
  for (const auto &row : x) {
    if (row.size() != dims) throw Error("feature rows differ in length");
  }
  if (!feature_names.empty() && feature_names.size() != dims) {
    throw Error("feature name count does not match feature dimension");
  }

  GbdtModel model;
  model.learning_rate = params.learning_rate;
  model.schema_hash = schema_hash;
  model.seed = params.seed;
  model.feature_names = feature_names;
  model.feature_gain.assign(dims, 0.0);
  double prior = double(positives) / double(n);
  model.base_score = std::log(prior / (1.0 - prior));

  std::vector<BinnedFeature> bins;
  bins.reserve(dims);
  for (size_t f = 0; f < dims; ++f) bins.push_back(bin_feature(x, f));

  std::vector<double> margins(n, model.base_score);
  std::vector<double> grad(n), hess(n);
  model.loss_history.push_back(log_loss(margins, y));

  std::vector<int> node_of(n);
  std::vector<double> hist_g, hist_h;
  std::vector<uint32_t> hist_n;
  for (int round = 0; round < params.n_trees; ++round) {
    for (size_t i = 0; i < n; ++i) {
      double p = sigmoid(margins[i]);
      grad[i] = p - y[i];
      hess[i] = p * (1.0 - p);
    }
    RegressionTree tree;
    tree.nodes.push_back({});
    std::fill(node_of.begin(), node_of.end(), 0);
    std::vector<int> frontier{0};
    std::vector<double> node_g{0.0}, node_h{0.0};
    for (size_t i = 0; i < n; ++i) {
      node_g[0] += grad[i];
      node_h[0] += hess[i];
    }

    for (int depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
      // slot[node] = position of the node within the frontier, or -1.
      std::vector<int> slot(tree.nodes.size(), -1);
      for (size_t k = 0; k < frontier.size(); ++k) slot[frontier[k]] = int(k);
      std::vector<SplitCandidate> best(frontier.size());

      for (size_t f = 0; f < dims; ++f) {
        const BinnedFeature &bf = bins[f];
        size_t nb = bf.values.size();
        if (nb < 2) continue;
        hist_g.assign(nb * frontier.size(), 0.0);
        hist_h.assign(nb * frontier.size(), 0.0);
        hist_n.assign(nb * frontier.size(), 0);
        for (size_t i = 0; i < n; ++i) {
          int node = node_of[i];
          if (node < 0 || slot[node] < 0) continue;
          size_t idx = size_t(slot[node]) * nb + bf.bin[i];
          hist_g[idx] += grad[i];
          hist_h[idx] += hess[i];
          ++hist_n[idx];
        }
        for (size_t k = 0; k < frontier.size(); ++k) {
          double g_total = node_g[frontier[k]];
          double h_total = node_h[frontier[k]];
          double parent = leaf_score(g_total, h_total, params.lambda);
          double gl = 0.0, hl = 0.0;
          long last = -1;
          size_t base = k * nb;
          for (size_t b = 0; b < nb; ++b) {
            if (hist_n[base + b] == 0) continue;
            double hb = hist_h[base + b];
            double gb = hist_g[base + b];
            if (last >= 0 && hl >= params.min_child_weight &&
                h_total - hl >= params.min_child_weight) {
              double gain = 0.5 * (leaf_score(gl, hl, params.lambda) +
                                   leaf_score(g_total - gl, h_total - hl, params.lambda) - parent) -
                            params.min_split_gain;
              if (gain > kGainEpsilon && gain > best[k].gain) {
                best[k].gain = gain;
                best[k].feature = int(f);
                best[k].threshold = 0.5 * (bf.values[size_t(last)] + bf.values[b]);
              }
            }
            gl += gb;
            hl += hb;
            last = long(b);
          }
        }
      }

      std::vector<int> next;
      for (size_t k = 0; k < frontier.size(); ++k) {
        if (best[k].feature < 0) continue;
        int id = frontier[k];
        int left = int(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes.push_back({});
        tree.nodes[id].feature = best[k].feature;
        tree.nodes[id].threshold = best[k].threshold;
        tree.nodes[id].left = left;
        tree.nodes[id].right = left + 1;
        model.feature_gain[best[k].feature] += best[k].gain;
        node_g.resize(tree.nodes.size(), 0.0);
        node_h.resize(tree.nodes.size(), 0.0);
        next.push_back(left);
        next.push_back(left + 1);
      }
      if (next.empty()) break;
      for (size_t i = 0; i < n; ++i) {
        int node = node_of[i];
        if (node < 0) continue;
        const TreeNode &t = tree.nodes[node];
        if (t.feature < 0) {
          // Settled leaf: stop tracking the row for later levels.
          if (slot[node] >= 0) node_of[i] = -1 - node;
          continue;
        }
        int child = x[i][t.feature] < t.threshold ? t.left : t.right;
        node_of[i] = child;
        node_g[child] += grad[i];
        node_h[child] += hess[i];
      }
      frontier = std::move(next);
    }

    for (size_t id = 0; id < tree.nodes.size(); ++id) {
      TreeNode &t = tree.nodes[id];
      if (t.feature >= 0) continue;
      t.value = -params.learning_rate * node_g[id] / (node_h[id] + params.lambda);
    }
    for (size_t i = 0; i < n; ++i) margins[i] += tree.predict(x[i]);
    model.trees.push_back(std::move(tree));
    model.loss_history.push_back(log_loss(margins, y));
  }
  return model;
}

double predict(const GbdtModel &model, const std::vector<double> &x, uint64_t schema_hash) {
  if (schema_hash != model.schema_hash) {
    throw Error("feature schema " + hex64(schema_hash) + " does not match model schema " +
                hex64(model.schema_hash));
  }
  return sigmoid(model.margin(x));
}

json GbdtModel::to_json() const {
  json trees_json = json::array();
  for (const auto &t : trees) {
    json nodes = json::array();
    for (const auto &n : t.nodes) {
      if (n.feature < 0) {
        nodes.push_back({{"leaf", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right}});
      }
    }
    trees_json.push_back(std::move(nodes));
  }
  json importance = json::array();
  for (size_t f = 0; f < feature_gain.size(); ++f) {
    std::string name = f < feature_names.size() ? feature_names[f] : "f" + std::to_string(f);
    importance.push_back({{"feature", name}, {"gain", feature_gain[f]}});
  }
  return {{"learning_rate", learning_rate},
          {"base_score", base_score},
          {"schema_hash", hex64(schema_hash)},
          {"seed", seed},
          {"feature_names", feature_names},
          {"feature_importance", importance},
          {"loss_history", loss_history},
          {"trees", trees_json}};
}

GbdtModel GbdtModel::from_json(const json &j) {
  GbdtModel m;
  m.learning_rate = j.at("learning_rate").get<double>();
  m.base_score = j.at("base_score").get<double>();
  m.schema_hash = std::stoull(j.at("schema_hash").get<std::string>(), nullptr, 16);
  m.seed = j.value("seed", uint64_t{42});
  m.feature_names = j.value("feature_names", std::vector<std::string>{});
  m.loss_history = j.value("loss_history", std::vector<double>{});
  if (j.contains("feature_importance")) {
    for (const auto &e : j.at("feature_importance")) m.feature_gain.push_back(e.at("gain"));
  }
  for (const auto &tj : j.at("trees")) {
    RegressionTree t;
    for (const auto &nj : tj) {
      TreeNode n;
      if (nj.contains("leaf")) {
        n.value = nj.at("leaf").get<double>();
      } else {
        n.feature = nj.at("feature").get<int>();
        n.threshold = nj.at("threshold").get<double>();
        n.left = nj.at("left").get<int>();
        n.right = nj.at("right").get<int>();
      }
      t.nodes.push_back(n);
    }
    int size = int(t.nodes.size());
    for (const auto &n : t.nodes) {
      if (n.feature >= 0 && (n.left <= 0 || n.left >= size || n.right <= 0 || n.right >= size)) {
        throw Error("tree node refers to a missing child");
      }
    }
    m.trees.push_back(std::move(t));
  }
  return m;
}

}  // namespace listforge
