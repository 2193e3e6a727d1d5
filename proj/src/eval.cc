#include "listforge/eval.h"

#include <algorithm>

#include "listforge/util.h"

namespace listforge {

using json = nlohmann::json;

std::vector<Example> build_examples(const std::vector<ParsedListPage> &pages,
                                    const std::vector<std::vector<LabeledExample>> &labels,
                                    const Lexicon &lexicon, int threads) {
  if (pages.size() != labels.size()) throw Error("page and label counts differ");
  std::vector<std::vector<Example>> per_page(pages.size());
  parallel_for(pages.size(), threads, [&](size_t i) {
    const ParsedListPage &page = pages[i];
    if (page.layout == Layout::kUndefined) return;
    PageFeatureContext ctx(page, lexicon);
    std::set<MentionPosition> picked = baseline_pick_first(page);
    for (const auto &ex : labels[i]) {
      if (ex.label == Label::kUnlabeled) continue;
      if (!mention_matches_layout(ex.mention, page.layout)) continue;
      Example e;
      e.page = page.title;
      e.position = ex.mention.position;
      e.target = ex.mention.target;
      e.layout = page.layout;
      e.label = ex.label == Label::kPositive ? 1 : 0;
      e.baseline = picked.count(e.position) > 0;
      e.features = ctx.extract(ex.mention);
      per_page[i].push_back(std::move(e));
    }
  });
  std::vector<Example> out;
  for (auto &v : per_page) {
    for (auto &e : v) out.push_back(std::move(e));
  }
  return out;
}

std::set<MentionPosition> baseline_pick_first(const ParsedListPage &page) {
  std::set<MentionPosition> out;
  for (const auto &s : page.sections) {
    for (const auto &e : s.enumerations) {
      for (const auto &entry : e.entries) {
        if (!entry.mentions.empty()) out.insert(entry.mentions.front().position);
      }
    }
    for (const auto &t : s.tables) {
      for (const auto &row : t.rows) {
        for (const auto &cell : row) {
          if (!cell.mentions.empty()) {
            out.insert(cell.mentions.front().position);
            break;
          }
        }
      }
    }
  }
  return out;
}

const LayoutModel &Classifier::at(Layout layout) const {
  auto it = models_.find(layout);
  if (it == models_.end()) throw Error(std::string("no model for layout ") + layout_name(layout));
  return it->second;
}

double Classifier::predict(const RawFeatures &features) const {
  auto it = models_.find(features.layout);
  if (it == models_.end()) return 0.0;
  FeatureVector fv = it->second.encoder.encode(features);
  return listforge::predict(it->second.model, fv.values, fv.schema_hash);
}

json Classifier::to_json() const {
  json j = json::object();
  for (const auto &[layout, m] : models_) {
    j[layout_name(layout)] = {{"encoder", m.encoder.to_json()}, {"model", m.model.to_json()}};
  }
  return j;
}

Classifier Classifier::from_json(const json &j) {
  Classifier c;
  for (const auto &[name, body] : j.items()) {
    LayoutModel m;
    m.encoder = CategoricalEncoder::from_json(body.at("encoder"));
    m.model = GbdtModel::from_json(body.at("model"));
    Layout layout = layout_from_name(name);
    if (m.encoder.layout() != layout) throw Error("model layout mismatch for " + name);
    if (m.encoder.hash() != m.model.schema_hash) throw Error("model schema mismatch for " + name);
    c.set(layout, std::move(m));
  }
  return c;
}

Classifier train_classifier(const std::vector<const Example *> &examples, const GbdtParams &params,
                            size_t top_k) {
  std::map<Layout, std::vector<const Example *>> by_layout;
  for (const Example *e : examples) by_layout[e->layout].push_back(e);
  Classifier c;
  std::string failures;
  for (const auto &[layout, group] : by_layout) {
    std::vector<RawFeatures> raw;
    raw.reserve(group.size());
    for (const Example *e : group) raw.push_back(e->features);
    LayoutModel lm;
    lm.encoder = CategoricalEncoder(layout, raw, top_k);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    x.reserve(group.size());
    for (size_t i = 0; i < group.size(); ++i) {
      x.push_back(lm.encoder.encode(raw[i]).values);
      y.push_back(group[i]->label);
    }
    try {
      lm.model = train_gbdt(x, y, params, lm.encoder.hash(), lm.encoder.feature_names());
    } catch (const SingleClassError &e) {
      log(LogLevel::kWarn, std::string(layout_name(layout)) + " model skipped: " + e.what());
      failures += std::string(failures.empty() ? "" : "; ") + layout_name(layout) + ": " + e.what();
      continue;
    }
    c.set(layout, std::move(lm));
  }
  if (c.models().empty()) {
    throw SingleClassError(failures.empty() ? "no training examples" : failures);
  }
  return c;
}

void Metrics::add(bool predicted, bool actual) {
  if (predicted && actual) ++tp;
  else if (predicted) ++fp;
  else if (actual) ++fn;
  else ++tn;
}

Metrics &Metrics::operator+=(const Metrics &o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

double Metrics::precision() const { return tp + fp == 0 ? 0.0 : double(tp) / (tp + fp); }
double Metrics::recall() const { return tp + fn == 0 ? 0.0 : double(tp) / (tp + fn); }
double Metrics::f1() const {
  double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
}

json Metrics::to_json() const {
  return {{"precision", precision()}, {"recall", recall()}, {"f1", f1()},
          {"tp", tp},                 {"fp", fp},           {"fn", fn},
          {"tn", tn}};
}

namespace {

json metrics_json(const MetricsByLayout &m) {
  json j = json::object();
  for (const auto &[k, v] : m) j[k] = v.to_json();
  return j;
}

void score(const Example &e, bool predicted, MetricsByLayout *m) {
  (*m)["all"].add(predicted, e.label == 1);
  (*m)[layout_name(e.layout)].add(predicted, e.label == 1);
}

FoldResult score_split(int fold, const Classifier &c, size_t train_size,
                       const std::vector<const Example *> &test, double threshold) {
  FoldResult r;
  r.fold = fold;
  r.train_examples = int(train_size);
  r.test_examples = int(test.size());
  for (const Example *e : test) {
    score(*e, c.predict(e->features) >= threshold, &r.model);
    score(*e, e->baseline, &r.baseline);
  }
  return r;
}

}  // namespace

json EvalReport::to_json() const {
  json folds_json = json::array();
  for (const auto &f : per_fold) {
    folds_json.push_back({{"fold", f.fold},
                          {"train_examples", f.train_examples},
                          {"test_examples", f.test_examples},
                          {"model", metrics_json(f.model)},
                          {"baseline", metrics_json(f.baseline)}});
  }
  return {{"protocol", protocol},
          {"folds", folds},
          {"threshold", threshold},
          {"fold_of", fold_of},
          {"per_fold", folds_json},
          {"model", metrics_json(model)},
          {"baseline", metrics_json(baseline)}};
}

std::map<std::string, int> assign_folds(const std::set<std::string> &pages, int k, uint64_t seed) {
  if (k < 1) throw Error("fold count must be >= 1");
  if (pages.size() < size_t(k)) {
    throw Error("cannot split " + std::to_string(pages.size()) + " list pages into " +
                std::to_string(k) + " folds");
  }
  std::string salt = std::to_string(seed) + ":";
  std::vector<std::pair<uint64_t, std::string>> order;
  for (const auto &p : pages) order.push_back({fnv1a(salt + p), p});
  std::sort(order.begin(), order.end());
  std::map<std::string, int> out;
  for (size_t i = 0; i < order.size(); ++i) out[order[i].second] = int(i % size_t(k));
  return out;
}

EvalReport cross_validate(const std::vector<Example> &examples, int k, const Trainer &trainer,
                          double threshold, uint64_t seed, int threads) {
  std::set<std::string> pages;
  for (const auto &e : examples) pages.insert(e.page);
  EvalReport report;
  report.protocol = "cv";
  report.folds = k;
  report.threshold = threshold;
  report.fold_of = assign_folds(pages, k, seed);
  report.per_fold.resize(size_t(k));
  parallel_for(size_t(k), threads, [&](size_t f) {
    std::vector<const Example *> train, test;
    for (const auto &e : examples) {
      (report.fold_of.at(e.page) == int(f) ? test : train).push_back(&e);
    }
    report.per_fold[f] = score_split(int(f), trainer(train), train.size(), test, threshold);
  });
  for (const auto &f : report.per_fold) {
    for (const auto &[key, m] : f.model) report.model[key] += m;
    for (const auto &[key, m] : f.baseline) report.baseline[key] += m;
  }
  return report;
}

EvalReport holdout_evaluate(const std::vector<Example> &examples, const Trainer &trainer,
                            double threshold, uint64_t seed) {
  std::set<std::string> pages;
  for (const auto &e : examples) pages.insert(e.page);
  if (pages.size() < 5) throw Error("holdout split needs at least 5 list pages");
  // Five round-robin groups give the 60/20/20 proportions.
  std::map<std::string, int> group = assign_folds(pages, 5, seed);
  EvalReport report;
  report.protocol = "holdout";
  report.folds = 2;
  report.threshold = threshold;
  std::vector<const Example *> train, val, test;
  for (const auto &e : examples) {
    int g = group.at(e.page);
    report.fold_of[e.page] = g < 3 ? -1 : g - 3;
    (g < 3 ? train : g == 3 ? val : test).push_back(&e);
  }
  Classifier c = trainer(train);
  report.per_fold.push_back(score_split(0, c, train.size(), val, threshold));
  report.per_fold.push_back(score_split(1, c, train.size(), test, threshold));
  report.model = report.per_fold[1].model;
  report.baseline = report.per_fold[1].baseline;
  return report;
}

}  // namespace listforge
