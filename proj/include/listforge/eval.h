#ifndef LISTFORGE_EVAL_H_
#define LISTFORGE_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "listforge/features.h"
#include "listforge/gbdt.h"
#include "listforge/labeling.h"
#include "listforge/wikitext.h"

namespace listforge {

// A labeled mention with its raw features. Only positive and negative
// mentions whose structure matches the page layout become examples.
struct Example {
  std::string page;
  MentionPosition position;
  std::string target;
  Layout layout = Layout::kUndefined;
  int label = 0;
  bool baseline = false;  // picked by the pick-first baseline
  RawFeatures features;
};

std::vector<Example> build_examples(const std::vector<ParsedListPage> &pages,
                                    const std::vector<std::vector<LabeledExample>> &labels,
                                    const Lexicon &lexicon, int threads = 1);

// Pick-first baseline: the first mention of every enumeration entry and the
// first mention of the leftmost non-empty cell of every table row.
std::set<MentionPosition> baseline_pick_first(const ParsedListPage &page);

// One encoder plus booster per layout.
struct LayoutModel {
  CategoricalEncoder encoder;
  GbdtModel model;
};

class Classifier {
 public:
  void set(Layout layout, LayoutModel model) { models_[layout] = std::move(model); }
  bool has(Layout layout) const { return models_.count(layout) > 0; }
  const LayoutModel &at(Layout layout) const;
  const std::map<Layout, LayoutModel> &models() const { return models_; }

  // Probability that the example's mention is a subject entity; 0 when no
  // model exists for its layout.
  double predict(const RawFeatures &features) const;

  nlohmann::json to_json() const;
  static Classifier from_json(const nlohmann::json &j);

 private:
  std::map<Layout, LayoutModel> models_;
};

// Trains one model per layout present in `examples`. A layout whose
// examples hold a single class is skipped with a warning; SingleClassError
// is raised only when no layout can be trained.
Classifier train_classifier(const std::vector<const Example *> &examples, const GbdtParams &params,
                            size_t top_k = 50);

struct Metrics {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;

  void add(bool predicted, bool actual);
  Metrics &operator+=(const Metrics &o);
  double precision() const;
  double recall() const;
  double f1() const;
  nlohmann::json to_json() const;
};

// Metrics keyed by "all", "enumeration" and "table".
using MetricsByLayout = std::map<std::string, Metrics>;

struct FoldResult {
  int fold = 0;
  int train_examples = 0;
  int test_examples = 0;
  MetricsByLayout model;
  MetricsByLayout baseline;
};

struct EvalReport {
  std::string protocol;  // "cv" or "holdout"
  int folds = 0;
  double threshold = 0.5;
  std::map<std::string, int> fold_of;
  std::vector<FoldResult> per_fold;
  MetricsByLayout model;     // pooled over folds
  MetricsByLayout baseline;  // pooled over folds
  nlohmann::json to_json() const;
};

// Pages ordered by a seeded hash of their title, then dealt round-robin.
// Throws Error when there are fewer pages than folds.
std::map<std::string, int> assign_folds(const std::set<std::string> &pages, int k, uint64_t seed);

using Trainer = std::function<Classifier(const std::vector<const Example *> &)>;

// Grouped k-fold cross-validation: every page's examples share one fold.
// The baseline is scored on the same folds.
EvalReport cross_validate(const std::vector<Example> &examples, int k, const Trainer &trainer,
                          double threshold = 0.5, uint64_t seed = 42, int threads = 1);

// Page-grouped 60/20/20 train/validation/test split. per_fold holds the
// validation split as fold 0 and the test split as fold 1; the pooled
// metrics are the test split's.
EvalReport holdout_evaluate(const std::vector<Example> &examples, const Trainer &trainer,
                            double threshold = 0.5, uint64_t seed = 42);

}  // namespace listforge

#endif  // LISTFORGE_EVAL_H_
