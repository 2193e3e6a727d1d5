#ifndef LISTFORGE_GBDT_H_
#define LISTFORGE_GBDT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "listforge/util.h"

namespace listforge {

// Raised when the training labels contain a single class.
class SingleClassError : public Error {
 public:
  using Error::Error;
};

struct GbdtParams {
  int n_trees = 100;
  int max_depth = 4;
  double learning_rate = 0.1;
  double min_child_weight = 1.0;  // minimum hessian sum per child
  double lambda = 1.0;            // L2 penalty on leaf values
  double min_split_gain = 0.0;
  uint64_t seed = 42;

  void validate() const;  // throws Error
  nlohmann::json to_json() const;
  static GbdtParams from_json(const nlohmann::json &j);
};

// Internal nodes split on x[feature] < threshold (left) versus >= (right).
struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf weight, already scaled by the learning rate
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  double predict(const std::vector<double> &x) const;
};

struct GbdtModel {
  std::vector<RegressionTree> trees;
  double learning_rate = 0.1;
  double base_score = 0.0;  // initial margin
  uint64_t schema_hash = 0;
  uint64_t seed = 42;
  std::vector<std::string> feature_names;
  std::vector<double> feature_gain;  // total split gain per feature
  std::vector<double> loss_history;  // mean training log loss, before and after each round

  double margin(const std::vector<double> &x) const;
  nlohmann::json to_json() const;
  static GbdtModel from_json(const nlohmann::json &j);
};

// Gradient boosting on logistic loss with exact greedy, level-wise tree
// growth. Among equal-gain splits the lowest feature index wins, then the
// lowest threshold. Labels are 0/1; throws SingleClassError if only one
// class is present.
GbdtModel train_gbdt(const std::vector<std::vector<double>> &x, const std::vector<int> &y,
                     const GbdtParams &params = {}, uint64_t schema_hash = 0,
                     const std::vector<std::string> &feature_names = {});

// Probability of the positive class, strictly inside (0, 1). Throws Error
// when `schema_hash` differs from the model's.
double predict(const GbdtModel &model, const std::vector<double> &x, uint64_t schema_hash);

double sigmoid(double margin);
double log_loss(const std::vector<double> &margins, const std::vector<int> &y);

}  // namespace listforge

#endif  // LISTFORGE_GBDT_H_
