#ifndef LISTFORGE_FIXTURE_H_
#define LISTFORGE_FIXTURE_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "listforge/ingest.h"

namespace listforge {

// Parameters of the synthetic corpus generator.
struct FixtureOptions {
  int list_pages = 200;
  double noise_rate = 0.15;   // share of entries/rows whose subject is not the first mention
  double table_share = 0.4;   // share of list pages laid out as tables
  int members_per_category = 30;
  uint64_t seed = 42;
};

// Planted ground truth: the linked subject entity of every entry or row,
// keyed by list page title.
using FixtureTruth = std::map<std::string, std::set<std::string>>;

// Deterministic for a given options value on every platform.
BundleData generate_fixture(const FixtureOptions &options, FixtureTruth *truth = nullptr);

// Writes the bundle files plus ground_truth.jsonl.
void write_fixture(const std::string &dir, const FixtureOptions &options);

}  // namespace listforge

#endif  // LISTFORGE_FIXTURE_H_
