#ifndef LISTFORGE_PIPELINE_H_
#define LISTFORGE_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "listforge/eval.h"
#include "listforge/gbdt.h"
#include "listforge/ingest.h"
#include "listforge/kg.h"
#include "listforge/lexical.h"
#include "listforge/taxonomy.h"
#include "listforge/wikitext.h"

namespace listforge {

struct PipelineConfig {
  std::string corpus = "corpus";
  std::string out = "out";
  std::string root_category = kDefaultRootCategory;
  AxiomThresholds axioms;
  HypernymThresholds hypernyms;
  bool scan_hearst = false;  // add Hearst-pattern counts mined from page text
  GbdtParams gbdt;
  size_t top_k = 50;
  double classification_threshold = 0.5;
  std::string namespace_iri = kDefaultNamespace;
  uint64_t seed = 42;
  int folds = 10;
  std::string eval_protocol = "cv";  // "cv" | "holdout"
  int threads = 1;

  void validate() const;  // throws Error
  nlohmann::json to_json() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static PipelineConfig from_json(const nlohmann::json &j);
  static PipelineConfig from_json(const nlohmann::json &j, PipelineConfig base);
};

PipelineConfig load_config(const std::string &path);

// Artifact file names inside the output directory.
inline constexpr const char *kTaxonomyFile = "taxonomy.json";
inline constexpr const char *kTaxonomyStatsFile = "taxonomy_stats.json";
inline constexpr const char *kLabelsFile = "labels.jsonl";
inline constexpr const char *kModelFile = "model.json";
inline constexpr const char *kTriplesFile = "output.nt";
inline constexpr const char *kProvenanceFile = "provenance.jsonl";
inline constexpr const char *kNewEntitiesFile = "new_entities.tsv";
inline constexpr const char *kReportFile = "report.json";

struct TaxonomyBuild {
  TaxonomyGraph graph;
  std::map<WordPair, int> axiom_pairs;  // category-axiom hypernym evidence
  nlohmann::json stats;
};

// Category cleaning, list graph cleaning, linking and backbone attachment.
TaxonomyBuild build_taxonomy(const CorpusBundle &bundle, const PipelineConfig &config);

// Lexicon used by every stage: bundle synonyms and evidence, optional
// Hearst counts from page text, and category-axiom pairs.
Lexicon make_lexicon(const CorpusBundle &bundle, const PipelineConfig &config,
                     const std::map<WordPair, int> &axiom_pairs);

// Parsed list pages (see select_list_pages), ordered by title.
std::vector<ParsedListPage> parse_list_pages(const CorpusBundle &bundle, int threads = 1);

// taxonomy.json plus the axiom-pair evidence needed to rebuild the lexicon.
nlohmann::json taxonomy_artifact(const TaxonomyBuild &build);
TaxonomyBuild read_taxonomy_artifact(const std::string &path);

// Stage commands. Each reads its inputs from config.corpus / config.out and
// writes its artifacts to config.out. Missing inputs raise
// MissingInputError; a single-class training set raises SingleClassError.
nlohmann::json cmd_build_taxonomy(const PipelineConfig &config);
nlohmann::json cmd_label(const PipelineConfig &config);
nlohmann::json cmd_train(const PipelineConfig &config);
nlohmann::json cmd_extract(const PipelineConfig &config);
nlohmann::json cmd_eval(const PipelineConfig &config);

// Joins labels.jsonl records to parsed mentions and extracts features.
std::vector<Example> load_examples(const CorpusBundle &bundle, const std::vector<ParsedListPage> &pages,
                                   const TaxonomyBuild &taxonomy,
                                   const std::vector<LabelRecord> &labels,
                                   const PipelineConfig &config);

}  // namespace listforge

#endif  // LISTFORGE_PIPELINE_H_
