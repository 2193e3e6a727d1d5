#include "listforge/pipeline.h"

#include <filesystem>
#include <fstream>

#include "listforge/features.h"
#include "listforge/labeling.h"
#include "listforge/util.h"

namespace listforge {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &where) {
  if (!j.is_object()) throw Error(where + " must be a JSON object");
  for (const auto &[key, value] : j.items()) {
    if (!known.count(key)) throw Error("unknown config key \"" + where + "." + key + "\"");
  }
}

json graph_size(const TaxonomyGraph &g) {
  return {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
}

fs::path artifact(const PipelineConfig &config, const char *name) {
  return fs::path(config.out) / name;
}

fs::path require(const PipelineConfig &config, const char *name) {
  fs::path p = artifact(config, name);
  if (!fs::exists(p)) throw MissingInputError("missing input artifact: " + p.string());
  return p;
}

json read_json(const fs::path &p) {
  std::ifstream in(p);
  if (!in) throw MissingInputError("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw Error(p.string() + ": " + e.what());
  }
}

void write_json(const fs::path &p, const json &j) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

void prepare_out(const PipelineConfig &config) { fs::create_directories(config.out); }

Classifier read_model(const fs::path &p) {
  json j = read_json(p);
  try {
    return Classifier::from_json(j.at("classifier"));
  } catch (const json::exception &e) {
    throw Error(p.string() + ": " + e.what());
  }
}

}  // namespace

void PipelineConfig::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(axioms.type_min_confidence)) throw Error("axioms.type_min_confidence must be in [0,1]");
  if (!unit(axioms.relation_min_confidence)) {
    throw Error("axioms.relation_min_confidence must be in [0,1]");
  }
  if (axioms.min_support < 1) throw Error("axioms.min_support must be >= 1");
  if (hypernyms.hearst_min_count < 1) throw Error("hypernyms.hearst_min_count must be >= 1");
  if (!unit(hypernyms.webisalod_min_confidence)) {
    throw Error("hypernyms.webisalod_min_confidence must be in [0,1]");
  }
  if (hypernyms.axiom_min_count < 1) throw Error("hypernyms.axiom_min_count must be >= 1");
  gbdt.validate();
  if (top_k < 1) throw Error("top_k must be >= 1");
  if (!(classification_threshold > 0.0 && classification_threshold < 1.0)) {
    throw Error("classification_threshold must be in (0,1)");
  }
  if (namespace_iri.find("://") == std::string::npos) {
    throw Error("namespace must be an absolute IRI");
  }
  if (folds < 2) throw Error("folds must be >= 2");
  if (eval_protocol != "cv" && eval_protocol != "holdout") {
    throw Error("eval_protocol must be \"cv\" or \"holdout\"");
  }
  if (threads < 1) throw Error("threads must be >= 1");
}

json PipelineConfig::to_json() const {
  return {{"corpus", corpus},
          {"out", out},
          {"root_category", root_category},
          {"axioms",
           {{"type_min_confidence", axioms.type_min_confidence},
            {"relation_min_confidence", axioms.relation_min_confidence},
            {"min_support", axioms.min_support}}},
          {"hypernyms",
           {{"hearst_min_count", hypernyms.hearst_min_count},
            {"webisalod_min_confidence", hypernyms.webisalod_min_confidence},
            {"axiom_min_count", hypernyms.axiom_min_count}}},
          {"scan_hearst", scan_hearst},
          {"gbdt", gbdt.to_json()},
          {"top_k", top_k},
          {"classification_threshold", classification_threshold},
          {"namespace", namespace_iri},
          {"seed", seed},
          {"folds", folds},
          {"eval_protocol", eval_protocol},
          {"threads", threads}};
}

PipelineConfig PipelineConfig::from_json(const json &j) { return from_json(j, PipelineConfig()); }

PipelineConfig PipelineConfig::from_json(const json &j, PipelineConfig c) {
  reject_unknown(j,
                 {"corpus", "out", "root_category", "axioms", "hypernyms", "scan_hearst", "gbdt",
                  "top_k", "classification_threshold", "namespace", "seed", "folds",
                  "eval_protocol", "threads"},
                 "config");
  try {
    c.corpus = j.value("corpus", c.corpus);
    c.out = j.value("out", c.out);
    c.root_category = j.value("root_category", c.root_category);
    if (j.contains("axioms")) {
      const json &a = j.at("axioms");
      reject_unknown(a, {"type_min_confidence", "relation_min_confidence", "min_support"}, "axioms");
      c.axioms.type_min_confidence = a.value("type_min_confidence", c.axioms.type_min_confidence);
      c.axioms.relation_min_confidence =
          a.value("relation_min_confidence", c.axioms.relation_min_confidence);
      c.axioms.min_support = a.value("min_support", c.axioms.min_support);
    }
    if (j.contains("hypernyms")) {
      const json &h = j.at("hypernyms");
      reject_unknown(h, {"hearst_min_count", "webisalod_min_confidence", "axiom_min_count"},
                     "hypernyms");
      c.hypernyms.hearst_min_count = h.value("hearst_min_count", c.hypernyms.hearst_min_count);
      c.hypernyms.webisalod_min_confidence =
          h.value("webisalod_min_confidence", c.hypernyms.webisalod_min_confidence);
      c.hypernyms.axiom_min_count = h.value("axiom_min_count", c.hypernyms.axiom_min_count);
    }
    c.scan_hearst = j.value("scan_hearst", c.scan_hearst);
    if (j.contains("gbdt")) {
      reject_unknown(j.at("gbdt"),
                     {"n_trees", "max_depth", "learning_rate", "min_child_weight", "lambda",
                      "min_split_gain", "seed"},
                     "gbdt");
      json merged = c.gbdt.to_json();
      merged.update(j.at("gbdt"));
      c.gbdt = GbdtParams::from_json(merged);
    }
    c.top_k = j.value("top_k", c.top_k);
    c.classification_threshold = j.value("classification_threshold", c.classification_threshold);
    c.namespace_iri = j.value("namespace", c.namespace_iri);
    c.seed = j.value("seed", c.seed);
    c.folds = j.value("folds", c.folds);
    c.eval_protocol = j.value("eval_protocol", c.eval_protocol);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception &e) {
    throw Error(std::string("invalid config: ") + e.what());
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw Error(path + ": " + e.what());
  }
  return PipelineConfig::from_json(j);
}

Lexicon make_lexicon(const CorpusBundle &bundle, const PipelineConfig &config,
                     const std::map<WordPair, int> &axiom_pairs) {
  Lexicon lex;
  lex.synonyms = bundle.synonyms();
  lex.evidence = bundle.evidence();
  lex.thresholds = config.hypernyms;
  if (config.scan_hearst) {
    std::vector<std::string> texts;
    for (const auto &[title, text] : bundle.pages()) texts.push_back(plain_text(strip_markup(text)));
    for (const auto &[pair, n] : scan_hearst_patterns(texts)) lex.evidence.hearst[pair] += n;
  }
  for (const auto &[pair, n] : axiom_pairs) lex.evidence.category_axiom_pairs[pair] += n;
  return lex;
}

std::vector<ParsedListPage> parse_list_pages(const CorpusBundle &bundle, int threads) {
  std::vector<std::string> titles;
  for (const auto &[title, text] : bundle.pages()) {
    if (is_list_page_title(title)) titles.push_back(title);
  }
  LinkResolver resolver(bundle);
  std::vector<ParsedListPage> parsed(titles.size());
  parallel_for(titles.size(), threads, [&](size_t i) {
    parsed[i] = parse_list_page(titles[i], bundle.pages().at(titles[i]), resolver);
  });
  std::vector<ParsedListPage> out;
  for (auto &p : parsed) {
    if (p.layout != Layout::kUndefined) out.push_back(std::move(p));
  }
  return out;
}

TaxonomyBuild build_taxonomy(const CorpusBundle &bundle, const PipelineConfig &config) {
  TaxonomyBuild result;
  json stats;
  const std::string root_id = category_node(config.root_category);

  CategoryGraph filtered = filter_category_graph(bundle, config.root_category);
  TaxonomyGraph cg = make_category_graph(filtered, config.root_category);
  result.axiom_pairs = build_axiom_evidence(cg, bundle, config.axioms, config.threads);
  Lexicon lexicon = make_lexicon(bundle, config, result.axiom_pairs);

  json cat_stats;
  cat_stats["input"] = graph_size(cg);
  cg = clean_nodes(cg, {root_id});
  cat_stats["clean_nodes"] = graph_size(cg);
  cg = clean_edges(cg, lexicon, {root_id});
  cat_stats["clean_edges"] = graph_size(cg);
  cg = resolve_cycles(cg);
  cat_stats["resolve_cycles"] = graph_size(cg);
  stats["category_graph"] = cat_stats;

  std::vector<ParsedListPage> pages = parse_list_pages(bundle, config.threads);
  std::map<std::string, std::vector<std::string>> page_categories;
  std::set<std::string> page_ids;
  for (const auto &p : pages) {
    page_categories[p.title] = p.categories;
    page_ids.insert(page_node(p.title));
  }
  TaxonomyGraph lg = make_list_graph(bundle, page_categories);
  json list_stats;
  list_stats["list_pages"] = pages.size();
  list_stats["input"] = graph_size(lg);
  lg = clean_nodes(lg, page_ids);
  list_stats["clean_nodes"] = graph_size(lg);
  lg = clean_edges(lg, lexicon);
  list_stats["clean_edges"] = graph_size(lg);
  lg = resolve_cycles(lg);
  list_stats["resolve_cycles"] = graph_size(lg);
  stats["list_graph"] = list_stats;

  LinkStats link_stats;
  TaxonomyGraph merged = link_lists_to_categories(
      cg, lg, category_list_candidates(bundle, page_categories), lexicon, &link_stats);
  merged = resolve_cycles(merged);
  stats["linking"] = {{"equivalence_links", link_stats.equivalence_links},
                      {"hypernym_links", link_stats.hypernym_links},
                      {"nodes", merged.node_count()},
                      {"edges", merged.edge_count()}};

  merged.node_axioms = induce_axioms(merged, bundle, config.axioms, config.threads);
  merged.axiom_thresholds = config.axioms;
  BackboneStats bb;
  TaxonomyGraph graph = attach_backbone(merged, bundle, &bb);
  std::set<std::string> roots;
  if (graph.has_node(root_id)) roots.insert(root_id);
  if (!bundle.ontology().root().empty()) roots.insert(type_node(bundle.ontology().root()));
  graph.set_roots(roots);
  graph.compute_depths();
  int type_axioms = 0, relation_axioms = 0;
  for (const auto &[id, a] : graph.node_axioms) {
    type_axioms += int(a.type_axioms.size());
    relation_axioms += int(a.relation_axioms.size());
  }
  stats["backbone"] = {{"backbone_edges", bb.backbone_edges},
                       {"skipped_edges", bb.skipped_edges},
                       {"coverage", bb.coverage()},
                       {"type_axioms", type_axioms},
                       {"relation_axioms", relation_axioms},
                       {"nodes", graph.node_count()},
                       {"edges", graph.edge_count()}};
  stats["acyclic"] = graph.is_acyclic();
  result.graph = std::move(graph);
  result.stats = std::move(stats);
  return result;
}

json taxonomy_artifact(const TaxonomyBuild &build) {
  json j = taxonomy_to_json(build.graph);
  json pairs = json::array();
  for (const auto &[pair, n] : build.axiom_pairs) pairs.push_back({pair.first, pair.second, n});
  j["axiom_pairs"] = pairs;
  return j;
}

TaxonomyBuild read_taxonomy_artifact(const std::string &path) {
  json j = read_json(path);
  TaxonomyBuild b;
  try {
    b.graph = taxonomy_from_json(j);
    for (const auto &e : j.value("axiom_pairs", json::array())) {
      b.axiom_pairs[{e.at(0).get<std::string>(), e.at(1).get<std::string>()}] = e.at(2).get<int>();
    }
  } catch (const json::exception &e) {
    throw Error(path + ": " + e.what());
  }
  return b;
}

json cmd_build_taxonomy(const PipelineConfig &config) {
  CorpusBundle bundle = load_bundle(config.corpus);
  TaxonomyBuild build = build_taxonomy(bundle, config);
  prepare_out(config);
  write_json(artifact(config, kTaxonomyFile), taxonomy_artifact(build));
  write_json(artifact(config, kTaxonomyStatsFile), build.stats);
  return build.stats;
}

json cmd_label(const PipelineConfig &config) {
  CorpusBundle bundle = load_bundle(config.corpus);
  TaxonomyBuild tax = read_taxonomy_artifact(require(config, kTaxonomyFile).string());
  std::vector<ParsedListPage> pages = parse_list_pages(bundle, config.threads);
  std::vector<std::vector<LabeledExample>> per_page(pages.size());
  parallel_for(pages.size(), config.threads,
               [&](size_t i) { per_page[i] = label_page(pages[i], tax.graph, bundle); });
  std::vector<LabeledExample> all;
  std::map<std::string, int> by_source;
  int pos = 0, neg = 0, unl = 0;
  for (auto &v : per_page) {
    for (auto &ex : v) {
      if (ex.label == Label::kPositive) ++pos;
      else if (ex.label == Label::kNegative) ++neg;
      else ++unl;
      ++by_source[label_source_name(ex.source)];
      all.push_back(std::move(ex));
    }
  }
  prepare_out(config);
  write_labels(artifact(config, kLabelsFile).string(), all);
  return {{"pages", pages.size()},
          {"mentions", all.size()},
          {"positive", pos},
          {"negative", neg},
          {"unlabeled", unl},
          {"by_source", by_source}};
}

std::vector<Example> load_examples(const CorpusBundle &bundle, const std::vector<ParsedListPage> &pages,
                                   const TaxonomyBuild &taxonomy,
                                   const std::vector<LabelRecord> &labels,
                                   const PipelineConfig &config) {
  std::map<std::string, size_t> page_index;
  for (size_t i = 0; i < pages.size(); ++i) page_index[pages[i].title] = i;
  std::vector<std::vector<LabeledExample>> per_page(pages.size());
  for (const auto &r : labels) {
    auto it = page_index.find(r.page);
    const EntityMention *m = it == page_index.end() ? nullptr : pages[it->second].at(r.position);
    if (m == nullptr || m->target != r.target) {
      throw Error("labels do not match the corpus (page \"" + r.page +
                  "\"); rerun the label stage");
    }
    LabeledExample ex;
    ex.page = r.page;
    ex.mention = *m;
    ex.label = r.label;
    ex.source = r.source;
    per_page[it->second].push_back(std::move(ex));
  }
  Lexicon lexicon = make_lexicon(bundle, config, taxonomy.axiom_pairs);
  return build_examples(pages, per_page, lexicon, config.threads);
}

json cmd_train(const PipelineConfig &config) {
  CorpusBundle bundle = load_bundle(config.corpus);
  TaxonomyBuild tax = read_taxonomy_artifact(require(config, kTaxonomyFile).string());
  std::vector<LabelRecord> labels = read_labels(require(config, kLabelsFile).string());
  std::vector<ParsedListPage> pages = parse_list_pages(bundle, config.threads);
  std::vector<Example> examples = load_examples(bundle, pages, tax, labels, config);
  std::vector<const Example *> refs;
  for (const auto &e : examples) refs.push_back(&e);
  GbdtParams params = config.gbdt;
  Classifier c = train_classifier(refs, params, config.top_k);
  prepare_out(config);
  write_json(artifact(config, kModelFile), {{"params", params.to_json()},
                                            {"top_k", config.top_k},
                                            {"classifier", c.to_json()}});
  json summary = {{"examples", examples.size()}};
  for (const auto &[layout, m] : c.models()) {
    summary["models"][layout_name(layout)] = {{"trees", m.model.trees.size()},
                                              {"features", m.encoder.feature_names().size()},
                                              {"final_loss", m.model.loss_history.back()}};
  }
  return summary;
}

json cmd_extract(const PipelineConfig &config) {
  CorpusBundle bundle = load_bundle(config.corpus);
  TaxonomyBuild tax = read_taxonomy_artifact(require(config, kTaxonomyFile).string());
  Classifier classifier = read_model(require(config, kModelFile));
  std::vector<ParsedListPage> pages = parse_list_pages(bundle, config.threads);
  Lexicon lexicon = make_lexicon(bundle, config, tax.axiom_pairs);

  std::vector<PageSubjects> subjects(pages.size());
  parallel_for(pages.size(), config.threads, [&](size_t i) {
    const ParsedListPage &page = pages[i];
    subjects[i].page = page.title;
    PageFeatureContext ctx(page, lexicon);
    std::set<std::string> seen;
    for (const EntityMention *m : page.mentions()) {
      if (!mention_matches_layout(*m, page.layout)) continue;
      if (classifier.predict(ctx.extract(*m)) < config.classification_threshold) continue;
      if (seen.insert(m->target).second) subjects[i].subjects.push_back(*m);
    }
  });

  std::vector<Statement> statements =
      generate_statements(subjects, tax.graph, bundle, config.namespace_iri, config.threads);
  prepare_out(config);
  size_t lines = emit_ntriples(statements, artifact(config, kTriplesFile).string());
  write_provenance(statements, artifact(config, kProvenanceFile).string());
  ExtractionSummary sum = summarize_extraction(statements, subjects, bundle, config.namespace_iri);
  {
    std::ofstream out(artifact(config, kNewEntitiesFile), std::ios::binary);
    if (!out) throw Error("cannot write " + artifact(config, kNewEntitiesFile).string());
    out << "type\tnew_entities\n";
    for (const auto &[type, n] : sum.new_entities_by_type) out << type << '\t' << n << '\n';
  }
  size_t subject_count = 0;
  for (const auto &s : subjects) subject_count += s.subjects.size();
  return {{"subjects", subject_count},
          {"statements", statements.size()},
          {"triples", lines},
          {"type_statements", sum.type_statements},
          {"relation_statements", sum.relation_statements},
          {"new_entities", sum.new_entities},
          {"new_entities_by_type", sum.new_entities_by_type}};
}

json cmd_eval(const PipelineConfig &config) {
  CorpusBundle bundle = load_bundle(config.corpus);
  TaxonomyBuild tax = read_taxonomy_artifact(require(config, kTaxonomyFile).string());
  std::vector<LabelRecord> labels = read_labels(require(config, kLabelsFile).string());
  std::vector<ParsedListPage> pages = parse_list_pages(bundle, config.threads);
  std::vector<Example> examples = load_examples(bundle, pages, tax, labels, config);
  GbdtParams params = config.gbdt;
  size_t top_k = config.top_k;
  Trainer trainer = [params, top_k](const std::vector<const Example *> &train) {
    return train_classifier(train, params, top_k);
  };
  EvalReport report =
      config.eval_protocol == "holdout"
          ? holdout_evaluate(examples, trainer, config.classification_threshold, config.seed)
          : cross_validate(examples, config.folds, trainer, config.classification_threshold,
                           config.seed, config.threads);
  prepare_out(config);
  json j = report.to_json();
  write_json(artifact(config, kReportFile), j);
  return {{"protocol", report.protocol}, {"model", j["model"]}, {"baseline", j["baseline"]}};
}

}  // namespace listforge
