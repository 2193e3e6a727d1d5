#include "listforge/labeling.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "json.hpp"
#include "listforge/util.h"

namespace listforge {

using json = nlohmann::json;

const char *label_name(Label label) {
  switch (label) {
    case Label::kPositive: return "pos";
    case Label::kNegative: return "neg";
    default: return "unl";
  }
}

const char *label_source_name(LabelSource s) {
  switch (s) {
    case LabelSource::kEq3: return "eq3";
    case LabelSource::kEq4: return "eq4";
    case LabelSource::kRowRule: return "row_rule";
    default: return "none";
  }
}

Label label_from_name(const std::string &name) {
  if (name == "pos") return Label::kPositive;
  if (name == "neg") return Label::kNegative;
  if (name == "unl") return Label::kUnlabeled;
  throw Error("unknown label \"" + name + "\"");
}

LabelSource label_source_from_name(const std::string &name) {
  if (name == "eq3") return LabelSource::kEq3;
  if (name == "eq4") return LabelSource::kEq4;
  if (name == "row_rule") return LabelSource::kRowRule;
  if (name == "none") return LabelSource::kNone;
  throw Error("unknown label source \"" + name + "\"");
}

std::set<std::string> related(const std::string &list_node, const TaxonomyGraph &graph) {
  std::set<std::string> result;
  if (!graph.has_node(list_node)) return result;
  std::set<std::string> visited{list_node};
  std::set<std::string> frontier{list_node};
  while (!frontier.empty()) {
    std::set<std::string> next;
    for (const auto &n : frontier) {
      for (const auto &p : graph.parents(n)) {
        if (visited.insert(p).second) next.insert(p);
      }
    }
    std::set<std::string> found;
    for (const auto &n : next) {
      if (graph.kind(n) == NodeKind::kCategory) found.insert(n);
    }
    if (!found.empty()) {
      for (const auto &c : found) {
        result.insert(c);
        for (const auto &d : graph.descendants(c)) {
          if (graph.kind(d) == NodeKind::kCategory) result.insert(d);
        }
      }
      return result;
    }
    frontier = std::move(next);
  }
  return result;
}

std::set<std::string> types_of(const std::string &list_node, const TaxonomyGraph &graph,
                               const std::string &ontology_root) {
  std::set<std::string> out;
  if (!graph.has_node(list_node)) return out;
  for (const auto &a : graph.ancestors(list_node)) {
    if (graph.kind(a) != NodeKind::kOntologyType) continue;
    std::string name = node_name(a);
    if (name != ontology_root) out.insert(name);
  }
  return out;
}

namespace {

// Key of the entry or row a mention belongs to.
std::tuple<int, int, int, bool> item_key(const MentionPosition &p) {
  return {p.section, p.container, p.item, p.in_table()};
}

}  // namespace

std::vector<LabeledExample> label_page(const ParsedListPage &page, const TaxonomyGraph &graph,
                                       const CorpusBundle &bundle) {
  const std::string node = page_node(page.title);
  std::set<std::string> members;
  for (const auto &c : related(node, graph)) {
    const CategoryRecord *rec = bundle.find_category(node_name(c));
    if (rec) members.insert(rec->members.begin(), rec->members.end());
  }
  std::set<std::string> list_types = types_of(node, graph, bundle.ontology().root());
  const Ontology &onto = bundle.ontology();

  std::vector<LabeledExample> out;
  for (const EntityMention *m : page.mentions()) {
    LabeledExample ex;
    ex.page = page.title;
    ex.mention = *m;
    bool positive = m->exists_in_kb && members.count(m->target) > 0;
    bool negative = false;
    if (m->exists_in_kb && !list_types.empty()) {
      for (const auto &te : bundle.entity_type_closure(m->target)) {
        for (const auto &tl : list_types) {
          if (onto.is_disjoint(te, tl)) {
            negative = true;
            break;
          }
        }
        if (negative) break;
      }
    }
    if (positive && !negative) {
      ex.label = Label::kPositive;
      ex.source = LabelSource::kEq3;
    } else if (negative && !positive) {
      ex.label = Label::kNegative;
      ex.source = LabelSource::kEq4;
    }
    out.push_back(std::move(ex));
  }

  std::map<std::tuple<int, int, int, bool>, int> positives;
  for (const auto &ex : out) {
    if (ex.label == Label::kPositive) ++positives[item_key(ex.mention.position)];
  }
  for (auto &ex : out) {
    auto it = positives.find(item_key(ex.mention.position));
    if (it == positives.end()) continue;
    if (ex.label == Label::kUnlabeled) {
      ex.label = Label::kNegative;
      ex.source = LabelSource::kRowRule;
    }
  }
  for (const auto &[key, n] : positives) {
    if (n > 1) {
      log(LogLevel::kWarn, page.title + ": " + std::to_string(n) +
                                " positives in one " + (std::get<3>(key) ? "row" : "entry"));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const LabeledExample &a, const LabeledExample &b) {
    return a.mention.position < b.mention.position;
  });
  return out;
}

void write_labels(const std::string &path, const std::vector<LabeledExample> &examples) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto &ex : examples) {
    const auto &p = ex.mention.position;
    json obj;
    obj["page"] = ex.page;
    obj["position"] = {p.section, p.container, p.item, p.cell, p.mention};
    obj["target"] = ex.mention.target;
    obj["label"] = label_name(ex.label);
    obj["source"] = label_source_name(ex.source);
    out << obj.dump() << '\n';
  }
}

std::vector<LabelRecord> read_labels(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::vector<LabelRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      json obj = json::parse(line);
      LabelRecord r;
      r.page = obj.at("page").get<std::string>();
      auto pos = obj.at("position").get<std::vector<int>>();
      if (pos.size() != 5) throw Error("position must have 5 entries");
      r.position = {pos[0], pos[1], pos[2], pos[3], pos[4]};
      r.target = obj.at("target").get<std::string>();
      r.label = label_from_name(obj.at("label").get<std::string>());
      r.source = label_source_from_name(obj.at("source").get<std::string>());
      out.push_back(std::move(r));
    } catch (const std::exception &e) {
      throw ParseError(path, lineno, e.what());
    }
  }
  return out;
}

}  // namespace listforge
