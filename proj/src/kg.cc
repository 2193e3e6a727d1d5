#include "listforge/kg.h"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "listforge/labeling.h"
#include "listforge/util.h"

namespace listforge {

using json = nlohmann::json;

namespace {

const char *kTypeRule = "backbone-type";
const char *kRelationRule = "node-axiom";

bool is_absolute_iri(const std::string &s) { return s.find("://") != std::string::npos; }

void check_iri(const std::string &iri) {
  if (iri.empty()) throw Error("empty IRI");
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      throw Error("IRI contains a character not allowed in N-Triples: " + iri);
    }
  }
}

using Key = std::tuple<std::string, std::string, std::string>;

}  // namespace

std::string normalize_namespace(const std::string &ns) {
  if (ns.empty()) throw Error("namespace must not be empty");
  char last = ns.back();
  return last == '/' || last == '#' ? ns : ns + "/";
}

std::string mint_entity(const EntityMention &mention, const std::string &ns) {
  if (mention.exists_in_kb) {
    throw PreconditionError("cannot mint an IRI for blue link \"" + mention.link_title + "\"");
  }
  std::string title = trim(mention.link_title.empty() ? mention.surface : mention.link_title);
  if (title.empty()) throw Error("cannot mint an IRI for an empty link title");
  return normalize_namespace(ns) + percent_encode(title);
}

std::string entity_iri(const std::string &target, const std::string &ns) {
  if (starts_with(target, kRedLinkPrefix)) {
    return normalize_namespace(ns) + target.substr(std::string(kRedLinkPrefix).size());
  }
  return normalize_namespace(ns) + percent_encode(target);
}

std::string ontology_iri(const std::string &name) {
  if (is_absolute_iri(name)) return name;
  return std::string(kOntologyNamespace) + percent_encode(name);
}

std::vector<Statement> generate_statements(const std::vector<PageSubjects> &pages,
                                           const TaxonomyGraph &graph, const CorpusBundle &bundle,
                                           const std::string &ns, int threads) {
  const std::string root = bundle.ontology().root();
  std::vector<std::map<Key, std::set<Provenance>>> per_page(pages.size());
  parallel_for(pages.size(), threads, [&](size_t i) {
    const PageSubjects &ps = pages[i];
    const std::string node = page_node(ps.page);
    if (!graph.has_node(node)) return;
    std::set<std::string> types = types_of(node, graph, root);
    std::set<std::pair<std::string, std::string>> relations;
    auto collect = [&](const std::string &n) {
      auto it = graph.node_axioms.find(n);
      if (it == graph.node_axioms.end()) return;
      for (const auto &r : it->second.relation_axioms) relations.insert({r.predicate, r.object});
    };
    collect(node);
    for (const auto &a : graph.ancestors(node)) collect(a);

    auto &out = per_page[i];
    for (const auto &m : ps.subjects) {
      std::string subject = entity_iri(m.target, ns);
      std::set<std::string> known_types;
      if (m.exists_in_kb) known_types = bundle.entity_type_closure(m.target);
      for (const auto &t : types) {
        if (known_types.count(t)) continue;
        out[{subject, kRdfType, ontology_iri(t)}].insert({ps.page, kTypeRule});
      }
      for (const auto &[p, o] : relations) {
        if (m.exists_in_kb && bundle.has_fact(m.target, p, o)) continue;
        out[{subject, ontology_iri(p), entity_iri(o, ns)}].insert({ps.page, kRelationRule});
      }
    }
  });

  std::map<Key, std::set<Provenance>> merged;
  for (auto &m : per_page) {
    for (auto &[k, prov] : m) merged[k].insert(prov.begin(), prov.end());
  }
  std::vector<Statement> out;
  out.reserve(merged.size());
  for (auto &[k, prov] : merged) {
    out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::move(prov)});
  }
  return out;
}

std::string ntriples_line(const Statement &s) {
  check_iri(s.subject);
  check_iri(s.predicate);
  check_iri(s.object);
  return "<" + s.subject + "> <" + s.predicate + "> <" + s.object + "> .\n";
}

size_t emit_ntriples(const std::vector<Statement> &statements, const std::string &path) {
  std::vector<std::string> lines;
  lines.reserve(statements.size());
  for (const auto &s : statements) lines.push_back(ntriples_line(s));
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const auto &l : lines) out << l;
  if (!out) throw Error("write failed: " + path);
  return lines.size();
}

void write_provenance(const std::vector<Statement> &statements, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const auto &s : statements) {
    json sources = json::array();
    for (const auto &p : s.provenance) sources.push_back({{"page", p.page}, {"rule", p.rule}});
    json obj = {{"subject", s.subject},
                {"predicate", s.predicate},
                {"object", s.object},
                {"sources", sources}};
    out << obj.dump() << '\n';
  }
}

ExtractionSummary summarize_extraction(const std::vector<Statement> &statements,
                                       const std::vector<PageSubjects> &pages,
                                       const CorpusBundle &bundle, const std::string &ns) {
  ExtractionSummary sum;
  const Ontology &onto = bundle.ontology();
  std::map<std::string, std::string> type_of_iri;
  for (const auto &t : bundle.ontology_record().types) type_of_iri[ontology_iri(t)] = t;

  std::map<std::string, std::set<std::string>> types_by_subject;
  for (const auto &s : statements) {
    if (s.is_type()) {
      ++sum.type_statements;
      auto it = type_of_iri.find(s.object);
      if (it != type_of_iri.end()) types_by_subject[s.subject].insert(it->second);
    } else {
      ++sum.relation_statements;
    }
  }

  std::set<std::string> minted;
  for (const auto &p : pages) {
    for (const auto &m : p.subjects) {
      if (!m.exists_in_kb) minted.insert(entity_iri(m.target, ns));
    }
  }
  sum.new_entities = int(minted.size());
  for (const auto &iri : minted) {
    std::set<std::string> top;
    auto it = types_by_subject.find(iri);
    if (it != types_by_subject.end()) {
      for (const auto &t : it->second) {
        for (const auto &a : onto.ancestors(t)) {
          if (onto.depth(a) == 1) top.insert(a);
        }
      }
    }
    if (top.empty()) top.insert("<untyped>");
    for (const auto &t : top) ++sum.new_entities_by_type[t];
  }
  return sum;
}

}  // namespace listforge
