#ifndef LISTFORGE_KG_H_
#define LISTFORGE_KG_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "listforge/ingest.h"
#include "listforge/taxonomy.h"
#include "listforge/wikitext.h"

namespace listforge {

inline constexpr const char *kDefaultNamespace = "http://listforge.org/resource/";
inline constexpr const char *kOntologyNamespace = "http://listforge.org/ontology/";
inline constexpr const char *kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

// Namespace with a trailing '/' or '#'.
std::string normalize_namespace(const std::string &ns);

// IRI of a new entity: namespace plus the percent-encoded link title.
// Throws PreconditionError for blue links and Error for an empty title.
std::string mint_entity(const EntityMention &mention, const std::string &ns = kDefaultNamespace);

// IRI for an entity ID, either a bundle entity or a "red:" ID.
std::string entity_iri(const std::string &target, const std::string &ns = kDefaultNamespace);

// IRI for an ontology type or predicate name; absolute IRIs pass through.
std::string ontology_iri(const std::string &name);

struct Provenance {
  std::string page;
  std::string rule;  // "backbone-type" | "node-axiom"
  auto operator<=>(const Provenance &) const = default;
};

struct Statement {
  std::string subject;
  std::string predicate;
  std::string object;
  std::set<Provenance> provenance;

  bool is_type() const { return predicate == kRdfType; }
};

struct PageSubjects {
  std::string page;
  std::vector<EntityMention> subjects;
};

// Type statements for every t in types_of(l) and relation statements for
// every relation axiom on l or an ancestor of l. Statements the bundle
// already holds are suppressed; duplicates across pages are merged. Sorted
// by (subject, predicate, object).
std::vector<Statement> generate_statements(const std::vector<PageSubjects> &pages,
                                           const TaxonomyGraph &graph, const CorpusBundle &bundle,
                                           const std::string &ns = kDefaultNamespace,
                                           int threads = 1);

// "<s> <p> <o> .\n" per statement, sorted. Throws Error when an IRI holds a
// character N-Triples forbids, or when the file cannot be written. Returns
// the number of lines written.
size_t emit_ntriples(const std::vector<Statement> &statements, const std::string &path);
std::string ntriples_line(const Statement &s);

// provenance.jsonl: {"subject","predicate","object","sources":[{"page","rule"}]}.
void write_provenance(const std::vector<Statement> &statements, const std::string &path);

struct ExtractionSummary {
  int type_statements = 0;
  int relation_statements = 0;
  int new_entities = 0;
  // New entities per top-level ontology type (children of the root);
  // untyped entities count under "<untyped>".
  std::map<std::string, int> new_entities_by_type;
};

ExtractionSummary summarize_extraction(const std::vector<Statement> &statements,
                                       const std::vector<PageSubjects> &pages,
                                       const CorpusBundle &bundle,
                                       const std::string &ns = kDefaultNamespace);

}  // namespace listforge

#endif  // LISTFORGE_KG_H_
