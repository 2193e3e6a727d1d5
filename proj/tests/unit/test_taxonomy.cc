#include "doctest.h"
#include "listforge/pipeline.h"
#include "listforge/taxonomy.h"
#include "worked_example.h"

using namespace listforge;

namespace {

TaxonomyGraph graph_of(const std::vector<std::string> &nodes, const std::vector<Edge> &edges,
                       const std::string &root = "") {
  TaxonomyGraph g;
  for (const auto &n : nodes) g.add_node(category_node(n), NodeKind::kCategory);
  for (const auto &[p, c] : edges) g.add_edge(category_node(p), category_node(c));
  if (!root.empty()) g.set_roots({category_node(root)});
  g.compute_depths();
  return g;
}

const CorpusBundle &worked_bundle() {
  static const CorpusBundle bundle(testing::worked_example_data());
  return bundle;
}

}  // namespace

TEST_CASE("node cleaning drops singular heads") {
  TaxonomyGraph g = graph_of({"Root", "London", "People from London", "Japanese writers"},
                             {{"Root", "London"}, {"London", "People from London"},
                              {"Root", "Japanese writers"}},
                             "Root");
  TaxonomyGraph c = clean_nodes(g, {category_node("Root")});
  CHECK_FALSE(c.has_node(category_node("London")));
  CHECK(c.has_node(category_node("People from London")));
  CHECK(c.has_node(category_node("Japanese writers")));
  CHECK(c.has_node(category_node("Root")));
  // No re-linking around removed nodes.
  CHECK(c.parents(category_node("People from London")).empty());
  CHECK(clean_nodes(TaxonomyGraph{}).node_count() == 0);
}

TEST_CASE("edge cleaning keeps synonym or hypernym heads only") {
  TaxonomyGraph g = graph_of({"Songs", "Song awards", "Writers", "Japanese writers", "People",
                              "Criminals"},
                             {{"Songs", "Song awards"}, {"Writers", "Japanese writers"},
                              {"People", "Criminals"}});
  Lexicon lex;
  lex.evidence.hearst[{"people", "criminals"}] = 5;
  lex.evidence.category_axiom_pairs[{"people", "criminals"}] = 3;
  TaxonomyGraph c = clean_edges(g, lex);
  CHECK_FALSE(c.has_edge(category_node("Songs"), category_node("Song awards")));
  CHECK(c.has_edge(category_node("Writers"), category_node("Japanese writers")));
  CHECK(c.has_edge(category_node("People"), category_node("Criminals")));
  CHECK(c.node_count() == g.node_count());
}

TEST_CASE("cycle resolution by depth") {
  SUBCASE("deeper to shallower edge removed") {
    TaxonomyGraph g = graph_of({"R", "X", "A", "B"},
                               {{"R", "X"}, {"X", "A"}, {"A", "B"}, {"B", "A"}}, "R");
    CHECK(g.depth(category_node("A")) == 2);
    CHECK(g.depth(category_node("B")) == 3);
    TaxonomyGraph r = resolve_cycles(g);
    CHECK(r.has_edge(category_node("A"), category_node("B")));
    CHECK_FALSE(r.has_edge(category_node("B"), category_node("A")));
    CHECK(r.is_acyclic());
  }
  SUBCASE("equal depth cycle loses all its edges") {
    TaxonomyGraph g = graph_of({"R", "X", "Y", "A", "B"},
                               {{"R", "X"}, {"R", "Y"}, {"X", "A"}, {"Y", "B"}, {"A", "B"}, {"B", "A"}},
                               "R");
    TaxonomyGraph r = resolve_cycles(g);
    CHECK_FALSE(r.has_edge(category_node("A"), category_node("B")));
    CHECK_FALSE(r.has_edge(category_node("B"), category_node("A")));
    CHECK(r.edge_count() == 4);
    CHECK(r.is_acyclic());
  }
  SUBCASE("acyclic input unchanged") {
    TaxonomyGraph g = graph_of({"R", "A", "B"}, {{"R", "A"}, {"A", "B"}, {"R", "B"}}, "R");
    CHECK(resolve_cycles(g).edges() == g.edges());
  }
  SUBCASE("self loop removed") {
    TaxonomyGraph g = graph_of({"R", "A"}, {{"R", "A"}, {"A", "A"}}, "R");
    TaxonomyGraph r = resolve_cycles(g);
    CHECK_FALSE(r.has_edge(category_node("A"), category_node("A")));
    CHECK(r.is_acyclic());
  }
}

TEST_CASE("depths are shortest paths and unreachable nodes are infinite") {
  TaxonomyGraph g = graph_of({"R", "A", "B", "C", "Z"}, {{"R", "A"}, {"A", "B"}, {"R", "B"}, {"B", "C"}},
                             "R");
  CHECK(g.depth(category_node("R")) == 0);
  CHECK(g.depth(category_node("B")) == 1);
  CHECK(g.depth(category_node("C")) == 2);
  CHECK(g.depth(category_node("Z")) == kUnreachable);
}

TEST_CASE("axiom induction on Japanese writers") {
  const CorpusBundle &b = worked_bundle();
  TaxonomyGraph g = make_category_graph(filter_category_graph(b), kDefaultRootCategory);
  auto axioms = induce_axioms(g, b);
  const AxiomSet &jw = axioms.at(category_node("Japanese writers"));
  REQUIRE(jw.type_axioms.size() == 1);
  CHECK(jw.type_axioms[0].type == "Writer");
  CHECK(jw.type_axioms[0].confidence == doctest::Approx(1.0));
  CHECK(jw.type_axioms[0].support == 13);  // 10 direct members + 3 from the subcategory
  bool nationality = false;
  for (const auto &r : jw.relation_axioms) {
    if (r.predicate == "nationality" && r.object == "Japan") nationality = true;
  }
  CHECK(nationality);
  // Song awards has one untyped member.
  CHECK(axioms.count(category_node("Song awards")) == 0);
}

TEST_CASE("category axiom evidence links people and criminals") {
  const CorpusBundle &b = worked_bundle();
  TaxonomyGraph g = make_category_graph(filter_category_graph(b), kDefaultRootCategory);
  auto pairs = build_axiom_evidence(g, b);
  const WordPair people_criminals = {normalize_phrase("people"), normalize_phrase("criminals")};
  REQUIRE(pairs.count(people_criminals) == 1);
  CHECK(pairs.at(people_criminals) == 1);
  CHECK(pairs.count({normalize_phrase("songs"), normalize_phrase("awards")}) == 0);
  CHECK(build_axiom_evidence(TaxonomyGraph{}, b).empty());
}

TEST_CASE("lists link to equivalent categories") {
  const CorpusBundle &b = worked_bundle();
  PipelineConfig config;
  TaxonomyBuild build = build_taxonomy(b, config);
  const TaxonomyGraph &g = build.graph;
  CHECK(g.has_edge(category_node("Japanese writers"), category_node("Lists of Japanese writers")));
  CHECK(g.has_edge(category_node("Media in Kuwait"), category_node("Lists of Kuwaiti media")));
  CHECK(g.has_edge(category_node("Lists of Japanese writers"),
                   page_node("List of Japanese speculative fiction writers")));
  CHECK_FALSE(g.has_node(category_node("London")));
  CHECK_FALSE(g.has_edge(category_node("Songs"), category_node("Song awards")));
  CHECK(g.has_edge(category_node("People"), category_node("Criminals from London")) ==
        false);  // not an edge in the input
  CHECK(g.has_edge(category_node("People from London"), category_node("Criminals from London")));
  CHECK(g.has_edge(type_node("Writer"), category_node("Japanese writers")));
  CHECK(g.is_acyclic());
  CHECK(build.stats.at("acyclic").get<bool>());
}

TEST_CASE("unrelated list and category are not linked") {
  TaxonomyGraph cats = graph_of({"Songs"}, {});
  TaxonomyGraph lists;
  lists.add_node(category_node("Lists of moths"), NodeKind::kListCategory);
  LinkStats stats;
  TaxonomyGraph merged = link_lists_to_categories(
      cats, lists, {{category_node("Songs"), category_node("Lists of moths")}}, Lexicon{}, &stats);
  CHECK(merged.edge_count() == 0);
  CHECK(stats.equivalence_links == 0);
  CHECK(stats.hypernym_links == 0);
}

TEST_CASE("backbone coverage counts nodes with a type ancestor") {
  BundleData d;
  d.ontology.types = {"Thing", "Person"};
  d.ontology.subclass_edges = {{"Thing", "Person"}};
  for (int i = 0; i < 3; ++i) {
    std::string id = "P" + std::to_string(i);
    d.entities[id] = EntityRecord{id, id, {"Person"}, true};
  }
  CorpusBundle b(d);
  TaxonomyGraph g = graph_of({"R", "A", "B", "C", "D", "E", "F", "G"},
                             {{"R", "A"}, {"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "E"}, {"E", "F"},
                              {"F", "G"}},
                             "R");
  g.node_axioms[category_node("A")].type_axioms.push_back({"Person", 1.0, 3});
  BackboneStats stats;
  TaxonomyGraph out = attach_backbone(g, b, &stats);
  CHECK(out.has_edge(type_node("Person"), category_node("A")));
  CHECK(out.has_edge(type_node("Thing"), type_node("Person")));
  CHECK(stats.backbone_edges == 1);
  CHECK(stats.non_type_nodes == 8);
  CHECK(stats.nodes_with_type_ancestor == 7);
  CHECK(stats.coverage() == doctest::Approx(0.875));
  CHECK(out.is_acyclic());
}

TEST_CASE("taxonomy JSON round trip and threshold check") {
  TaxonomyBuild build = build_taxonomy(worked_bundle(), PipelineConfig{});
  nlohmann::json j = taxonomy_to_json(build.graph);
  TaxonomyGraph back = taxonomy_from_json(j);
  CHECK(back.edges() == build.graph.edges());
  CHECK(back.node_axioms == build.graph.node_axioms);
  CHECK(taxonomy_to_json(back).dump() == j.dump());

  nlohmann::json bad = j;
  for (auto &[node, ax] : bad.at("axioms").items()) {
    if (!ax.at("types").empty()) {
      ax.at("types")[0]["support"] = 1;
      break;
    }
  }
  CHECK_THROWS_AS(taxonomy_from_json(bad), Error);
}
