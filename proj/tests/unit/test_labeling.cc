#include <filesystem>

#include "doctest.h"
#include "listforge/labeling.h"
#include "listforge/pipeline.h"
#include "worked_example.h"

using namespace listforge;

namespace {

struct World {
  CorpusBundle bundle{testing::worked_example_data()};
  TaxonomyBuild build = build_taxonomy(bundle, PipelineConfig{});
};

const World &world() {
  static const World w;
  return w;
}

const LabeledExample &find(const std::vector<LabeledExample> &labels, const std::string &target) {
  for (const auto &l : labels) {
    if (l.mention.target == target) return l;
  }
  FAIL("no mention of " << target);
  return labels.front();
}

}  // namespace

TEST_CASE("related categories of the speculative fiction list") {
  const auto &w = world();
  auto rel = related(page_node("List of Japanese speculative fiction writers"), w.build.graph);
  CHECK(rel == std::set<std::string>{category_node("Japanese writers"),
                                     category_node("Japanese women writers")});
}

TEST_CASE("types of the speculative fiction list") {
  const auto &w = world();
  auto types = types_of(page_node("List of Japanese speculative fiction writers"), w.build.graph,
                        w.bundle.ontology().root());
  CHECK(types == std::set<std::string>{"Agent", "Person", "Writer"});
}

TEST_CASE("related and types on small graphs") {
  TaxonomyGraph g;
  g.add_node(category_node("C"), NodeKind::kCategory);
  g.add_node(page_node("List of c"), NodeKind::kListPage);
  g.add_edge(category_node("C"), page_node("List of c"));
  CHECK(related(page_node("List of c"), g) == std::set<std::string>{category_node("C")});
  CHECK(types_of(page_node("List of c"), g).empty());

  TaxonomyGraph lone;
  lone.add_node(page_node("List of x"), NodeKind::kListPage);
  CHECK(related(page_node("List of x"), lone).empty());
}

TEST_CASE("distant labels on the speculative fiction list") {
  const auto &w = world();
  const std::string title = "List of Japanese speculative fiction writers";
  ParsedListPage page = parse_list_page(title, w.bundle.pages().at(title), w.bundle);
  auto labels = label_page(page, w.build.graph, w.bundle);

  CHECK(find(labels, "Kobo Abe").label == Label::kPositive);
  CHECK(find(labels, "Kobo Abe").source == LabelSource::kEq3);
  CHECK(find(labels, "Izumi Suzuki").label == Label::kPositive);
  const auto &theatre = find(labels, "Kabukiza Theatre");
  CHECK(theatre.label == Label::kNegative);
  const auto &book = find(labels, "Japan Sinks");
  CHECK(book.label == Label::kNegative);
  for (const auto &l : labels) {
    if (l.mention.is_red_link()) CHECK(l.label == Label::kUnlabeled);
    CHECK((l.label == Label::kUnlabeled) == (l.source == LabelSource::kNone));
  }
}

TEST_CASE("building mention is negative by disjointness alone") {
  BundleData d = testing::worked_example_data();
  d.pages["List of Japanese speculative fiction writers"] =
      "* [[Tokyo Tower]]\n* [[Kobo Abe]]\n[[Category:Lists of Japanese writers]]\n";
  CorpusBundle b(d);
  TaxonomyBuild build = build_taxonomy(b, PipelineConfig{});
  const std::string title = "List of Japanese speculative fiction writers";
  auto labels = label_page(parse_list_page(title, b.pages().at(title), b), build.graph, b);
  CHECK(find(labels, "Tokyo Tower").label == Label::kNegative);
  CHECK(find(labels, "Tokyo Tower").source == LabelSource::kEq4);
}

TEST_CASE("row rule marks co-occurring mentions negative") {
  BundleData d = testing::worked_example_data();
  d.pages["List of Japanese speculative fiction writers"] =
      "* [[Kobo Abe]] won prize [[Grammy Award for Song of the Year]]\n"
      "[[Category:Lists of Japanese writers]]\n";
  CorpusBundle b(d);
  TaxonomyBuild build = build_taxonomy(b, PipelineConfig{});
  const std::string title = "List of Japanese speculative fiction writers";
  auto labels = label_page(parse_list_page(title, b.pages().at(title), b), build.graph, b);
  CHECK(find(labels, "Kobo Abe").label == Label::kPositive);
  CHECK(find(labels, "Grammy Award for Song of the Year").label == Label::kNegative);
  CHECK(find(labels, "Grammy Award for Song of the Year").source == LabelSource::kRowRule);
}

TEST_CASE("conflicting evidence leaves a mention unlabeled") {
  BundleData d = testing::worked_example_data();
  // A building filed under Japanese writers is both a member and disjoint.
  d.categories["Japanese writers"].members.insert("Tokyo Tower");
  d.pages["List of Japanese speculative fiction writers"] =
      "* [[Tokyo Tower]]\n[[Category:Lists of Japanese writers]]\n";
  CorpusBundle b(d);
  TaxonomyBuild build = build_taxonomy(b, PipelineConfig{});
  const std::string title = "List of Japanese speculative fiction writers";
  auto labels = label_page(parse_list_page(title, b.pages().at(title), b), build.graph, b);
  CHECK(find(labels, "Tokyo Tower").label == Label::kUnlabeled);
}

TEST_CASE("labels JSONL round trip") {
  const auto &w = world();
  const std::string title = "List of Brazilian actors";
  auto labels = label_page(parse_list_page(title, w.bundle.pages().at(title), w.bundle), w.build.graph,
                           w.bundle);
  auto path = (std::filesystem::temp_directory_path() / "listforge_labels_test.jsonl").string();
  write_labels(path, labels);
  auto back = read_labels(path);
  REQUIRE(back.size() == labels.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].page == labels[i].page);
    CHECK(back[i].position == labels[i].mention.position);
    CHECK(back[i].target == labels[i].mention.target);
    CHECK(back[i].label == labels[i].label);
    CHECK(back[i].source == labels[i].source);
  }
  std::filesystem::remove(path);
}
