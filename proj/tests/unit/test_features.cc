#include <cmath>

#include "doctest.h"
#include "listforge/features.h"
#include "listforge/util.h"

using namespace listforge;

namespace {

double value(const RawFeatures &f, const std::string &name) {
  const auto &names = numeric_feature_names(f.layout);
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return f.numeric.at(i);
  }
  FAIL("unknown feature " << name);
  return 0;
}

std::string category(const RawFeatures &f, const std::string &name) {
  const auto &names = categorical_feature_names(f.layout);
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return f.categorical.at(i);
  }
  FAIL("unknown feature " << name);
  return "";
}

}  // namespace

TEST_CASE("rule-based tagger") {
  CHECK(token_tag("Kobo") == "CAP");
  CHECK(token_tag("NASA") == "ALLCAPS");
  CHECK(token_tag("1924") == "NUM");
  CHECK(token_tag("born") == "LOWER");
  CHECK(token_tag("(") == "PUNCT");
  CHECK(token_tag("") == "NONE");
  CHECK(token_tag("\xc3\x89mile") == "CAP");
  auto toks = tokenize("Abe Kobo (1924-1993), e.g. writer");
  std::vector<std::string> texts;
  for (const auto &t : toks) texts.push_back(t.text);
  CHECK(texts == std::vector<std::string>{"Abe", "Kobo", "(", "1924-1993", ")", ",", "e.g", ".", "writer"});
}

TEST_CASE("enumeration features on a ten-entry page") {
  std::string text = "== Writers ==\n";
  for (int i = 0; i < 10; ++i) text += "* [[W" + std::to_string(i) + "]] born in [[Tokyo]]\n";
  ParsedListPage p = parse_list_page("List of Japanese writers", text, LinkResolver{});
  REQUIRE(p.layout == Layout::kEnumeration);
  Lexicon lex;
  PageFeatureContext ctx(p, lex);
  auto mentions = p.mentions();
  RawFeatures f = ctx.extract(*mentions[0]);
  CHECK(f.numeric.size() == numeric_feature_names(Layout::kEnumeration).size());
  CHECK(value(f, "entry_position") == 0);
  CHECK(value(f, "mention_position") == 0);
  CHECK(value(f, "entry_count") == 10);
  CHECK(value(f, "section_count") == 1);
  CHECK(value(f, "entities_per_entry_avg") == 2);
  CHECK(value(f, "entities_per_entry_std") == 0);
  CHECK(value(f, "words_per_entry_avg") == 4);  // "W0 born in Tokyo"
  CHECK(value(f, "first_entity_position_avg") == 0);
  CHECK(value(f, "mentions_same_container") == 1);
  CHECK(value(f, "mentions_other_containers") == 0);
  CHECK(category(f, "section_title") == "writers");
  CHECK(category(f, "tag_entity") == "CAP");
  CHECK(category(f, "tag_left") == "NONE");
  CHECK(category(f, "tag_right") == "LOWER");

  RawFeatures tokyo = ctx.extract(*mentions[3]);
  CHECK(value(tokyo, "entry_position") == 1);
  CHECK(value(tokyo, "mention_position") == 1);
  CHECK(value(tokyo, "mentions_same_container") == 10);
  CHECK(category(tokyo, "tag_left") == "LOWER");
  CHECK(category(tokyo, "tag_right") == "NONE");
  // Extraction is pure.
  CHECK(ctx.extract(*mentions[3]) == tokyo);
  CHECK(extract_features(*mentions[3], p, lex) == tokyo);
}

TEST_CASE("indentation statistics against a hand computation") {
  ParsedListPage p = parse_list_page("List of x", "* [[A]] x\n** [[B]]\n** [[C]]\n* [[D]]\n", LinkResolver{});
  RawFeatures f = extract_features(*p.mentions()[0], p, Lexicon{});
  // Depths 1, 2, 2, 1: mean 1.5, population std 0.5.
  CHECK(value(f, "indentation_avg") == doctest::Approx(1.5));
  CHECK(value(f, "indentation_std") == doctest::Approx(0.5));
  CHECK(value(f, "sub_entry_count") == 2);
  CHECK(value(f, "words_per_entry_avg") == doctest::Approx(1.25));
  CHECK(category(f, "section_title") == "<lead>");
}

TEST_CASE("single mention page has one same-container mention") {
  ParsedListPage p = parse_list_page("List of x", "* [[A]]\n", LinkResolver{});
  RawFeatures f = extract_features(*p.mentions()[0], p, Lexicon{});
  CHECK(value(f, "mentions_same_container") == 1);
  CHECK(value(f, "mentions_other_containers") == 0);
}

TEST_CASE("table features and header match") {
  const char *text =
      "{| class=\"wikitable\"\n"
      "! Year !! Writer !! Notable work\n"
      "|-\n"
      "| 1951 || [[Oscar Hijuelos]] || [[The Mambo Kings]]\n"
      "|-\n"
      "| 1958 || [[Cristina Garcia]] || [[Dreaming in Cuban]]\n"
      "|}\n";
  ParsedListPage p = parse_list_page("List of Cuban-American writers", text, LinkResolver{});
  REQUIRE(p.layout == Layout::kTable);
  PageFeatureContext ctx(p, Lexicon{});
  auto mentions = p.mentions();
  RawFeatures writer = ctx.extract(*mentions[0]);
  CHECK(writer.numeric.size() == numeric_feature_names(Layout::kTable).size());
  CHECK(value(writer, "header_matches_title") == 1);
  CHECK(value(writer, "column_position") == 1);
  CHECK(value(writer, "row_position") == 0);
  CHECK(value(writer, "table_count") == 1);
  CHECK(value(writer, "row_count") == 2);
  CHECK(value(writer, "column_count") == 3);
  CHECK(value(writer, "entities_in_row") == 2);
  CHECK(value(writer, "first_entity_column_avg") == 1);
  CHECK(value(writer, "entities_per_column_avg") == doctest::Approx(4.0 / 3.0));
  RawFeatures work = ctx.extract(*mentions[3]);
  CHECK(value(work, "header_matches_title") == 0);
  CHECK(value(work, "mention_position") == 1);
  CHECK(category(work, "tag_entity") == "CAP");

  ParsedListPage headless =
      parse_list_page("List of x", "{|\n|-\n| [[A]]\n|-\n| [[B]]\n|}\n", LinkResolver{});
  CHECK(value(extract_features(*headless.mentions()[0], headless, Lexicon{}), "header_matches_title") ==
        kMissing);
}

TEST_CASE("layout mismatch is an error") {
  ParsedListPage p = parse_list_page("List of x", "* [[A]]\n* [[B]]\n{|\n|-\n| [[C]]\n|}\n", LinkResolver{});
  REQUIRE(p.layout == Layout::kEnumeration);
  const EntityMention *table_mention = nullptr;
  for (const auto *m : p.mentions()) {
    if (m->position.in_table()) table_mention = m;
  }
  REQUIRE(table_mention != nullptr);
  CHECK_FALSE(mention_matches_layout(*table_mention, p.layout));
  CHECK_THROWS_AS(extract_features(*table_mention, p, Lexicon{}), Error);
}

TEST_CASE("categorical encoder keeps the top values") {
  std::vector<RawFeatures> training;
  auto raw = [](const std::string &section) {
    RawFeatures f;
    f.layout = Layout::kEnumeration;
    f.numeric.assign(numeric_feature_names(Layout::kEnumeration).size(), 0.0);
    f.categorical = {section, "CAP", "NONE", "LOWER"};
    return f;
  };
  for (int i = 0; i < 3; ++i) training.push_back(raw("a"));
  for (int i = 0; i < 2; ++i) training.push_back(raw("c"));
  for (int i = 0; i < 2; ++i) training.push_back(raw("b"));
  training.push_back(raw("d"));
  CategoricalEncoder enc(Layout::kEnumeration, training, 2);
  const auto &names = enc.feature_names();
  size_t n = numeric_feature_names(Layout::kEnumeration).size();
  CHECK(names[n] == "section_title=a");
  CHECK(names[n + 1] == "section_title=b");  // tie with "c" broken lexicographically
  CHECK(names[n + 2] == "section_title=<other>");
  FeatureVector v = enc.encode(raw("zzz"));
  CHECK(v.values.size() == names.size());
  CHECK(v.values[n + 2] == 1.0);
  CHECK(v.values[n] == 0.0);
  CHECK(v.schema_hash == enc.hash());
  CHECK(enc.hash() == schema_hash(names));

  CategoricalEncoder back = CategoricalEncoder::from_json(enc.to_json());
  CHECK(back.feature_names() == names);
  CHECK(back.hash() == enc.hash());

  RawFeatures table;
  table.layout = Layout::kTable;
  CHECK_THROWS_AS(enc.encode(table), Error);
  CHECK(schema_hash({"a", "b"}) != schema_hash({"b", "a"}));
}
