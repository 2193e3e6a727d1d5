#include "listforge/fixture.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <tuple>

#include "json.hpp"
#include "listforge/util.h"

namespace listforge {

namespace {

// std::mt19937_64 is fully specified; the distributions in <random> are
// not, so sampling goes through these helpers.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return lo + int(gen_() % uint64_t(hi - lo + 1)); }
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <class T>
  const T &pick(const std::vector<T> &v) {
    return v[size_t(uniform(0, int(v.size()) - 1))];
  }
  template <class T>
  void shuffle(std::vector<T> *v) {
    for (size_t i = v->size(); i > 1; --i) std::swap((*v)[i - 1], (*v)[size_t(uniform(0, int(i) - 1))]);
  }

 private:
  std::mt19937_64 gen_;
};

struct Country {
  std::string adj;
  std::string name;
  std::string capital;
};

const std::vector<Country> kCountries = {
    {"Japanese", "Japan", "Tokyo"},         {"Brazilian", "Brazil", "Brasilia"},
    {"French", "France", "Paris"},          {"German", "Germany", "Berlin"},
    {"Italian", "Italy", "Rome"},           {"Spanish", "Spain", "Madrid"},
    {"Mexican", "Mexico", "Mexico City"},   {"Canadian", "Canada", "Ottawa"},
    {"Indian", "India", "New Delhi"},       {"Chinese", "China", "Beijing"},
    {"Russian", "Russia", "Moscow"},        {"Egyptian", "Egypt", "Cairo"},
    {"Kenyan", "Kenya", "Nairobi"},         {"Argentine", "Argentina", "Buenos Aires"},
    {"Chilean", "Chile", "Santiago"},       {"Polish", "Poland", "Warsaw"},
    {"Swedish", "Sweden", "Stockholm"},     {"Norwegian", "Norway", "Oslo"},
    {"Dutch", "Netherlands", "Amsterdam"},  {"Greek", "Greece", "Athens"},
    {"Turkish", "Turkey", "Ankara"},        {"Irish", "Ireland", "Dublin"},
    {"Portuguese", "Portugal", "Lisbon"},   {"Korean", "South Korea", "Seoul"},
    {"Australian", "Australia", "Canberra"}};

const std::vector<std::string> kFamilies = {
    "Erebidae",   "Noctuidae",  "Geometridae",   "Crambidae",   "Tortricidae",
    "Pyralidae",  "Sphingidae", "Saturniidae",   "Notodontidae", "Lasiocampidae",
    "Zygaenidae", "Tineidae",   "Gelechiidae",   "Oecophoridae", "Pterophoridae",
    "Sesiidae",   "Drepanidae", "Limacodidae",   "Psychidae",   "Cossidae"};

const std::vector<std::string> kSyllables = {
    "ka", "to", "mi", "ra", "se", "lo", "na", "vi", "de", "ru", "ba", "ne", "so", "ta",
    "li", "mo", "pe", "ga", "chi", "zu", "ren", "dor", "val", "mar", "kel", "tan", "bro", "fen"};

const std::vector<std::string> kFirstNames = {
    "Akira", "Maria", "Joao",  "Hans",   "Elena", "Pierre", "Sofia", "Ivan",  "Amara", "Lucas",
    "Nadia", "Omar",  "Ingrid", "Paolo", "Chen",  "Aiko",   "Rafael", "Greta", "Tomas", "Lena",
    "Kofi",  "Irene", "Mateo", "Yuki",   "Anders", "Clara", "Diego", "Fatima", "Hugo", "Mira"};

const std::vector<std::string> kWorkAdjectives = {
    "Silent", "Red",    "Hidden", "Last",   "Broken", "Golden", "Distant", "Quiet", "Burning", "Lost",
    "Winter", "Secret", "Bright", "Hollow", "Wild",   "Frozen", "Crimson", "Pale",  "Endless", "Iron",
    "Second", "Falling", "Little", "Long",  "Open",   "Sleeping", "Black", "White", "Green",  "Blue"};

const std::vector<std::string> kWorkNouns = {
    "River",  "Garden", "Harbor", "Mountain", "Letter", "Season", "Mirror", "Station", "Island", "Road",
    "Forest", "Bridge", "Voice",  "Window",   "Shore",  "Empire", "Journey", "Promise", "Shadow", "Tide",
    "Lantern", "Crown", "Field",  "Tower",    "Dream",  "Horizon", "Storm",  "Echo",   "Valley", "Song"};

enum class Group { kPerson, kMoth, kBird, kCompany, kBuilding };
enum class Distractor { kCity, kWork, kPerson };

struct Domain {
  std::string plural;    // head of category names
  std::string capital;   // top category name
  std::string header;    // subject column header
  std::string type;
  Group group;
  std::string occupation;  // relation object for person domains
  Distractor d1;
  std::string d1_phrase, d1_header;
  Distractor d2;
  std::string d2_phrase, d2_header, d2_verb;
};

const std::vector<Domain> &domains() {
  static const std::vector<Domain> kDomains = {
      {"writers", "Writers", "Writer", "Writer", Group::kPerson, "Writer (occupation)",
       Distractor::kCity, "born in", "Birthplace", Distractor::kWork, "author of", "Notable work", ""},
      {"actors", "Actors", "Actor", "Actor", Group::kPerson, "Actor (occupation)",
       Distractor::kCity, "born in", "Birthplace", Distractor::kWork, "known for", "Notable role", ""},
      {"footballers", "Footballers", "Footballer", "SoccerPlayer", Group::kPerson,
       "Footballer (occupation)", Distractor::kCity, "born in", "Birthplace", Distractor::kWork,
       "subject of", "Documentary", ""},
      {"politicians", "Politicians", "Politician", "Politician", Group::kPerson,
       "Politician (occupation)", Distractor::kCity, "born in", "Birthplace", Distractor::kWork,
       "author of", "Memoir", ""},
      {"musicians", "Musicians", "Musician", "Musician", Group::kPerson, "Musician (occupation)",
       Distractor::kCity, "born in", "Birthplace", Distractor::kWork, "composer for",
       "Soundtrack", ""},
      {"moths", "Moths", "Moth", "Insect", Group::kMoth, "", Distractor::kCity, "recorded near",
       "Type locality", Distractor::kPerson, "described by", "Described by", "described"},
      {"birds", "Birds", "Bird", "Bird", Group::kBird, "", Distractor::kCity, "seen near",
       "Range", Distractor::kPerson, "described by", "Described by", "described"},
      {"companies", "Companies", "Company", "Company", Group::kCompany, "", Distractor::kCity,
       "based in", "Headquarters", Distractor::kPerson, "founded by", "Founder", "founded"},
      {"buildings", "Buildings", "Building", "Building", Group::kBuilding, "", Distractor::kPerson,
       "designed by", "Architect", Distractor::kWork, "featured in", "Featured in", ""}};
  return kDomains;
}

// One category and (optionally) one list page.
struct Combo {
  size_t domain = 0;
  size_t qualifier = 0;  // country index, or family index for moths
  std::string category;
  std::string page;
  std::vector<std::string> members;
};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = char(s[0] - 'a' + 'A');
  return s;
}

class Generator {
 public:
  Generator(const FixtureOptions &options) : opt_(options), rng_(options.seed) {}

  BundleData run(FixtureTruth *truth);

 private:
  std::string syllables(int lo, int hi) {
    std::string s;
    int n = rng_.uniform(lo, hi);
    for (int i = 0; i < n; ++i) s += rng_.pick(kSyllables);
    return s;
  }
  std::string fresh(const std::function<std::string()> &make) {
    for (;;) {
      std::string name = make();
      if (used_.insert(name).second) return name;
    }
  }
  std::string subject_name(Group g);
  void add_entity(const std::string &id, const std::string &type) {
    EntityRecord e;
    e.id = id;
    e.label = id;
    if (!type.empty()) e.types.insert(type);
    data_.entities[id] = e;
  }
  void add_category(const std::string &name, const std::vector<std::string> &members = {}) {
    CategoryRecord &c = data_.categories[name];
    c.name = name;
    c.is_list_category = starts_with(name, "Lists of");
    c.members.insert(members.begin(), members.end());
  }
  void edge(const std::string &p, const std::string &c) {
    add_category(p);
    add_category(c);
    data_.subcategory_edges.emplace(p, c);
  }
  void fact(const std::string &e, const std::string &p, const std::string &o, double rate) {
    if (rng_.chance(rate)) data_.ontology.relation_facts.emplace(e, p, o);
  }

  void build_ontology();
  void build_places_and_works();
  void build_combos();
  void build_category_noise();
  void build_evidence();
  std::string distractor(Distractor kind, size_t country);
  std::string enum_page(const Combo &combo, std::set<std::string> *truth);
  std::string table_page(const Combo &combo, std::set<std::string> *truth);
  std::string page_tail(const Combo &combo);
  // Wikilink for the subject of an entry; records it as planted truth.
  std::string next_subject(const Combo &combo, std::vector<std::string> *pool,
                           std::set<std::string> *truth, std::string *plain);

  FixtureOptions opt_;
  Rng rng_;
  BundleData data_;
  std::set<std::string> used_;
  std::vector<Combo> combos_;
  std::vector<std::vector<std::string>> cities_;  // per country; capital first
  std::vector<std::vector<std::string>> works_;   // per country
  std::vector<std::string> persons_;              // every person member
};

std::string Generator::subject_name(Group g) {
  switch (g) {
    case Group::kPerson:
      return fresh([&] { return rng_.pick(kFirstNames) + " " + capitalize(syllables(2, 3)); });
    case Group::kMoth:
      return fresh([&] { return capitalize(syllables(2, 3)) + "a " + syllables(2, 3); });
    case Group::kBird: {
      static const std::vector<std::string> kKinds = {"warbler", "finch", "heron",
                                                      "owl",     "sparrow", "kingfisher"};
      return fresh([&] { return capitalize(syllables(2, 3)) + " " + rng_.pick(kKinds); });
    }
    case Group::kCompany: {
      static const std::vector<std::string> kKinds = {"Holdings", "Group", "Industries", "Motors",
                                                      "Foods"};
      return fresh([&] { return capitalize(syllables(2, 3)) + " " + rng_.pick(kKinds); });
    }
    case Group::kBuilding: {
      static const std::vector<std::string> kKinds = {"Tower", "Hall", "Palace", "Center", "House"};
      return fresh([&] { return capitalize(syllables(2, 3)) + " " + rng_.pick(kKinds); });
    }
  }
  return "";
}

void Generator::build_ontology() {
  OntologyRecord &o = data_.ontology;
  const std::vector<Edge> edges = {
      {"Thing", "Agent"},       {"Thing", "Place"},          {"Thing", "Work"},
      {"Thing", "Species"},     {"Agent", "Person"},         {"Agent", "Organisation"},
      {"Person", "Writer"},     {"Person", "Actor"},         {"Person", "Athlete"},
      {"Athlete", "SoccerPlayer"}, {"Person", "Politician"}, {"Person", "Musician"},
      {"Organisation", "Company"}, {"Place", "PopulatedPlace"}, {"PopulatedPlace", "Settlement"},
      {"Settlement", "City"},   {"PopulatedPlace", "Country"}, {"Place", "ArchitecturalStructure"},
      {"ArchitecturalStructure", "Building"}, {"Place", "NaturalPlace"},
      {"NaturalPlace", "River"}, {"NaturalPlace", "Mountain"}, {"Work", "Book"}, {"Work", "Film"},
      {"Species", "Animal"},    {"Animal", "Insect"},        {"Animal", "Bird"}};
  o.types.insert("Thing");
  for (const auto &[p, c] : edges) {
    o.types.insert(p);
    o.types.insert(c);
    o.subclass_edges.insert({p, c});
  }
  const std::vector<std::string> top = {"Person", "Organisation", "Place", "Work", "Species"};
  for (size_t i = 0; i < top.size(); ++i) {
    for (size_t j = i + 1; j < top.size(); ++j) o.disjointness_pairs.insert({top[i], top[j]});
  }
}

void Generator::build_places_and_works() {
  add_category("Main_topic_classifications");
  for (const char *top : {"People", "Animals", "Companies", "Buildings", "Works", "Places"}) {
    edge("Main_topic_classifications", top);
  }
  edge("Places", "Cities");
  edge("Works", "Novels");
  edge("Works", "Films");
  edge("Places", "Rivers");
  edge("Places", "Mountains");
  cities_.resize(kCountries.size());
  works_.resize(kCountries.size());
  for (size_t c = 0; c < kCountries.size(); ++c) {
    const Country &country = kCountries[c];
    used_.insert(country.capital);
    cities_[c].push_back(country.capital);
    for (int i = 0; i < 9; ++i) cities_[c].push_back(fresh([&] { return capitalize(syllables(2, 3)); }));
    for (const auto &city : cities_[c]) {
      add_entity(city, "City");
      fact(city, "country", country.name, 1.0);
    }
    std::string cat = "Cities in " + country.name;
    edge("Cities", cat);
    add_category(cat, cities_[c]);

    // Geography keeps persons from dominating the aggregated membership
    // of the top categories.
    for (const auto &[kind, type, count] :
         {std::tuple<std::string, std::string, int>{"River", "River", 30}, {"Mount", "Mountain", 20}}) {
      std::vector<std::string> members;
      for (int i = 0; i < count; ++i) {
        std::string id = kind == "River" ? fresh([&] { return capitalize(syllables(2, 3)) + " River"; })
                                         : fresh([&] { return "Mount " + capitalize(syllables(2, 3)); });
        add_entity(id, type);
        fact(id, "country", country.name, 0.9);
        members.push_back(id);
      }
      std::string cat = (type == "River" ? "Rivers of " : "Mountains of ") + country.name;
      edge(type == "River" ? "Rivers" : "Mountains", cat);
      add_category(cat, members);
    }

    std::vector<std::string> novels, films;
    for (int i = 0; i < 8; ++i) {
      std::string w = fresh([&] { return "The " + rng_.pick(kWorkAdjectives) + " " + rng_.pick(kWorkNouns); });
      bool film = i % 2 == 1;
      add_entity(w, film ? "Film" : "Book");
      fact(w, "country", country.name, 0.9);
      (film ? films : novels).push_back(w);
      works_[c].push_back(w);
    }
    edge("Novels", country.adj + " novels");
    add_category(country.adj + " novels", novels);
    edge("Films", country.adj + " films");
    add_category(country.adj + " films", films);
  }
}

void Generator::build_combos() {
  const auto &doms = domains();
  for (size_t d = 0; d < doms.size(); ++d) {
    const Domain &dom = doms[d];
    size_t n = dom.group == Group::kMoth ? kFamilies.size() : kCountries.size();
    for (size_t q = 0; q < n; ++q) {
      Combo combo;
      combo.domain = d;
      combo.qualifier = q;
      switch (dom.group) {
        case Group::kPerson:
        case Group::kCompany:
          combo.category = kCountries[q].adj + " " + dom.plural;
          break;
        case Group::kMoth:
          combo.category = kFamilies[q] + " moths";
          break;
        case Group::kBird:
          combo.category = "Birds of " + kCountries[q].name;
          break;
        case Group::kBuilding:
          combo.category = "Buildings in " + kCountries[q].name;
          break;
      }
      std::string rest = combo.category;
      if (dom.group == Group::kBird || dom.group == Group::kBuilding) rest[0] = char(rest[0] - 'A' + 'a');
      combo.page = "List of " + rest;
      combos_.push_back(std::move(combo));
    }
  }

  std::map<size_t, int> moth_country;
  for (auto &combo : combos_) {
    const Domain &dom = doms[combo.domain];
    size_t country = dom.group == Group::kMoth ? combo.qualifier % kCountries.size() : combo.qualifier;
    for (int i = 0; i < opt_.members_per_category; ++i) {
      std::string id = subject_name(dom.group);
      add_entity(id, rng_.chance(0.08) ? "" : dom.type);
      combo.members.push_back(id);
      const Country &c = kCountries[country];
      switch (dom.group) {
        case Group::kPerson:
          persons_.push_back(id);
          fact(id, "nationality", c.name, 0.9);
          fact(id, "birthPlace", rng_.chance(0.85) ? c.capital : rng_.pick(cities_[country]), 1.0);
          fact(id, "occupation", dom.occupation, 0.95);
          fact(id, "almaMater", "University of " + c.capital, 0.8);
          break;
        case Group::kMoth:
          fact(id, "class", "Insecta", 1.0);
          fact(id, "order", "Lepidoptera", 1.0);
          fact(id, "phylum", "Arthropoda", 1.0);
          fact(id, "family", kFamilies[combo.qualifier], 0.95);
          break;
        case Group::kBird:
          fact(id, "class", "Aves", 1.0);
          fact(id, "phylum", "Chordata", 1.0);
          fact(id, "country", c.name, 0.85);
          break;
        case Group::kCompany:
          fact(id, "country", c.name, 0.9);
          fact(id, "location", c.capital, 0.8);
          break;
        case Group::kBuilding:
          fact(id, "country", c.name, 0.9);
          fact(id, "location", rng_.chance(0.85) ? c.capital : rng_.pick(cities_[country]), 1.0);
          break;
      }
    }
    add_category(combo.category, combo.members);

    switch (dom.group) {
      case Group::kPerson:
        edge("People", dom.capital);
        edge(dom.capital, combo.category);
        edge("People", kCountries[country].adj + " people");
        edge(kCountries[country].adj + " people", combo.category);
        edge("Lists of people", "Lists of " + dom.plural);
        break;
      case Group::kMoth:
      case Group::kBird:
        edge("Animals", dom.capital);
        edge(dom.capital, combo.category);
        edge("Lists of animals", "Lists of " + dom.plural);
        break;
      case Group::kCompany:
      case Group::kBuilding:
        edge(dom.capital, combo.category);
        break;
    }
    edge(dom.capital, "Lists of " + dom.plural);
  }
}

void Generator::build_category_noise() {
  const auto &doms = domains();
  for (size_t c = 0; c < kCountries.size(); ++c) {
    const Country &country = kCountries[c];
    // Singular-headed categories.
    edge("Places", country.name);
    edge(country.name, "Cities in " + country.name);
    edge(country.name, country.adj + " people");
    edge(country.name, "Culture of " + country.name);
    edge("Culture of " + country.name, country.adj + " novels");
    // Edges without hypernym support.
    edge(country.adj + " writers", country.adj + " films");
    if (c % 4 == 0) edge("People", country.adj + " novels");
  }
  for (const auto &combo : combos_) {
    const Domain &dom = doms[combo.domain];
    // Back edges closing cycles through the parent category.
    if (rng_.chance(0.2)) edge(combo.category, dom.capital);
  }
  // Mutual edges between siblings at equal depth.
  for (size_t d = 0; d < 5; ++d) {
    for (size_t c = 0; c + 1 < kCountries.size(); c += 6) {
      std::string a = kCountries[c].adj + " " + doms[d].plural;
      std::string b = kCountries[c + 1].adj + " " + doms[d].plural;
      edge(a, b);
      edge(b, a);
    }
  }
  // Maintenance categories removed by the keyword filter.
  edge("Main_topic_classifications", "Wikipedia administration");
  edge("Wikipedia administration", "Wikipedia categories named after countries");
  edge("Writers", "Writer stubs");
  add_category("Writer stubs", {combos_[0].members[0], combos_[0].members[1]});
  edge("Main_topic_classifications", "Template categories");
}

void Generator::build_evidence() {
  auto &ev = data_.evidence;
  const std::vector<std::tuple<std::string, std::string, int, double>> pairs = {
      {"people", "writers", 12, 0.9},   {"people", "actors", 9, 0.85},
      {"people", "footballers", 7, 0.8}, {"people", "politicians", 8, 0.8},
      {"people", "musicians", 6, 0.75}, {"animals", "moths", 4, 0.7},
      {"animals", "birds", 11, 0.9},    {"works", "novels", 5, 0.8},
      {"works", "films", 9, 0.85},      {"places", "cities", 10, 0.9},   {"places", "rivers", 7, 0.8},
      {"places", "mountains", 5, 0.75},
      {"insects", "moths", 6, 0.8}};
  for (const auto &[hyper, hypo, n, conf] : pairs) {
    ev.hearst[{hyper, hypo}] = n;
    ev.webisalod[{hyper, hypo}] = conf;
  }
  // Single-source noise: one vote is not enough.
  ev.hearst[{"people", "films"}] = 3;
  ev.webisalod[{"people", "novels"}] = 0.5;
  ev.hearst[{"writers", "films"}] = 1;
  data_.synonyms.add("footballers", "soccer players");
  data_.synonyms.add("films", "movies");
}

std::string Generator::distractor(Distractor kind, size_t country) {
  switch (kind) {
    case Distractor::kCity: return rng_.pick(cities_[country]);
    case Distractor::kWork: return rng_.pick(works_[country]);
    case Distractor::kPerson: return rng_.pick(persons_);
  }
  return "";
}

std::string Generator::next_subject(const Combo &combo, std::vector<std::string> *pool,
                                    std::set<std::string> *truth, std::string *plain) {
  const Domain &dom = domains()[combo.domain];
  double r = rng_.unit();
  std::string name;
  if (r < 0.72 && !pool->empty()) {
    name = pool->back();
    pool->pop_back();
  } else if (r < 0.80) {
    // Known entity of the same kind that is not a member of this category.
    for (;;) {
      const Combo &other = rng_.pick(combos_);
      if (other.domain == combo.domain && other.category != combo.category) {
        name = rng_.pick(other.members);
        break;
      }
    }
  } else {
    name = subject_name(dom.group);
  }
  truth->insert(name);
  *plain = name;
  return "[[" + name + "]]";
}

std::string Generator::page_tail(const Combo &combo) {
  const Domain &dom = domains()[combo.domain];
  std::string out = "\n== See also ==\n";
  for (int i = 0; i < 2; ++i) {
    const Combo &other = rng_.pick(combos_);
    if (other.page != combo.page) out += "* [[" + other.page + "]]\n";
  }
  out += "\n[[Category:Lists of " + dom.plural + "]]\n[[Category:" + combo.category + "]]\n";
  return out;
}

std::string Generator::enum_page(const Combo &combo, std::set<std::string> *truth) {
  const Domain &dom = domains()[combo.domain];
  size_t country = dom.group == Group::kMoth ? combo.qualifier % kCountries.size() : combo.qualifier;
  std::vector<std::string> pool = combo.members;
  rng_.shuffle(&pool);

  std::string text = "{{Short description|Wikipedia list article}}\n'''" + combo.page +
                     "''' is a list of notable " + dom.plural + ".<ref>{{cite web|title=Index}}</ref>\n";
  int entries = rng_.uniform(15, 35);
  int sections = rng_.uniform(1, 3);
  static const std::vector<std::string> kSectionNames = {"A-F", "G-M", "N-S", "T-Z"};
  for (int s = 0; s < sections; ++s) {
    text += "\n== " + kSectionNames[size_t(s)] + " ==\n";
    int n = s + 1 == sections ? entries - (entries / sections) * s : entries / sections;
    for (int i = 0; i < n; ++i) {
      std::string plain;
      std::string subj = next_subject(combo, &pool, truth, &plain);
      std::string d1 = "[[" + distractor(dom.d1, country) + "]]";
      std::string d2 = "[[" + distractor(dom.d2, country) + "]]";
      if (dom.d2 == Distractor::kWork) d2 = "''" + d2 + "''";
      std::string year = std::to_string(rng_.uniform(1850, 2010));
      std::string line;
      if (rng_.chance(opt_.noise_rate)) {
        double r = rng_.unit();
        if (r < 0.4) {
          line = dom.d2 == Distractor::kWork ? "* " + d2 + " by " + subj + " (" + year + ")"
                                             : "* " + d2 + " " + dom.d2_verb + " " + subj + " in " + year;
        } else if (r < 0.7) {
          static const char *kLead[] = {"In", "By", "From"};
          line = std::string("* ") + kLead[int(dom.d1)] + " " + d1 + ": " + subj + " (" + year + ")";
        } else {
          truth->erase(plain);
          line = "* " + plain + " (" + year + "), " + dom.d1_phrase + " " + d1;
        }
      } else {
        double r = rng_.unit();
        if (r < 0.35) {
          line = "* " + subj + " (" + year + "), " + dom.d1_phrase + " " + d1;
        } else if (r < 0.65) {
          line = "* " + subj + ", " + dom.d2_phrase + " " + d2;
        } else if (r < 0.75) {
          line = "* " + subj;
        } else {
          line = "* " + subj + " (" + year + ") - " + dom.d1_phrase + " " + d1 + ", " +
                 dom.d2_phrase + " " + d2;
        }
      }
      if (rng_.chance(0.05)) line += "<ref>{{cite book|title=Register}}</ref>";
      text += line + "\n";
      if (rng_.chance(0.05)) text += "** " + dom.d2_phrase + " " + d2 + "\n";
    }
  }
  return text + page_tail(combo);
}

std::string Generator::table_page(const Combo &combo, std::set<std::string> *truth) {
  const Domain &dom = domains()[combo.domain];
  size_t country = dom.group == Group::kMoth ? combo.qualifier % kCountries.size() : combo.qualifier;
  std::vector<std::string> pool = combo.members;
  rng_.shuffle(&pool);

  std::string text = "'''" + combo.page + "''' lists notable " + dom.plural + ".\n";
  int tables = rng_.uniform(1, 2);
  for (int t = 0; t < tables; ++t) {
    // Layout B puts a distractor column before the subject column.
    bool subject_first = rng_.chance(0.5);
    text += "\n== " + std::string(t == 0 ? "Main list" : "Further entries") + " ==\n";
    text += "{| class=\"wikitable sortable\"\n";
    if (subject_first) {
      text += "! " + dom.header + " !! Year !! " + dom.d1_header + " !! " + dom.d2_header + "\n";
    } else {
      text += "! Year !! " + dom.d2_header + " !! " + dom.header + " !! " + dom.d1_header + "\n";
    }
    int rows = rng_.uniform(10, 20);
    for (int r = 0; r < rows; ++r) {
      std::string plain;
      std::string subj = next_subject(combo, &pool, truth, &plain);
      if (rng_.chance(opt_.noise_rate)) {
        truth->erase(plain);
        subj = plain;
      }
      std::string d1 = "[[" + distractor(dom.d1, country) + "]]";
      std::string d2 = "[[" + distractor(dom.d2, country) + "]]";
      if (dom.d2 == Distractor::kWork) d2 = "''" + d2 + "''";
      std::string year = std::to_string(rng_.uniform(1850, 2010));
      text += "|-\n";
      if (subject_first) {
        text += "| " + subj + " || " + year + " || " + d1 + " || " + d2 + "\n";
      } else {
        text += "| " + year + " || " + d2 + " || " + subj + " || " + d1 + "\n";
      }
    }
    text += "|}\n";
  }
  return text + page_tail(combo);
}

BundleData Generator::run(FixtureTruth *truth) {
  build_ontology();
  build_places_and_works();
  build_combos();
  build_category_noise();
  build_evidence();

  std::vector<size_t> order(combos_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng_.shuffle(&order);
  // Pages carrying the planted new entities come first.
  auto front = [&](const std::string &page) {
    for (size_t i = 0; i < order.size(); ++i) {
      if (combos_[order[i]].page == page) {
        size_t v = order[i];
        order.erase(order.begin() + long(i));
        order.insert(order.begin(), v);
        return;
      }
    }
  };
  front("List of Erebidae moths");
  front("List of Brazilian actors");
  size_t n = std::min(order.size(), size_t(std::max(opt_.list_pages, 0)));

  FixtureTruth local;
  for (size_t k = 0; k < n; ++k) {
    const Combo &combo = combos_[order[k]];
    std::set<std::string> &t = local[combo.page];
    bool planted = combo.page == "List of Brazilian actors" || combo.page == "List of Erebidae moths";
    std::string text = planted || !rng_.chance(opt_.table_share) ? enum_page(combo, &t)
                                                                 : table_page(combo, &t);
    if (combo.page == "List of Brazilian actors") {
      std::string line = "* [[Dan Stulbach]] (1969), born in [[Sao Paulo]]\n";
      text.insert(text.find("\n* ") + 1, line);
      t.insert("Dan Stulbach");
    } else if (combo.page == "List of Erebidae moths") {
      std::string line = "* [[Rioja (moth)|Rioja]] (1890), recorded near [[" + cities_[1][0] + "]]\n";
      text.insert(text.find("\n* ") + 1, line);
      t.insert("Rioja (moth)");
    }
    data_.pages[combo.page] = text;
  }
  if (truth) *truth = std::move(local);
  return std::move(data_);
}

}  // namespace

BundleData generate_fixture(const FixtureOptions &options, FixtureTruth *truth) {
  if (options.list_pages < 0) throw Error("list_pages must be >= 0");
  if (options.noise_rate < 0.0 || options.noise_rate > 1.0) throw Error("noise_rate must be in [0,1]");
  if (options.table_share < 0.0 || options.table_share > 1.0) {
    throw Error("table_share must be in [0,1]");
  }
  if (options.members_per_category < 2) throw Error("members_per_category must be >= 2");
  return Generator(options).run(truth);
}

void write_fixture(const std::string &dir, const FixtureOptions &options) {
  FixtureTruth truth;
  CorpusBundle bundle(generate_fixture(options, &truth));
  write_bundle(bundle, dir);
  std::ofstream out(std::filesystem::path(dir) / "ground_truth.jsonl", std::ios::binary);
  if (!out) throw Error("cannot write ground_truth.jsonl in " + dir);
  for (const auto &[page, subjects] : truth) {
    nlohmann::json obj = {{"page", page}, {"subjects", subjects}};
    out << obj.dump() << '\n';
  }
}

}  // namespace listforge
