// Command-line entry point for the listforge pipeline.

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "listforge/fixture.h"
#include "listforge/gbdt.h"
#include "listforge/pipeline.h"
#include "listforge/util.h"

namespace {

using listforge::PipelineConfig;

struct Overrides {
  std::string config;
  std::optional<std::string> corpus;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<uint64_t> seed;
};

void add_common(CLI::App *cmd, Overrides *o) {
  cmd->add_option("--config", o->config, "JSON config file");
  cmd->add_option("--corpus", o->corpus, "Corpus bundle directory");
  cmd->add_option("--out", o->out, "Output directory");
  cmd->add_option("--threads", o->threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o->seed, "Seed for fold assignment and boosting");
}

PipelineConfig resolve(const Overrides &o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig() : listforge::load_config(o.config);
  if (o.corpus) c.corpus = *o.corpus;
  if (o.out) c.out = *o.out;
  if (o.threads) c.threads = *o.threads;
  if (o.seed) {
    c.seed = *o.seed;
    c.gbdt.seed = *o.seed;
  }
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Taxonomy induction and entity extraction from Wikipedia list pages"};
  app.require_subcommand(1);

  listforge::FixtureOptions fixture;
  std::string fixture_out = "corpus";
  auto *gen = app.add_subcommand("gen-fixture", "Write a synthetic corpus bundle with ground truth");
  gen->add_option("--out", fixture_out, "Output directory");
  gen->add_option("--pages", fixture.list_pages, "Number of list pages")->check(CLI::NonNegativeNumber);
  gen->add_option("--noise", fixture.noise_rate, "Share of noisy entries")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--table-share", fixture.table_share, "Share of table pages")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--members", fixture.members_per_category, "Members per category")
      ->check(CLI::Range(2, 100000));
  gen->add_option("--seed", fixture.seed, "Generator seed");

  struct Stage {
    const char *name;
    const char *help;
    nlohmann::json (*run)(const PipelineConfig &);
  };
  const Stage stages[] = {
      {"build-taxonomy", "Clean the category and list graphs and induce axioms",
       listforge::cmd_build_taxonomy},
      {"label", "Distantly label list-page mentions", listforge::cmd_label},
      {"train", "Train the per-layout subject classifiers", listforge::cmd_train},
      {"extract", "Classify subjects and emit N-Triples", listforge::cmd_extract},
      {"eval", "Compare the classifier against the pick-first baseline", listforge::cmd_eval},
  };
  std::vector<std::pair<CLI::App *, const Stage *>> commands;
  Overrides overrides;
  for (const Stage &s : stages) {
    CLI::App *cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, &overrides);
    commands.emplace_back(cmd, &s);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      listforge::write_fixture(fixture_out, fixture);
      std::cout << nlohmann::json{{"out", fixture_out}, {"pages", fixture.list_pages}}.dump() << '\n';
      return 0;
    }
    for (const auto &[cmd, stage] : commands) {
      if (!*cmd) continue;
      nlohmann::json summary = stage->run(resolve(overrides));
      std::cout << summary.dump(2) << '\n';
    }
    return 0;
  } catch (const listforge::MissingInputError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const listforge::SingleClassError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
