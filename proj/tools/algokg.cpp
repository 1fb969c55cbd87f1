#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algokg/config.hpp"
#include "algokg/corpus.hpp"
#include "algokg/extractor.hpp"
#include "algokg/kg.hpp"
#include "algokg/mapping_dsl.hpp"
#include "algokg/net.hpp"
#include "algokg/normalizer.hpp"
#include "algokg/query.hpp"

namespace {

struct CommonOptions {
  std::string config_file;
  std::string root_url;
  std::string resource_namespace;
  double delay = -1;
  long seed = 0;  // accepted for script compatibility; nothing is random
};

algokg::PatternConfig effective_config(const CommonOptions& opts) {
  algokg::PatternConfig config;
  if (!opts.config_file.empty())
    config = algokg::load_config_file(opts.config_file);
  if (!opts.root_url.empty()) config.root_url = opts.root_url;
  if (!opts.resource_namespace.empty())
    config.resource_namespace = opts.resource_namespace;
  if (opts.delay >= 0) config.politeness_delay_seconds = opts.delay;
  algokg::apply_environment(config);
  return config;
}

void print_diagnostics(const algokg::Diagnostics& diags) {
  for (const std::string& message : diags.messages)
    std::cerr << "warning: " << message << "\n";
}

algokg::CorpusSnapshot load_snapshot(bool live, const std::string& fixtures,
                                     const algokg::PatternConfig& config,
                                     algokg::Diagnostics& diags) {
  if (live) {
    algokg::Fetcher fetcher = algokg::make_polite_fetcher(
        algokg::make_http_fetcher(), config.politeness_delay_seconds);
    return algokg::load_live_corpus(fetcher, config, &diags);
  }
  return algokg::load_fixture_corpus(fixtures, config, &diags);
}

algokg::Vocabulary load_vocab(const std::string& vocab_file,
                              const algokg::PatternConfig& config) {
  algokg::Vocabulary vocab =
      vocab_file.empty()
          ? algokg::default_vocabulary()
          : algokg::parse_vocabulary(algokg::read_file(vocab_file));
  // a namespace set via flag or settings file wins over the vocab file
  if (config.resource_namespace != algokg::PatternConfig{}.resource_namespace)
    vocab.base_resource_ns = config.resource_namespace;
  return vocab;
}

algokg::RdfFormat format_for(const std::string& flag,
                             const std::string& path) {
  if (flag == "turtle") return algokg::RdfFormat::Turtle;
  if (flag == "ntriples") return algokg::RdfFormat::NTriples;
  if (path.ends_with(".ttl") || path.ends_with(".turtle"))
    return algokg::RdfFormat::Turtle;
  return algokg::RdfFormat::NTriples;
}

algokg::Graph read_graph(const std::string& path, const std::string& flag) {
  return algokg::parse_graph(algokg::read_file(path),
                             format_for(flag, path));
}

algokg::Graph map_table(const algokg::ProcessedTable& table,
                        const std::string& rules_file,
                        const algokg::Vocabulary& vocab) {
  algokg::RuleSet rules =
      rules_file.empty()
          ? algokg::default_rules(table.header)
          : algokg::parse_rules(algokg::read_file(rules_file));
  return algokg::apply_rules(rules, table, vocab);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knowledge graph pipeline for an algorithm repository"};
  app.require_subcommand(1);

  CommonOptions opts;
  app.add_option("--config", opts.config_file, "key=value settings file");
  app.add_option("--root-url", opts.root_url, "homepage URL");
  app.add_option("--namespace", opts.resource_namespace,
                 "resource namespace for minted IRIs");
  app.add_option("--delay", opts.delay,
                 "politeness delay between live fetches, seconds");
  app.add_option("--seed", opts.seed,
                 "accepted and ignored; nothing is randomized");

  bool live = false;
  std::string fixtures;
  std::string out;
  std::string format = "auto";
  std::string rules_file;
  std::string vocab_file;

  auto* crawl_cmd =
      app.add_subcommand("crawl", "extract raw records into a csv table");
  crawl_cmd->add_flag("--live", live, "fetch the live site");
  crawl_cmd->add_option("--fixtures", fixtures, "fixture corpus directory");
  crawl_cmd->add_option("--out", out, "output csv path")->required();

  std::string input;
  auto* normalize_cmd = app.add_subcommand(
      "normalize", "unpack multi-valued fields into the wide table");
  normalize_cmd->add_option("input", input, "raw csv path")->required();
  normalize_cmd->add_option("--out", out, "output csv path")->required();

  auto* map_cmd =
      app.add_subcommand("map", "apply mapping rules to a processed table");
  map_cmd->add_option("input", input, "processed csv path")->required();
  map_cmd->add_option("--rules", rules_file, "mapping rule file");
  map_cmd->add_option("--vocab", vocab_file, "vocabulary file");
  map_cmd->add_option("--out", out, "output graph path")->required();
  map_cmd->add_option("--format", format, "ntriples|turtle")
      ->check(CLI::IsMember({"auto", "ntriples", "turtle"}));

  auto* build_cmd =
      app.add_subcommand("build", "run the full pipeline to a graph dump");
  build_cmd->add_flag("--live", live, "fetch the live site");
  build_cmd->add_option("--fixtures", fixtures, "fixture corpus directory");
  build_cmd->add_option("--rules", rules_file, "mapping rule file");
  build_cmd->add_option("--vocab", vocab_file, "vocabulary file");
  build_cmd->add_option("--out", out, "output graph path")->required();
  build_cmd->add_option("--format", format, "ntriples|turtle")
      ->check(CLI::IsMember({"auto", "ntriples", "turtle"}));

  std::string query_file;
  std::string canned;
  bool csv_output = false;
  auto* query_cmd = app.add_subcommand("query", "run a query over a dump");
  query_cmd->add_option("input", input, "graph dump path")->required();
  query_cmd->add_option("--query", query_file, "query file");
  query_cmd->add_option("--canned", canned, "canned query name (Q1|Q2|Q3)");
  query_cmd->add_option("--out", out, "write results here instead of stdout");
  query_cmd->add_flag("--csv", csv_output, "emit a csv table");
  query_cmd->add_option("--format", format, "ntriples|turtle input")
      ->check(CLI::IsMember({"auto", "ntriples", "turtle"}));

  auto* stats_cmd = app.add_subcommand("stats", "print graph statistics");
  stats_cmd->add_option("input", input, "graph dump path")->required();
  stats_cmd->add_option("--vocab", vocab_file, "vocabulary file");
  stats_cmd->add_option("--format", format, "ntriples|turtle input")
      ->check(CLI::IsMember({"auto", "ntriples", "turtle"}));

  auto* validate_cmd =
      app.add_subcommand("validate", "check a dump against the vocabulary");
  validate_cmd->add_option("input", input, "graph dump path")->required();
  validate_cmd->add_option("--vocab", vocab_file, "vocabulary file");
  validate_cmd->add_option("--format", format, "ntriples|turtle input")
      ->check(CLI::IsMember({"auto", "ntriples", "turtle"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    algokg::PatternConfig config = effective_config(opts);
    algokg::Diagnostics diags;

    if (crawl_cmd->parsed() || build_cmd->parsed()) {
      if (live ? !fixtures.empty() : fixtures.empty()) {
        std::cerr << "error: pass exactly one of --fixtures DIR or --live\n";
        return 1;
      }
      algokg::CorpusSnapshot snapshot =
          load_snapshot(live, fixtures, config, diags);
      std::vector<algokg::RawProblemRecord> records =
          algokg::crawl(snapshot, config, &diags);
      print_diagnostics(diags);
      if (crawl_cmd->parsed()) {
        algokg::export_table(records, out);
        std::cerr << records.size() << " records written to " << out << "\n";
        return 0;
      }
      algokg::Diagnostics norm_diags;
      std::vector<algokg::AlgorithmProblem> problems =
          algokg::normalize(records, &norm_diags);
      print_diagnostics(norm_diags);
      algokg::ProcessedTable table = algokg::expand_table(problems);
      algokg::Vocabulary vocab = load_vocab(vocab_file, config);
      algokg::Graph graph = map_table(table, rules_file, vocab);
      algokg::write_file(
          out, algokg::serialize_graph(graph, format_for(format, out)));
      std::cerr << graph.size() << " triples written to " << out << "\n";
      return 0;
    }

    if (normalize_cmd->parsed()) {
      std::vector<algokg::RawProblemRecord> records =
          algokg::import_raw_table(input);
      std::vector<algokg::AlgorithmProblem> problems =
          algokg::normalize(records, &diags);
      print_diagnostics(diags);
      algokg::export_processed_table(algokg::expand_table(problems), out);
      std::cerr << problems.size() << " rows written to " << out << "\n";
      return 0;
    }

    if (map_cmd->parsed()) {
      algokg::ProcessedTable table = algokg::import_processed_table(input);
      algokg::Vocabulary vocab = load_vocab(vocab_file, config);
      algokg::Graph graph = map_table(table, rules_file, vocab);
      algokg::write_file(
          out, algokg::serialize_graph(graph, format_for(format, out)));
      std::cerr << graph.size() << " triples written to " << out << "\n";
      return 0;
    }

    if (query_cmd->parsed()) {
      if (query_file.empty() == canned.empty()) {
        std::cerr << "error: pass exactly one of --query FILE or --canned NAME\n";
        return 1;
      }
      std::string text;
      if (!canned.empty()) {
        const auto& queries = algokg::canned_queries();
        auto it = queries.find(canned);
        if (it == queries.end()) {
          std::cerr << "error: unknown canned query: " << canned << "\n";
          return 1;
        }
        text = it->second;
      } else {
        text = algokg::read_file(query_file);
      }
      algokg::Graph graph = read_graph(input, format);
      algokg::ResultTable result =
          algokg::evaluate(algokg::parse_query(text), graph);
      std::string rendered = csv_output ? algokg::result_to_csv(result)
                                        : algokg::result_to_text(result);
      if (out.empty())
        std::cout << rendered;
      else
        algokg::write_file(out, rendered);
      std::cerr << result.rows.size() << " rows\n";
      return 0;
    }

    if (stats_cmd->parsed()) {
      algokg::Graph graph = read_graph(input, format);
      algokg::Vocabulary vocab = load_vocab(vocab_file, config);
      algokg::KgStats s = algokg::stats(graph, vocab);
      std::cout << "individuals: " << s.individuals << "\n"
                << "triples: " << s.triples << "\n"
                << "classes-used: " << s.classes_used << "\n"
                << "object-properties-used: " << s.object_properties_used
                << "\n"
                << "data-properties-used: " << s.data_properties_used << "\n";
      return 0;
    }

    if (validate_cmd->parsed()) {
      algokg::Graph graph = read_graph(input, format);
      algokg::Vocabulary vocab = load_vocab(vocab_file, config);
      std::vector<algokg::Violation> violations =
          algokg::validate_schema(graph, vocab);
      for (const algokg::Violation& v : violations)
        std::cout << v.message << "\n";
      std::cout << violations.size() << " violations\n";
      return violations.empty() ? 0 : 1;
    }
  } catch (const algokg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
