// Acceptance suite: one line per criterion, nonzero exit when a required
// criterion fails. Criterion 8 needs the live site and is skipped unless
// ALGOKG_LIVE=1; its outcome is reported but never fatal.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "algokg/corpus.hpp"
#include "algokg/extractor.hpp"
#include "algokg/kg.hpp"
#include "algokg/mapping_dsl.hpp"
#include "algokg/net.hpp"
#include "algokg/normalizer.hpp"
#include "algokg/query.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace algokg;

namespace {

struct Check {
  std::string name;
  bool required = true;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::vector<AlgorithmProblem> fixture_problems() {
  return normalize(crawl(testutil::full_corpus(), PatternConfig{}));
}

bool check_extraction(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  const PageContent& page = testutil::page(
      testutil::full_corpus(),
      "https://algorist.com/problems/TravelingSalesmanProblem.html");
  RawProblemRecord record =
      extract_record(page, "Hard_Problems", PatternConfig{});
  double elapsed = seconds_since(start);

  if (normalize_ws(record.input_description) != "A weighted graph G") {
    detail = "input_description was '" + record.input_description + "'";
    return false;
  }
  if (!starts_with(normalize_ws(record.problem_statement),
                   "Find the cycle of minimum cost")) {
    detail = "problem_statement was '" + record.problem_statement + "'";
    return false;
  }
  std::vector<Implementation> impls =
      split_implementations(record.implementations);
  if (impls.size() != 8) {
    detail = "expected 8 implementations, got " +
             std::to_string(impls.size());
    return false;
  }
  bool concorde_ok = false;
  for (const Implementation& impl : impls)
    if (impl.name == "Concorde" && impl.rating == 10) concorde_ok = true;
  if (!concorde_ok) {
    detail = "Concorde with rating 10 not found";
    return false;
  }
  if (split_books(record.recommended_books).size() != 2) {
    detail = "expected 2 recommended books";
    return false;
  }
  std::vector<RelatedProblemRef> related =
      split_related(record.related_problems);
  if (related.size() != 3 || related[0].name != "Convex Hull" ||
      related[1].name != "Hamiltonian Cycle" ||
      related[2].name != "Minimum Spanning Tree") {
    detail = "related problems mismatch";
    return false;
  }
  if (elapsed >= 1.0) {
    detail = "took " + std::to_string(elapsed) + "s";
    return false;
  }
  return true;
}

bool check_book_parsing(std::string& detail) {
  struct Case {
    std::string entry;
    std::string title;
    std::size_t authors;
  };
  const std::vector<Case> cases = {
      {"Practical Algorithms for Programmers by A. Binstock and J. Rex",
       "Practical Algorithms for Programmers", 2},
      {"Handbook of Algorithms and Data Structures by G. Gonnet and "
       "R. Baeza-Yates",
       "Handbook of Algorithms and Data Structures", 2},
      {"The Design and Analysis of Computer Algorithms by A. Aho and "
       "J. Hopcroft and J. Ullman",
       "The Design and Analysis of Computer Algorithms", 3},
      {"Regular Algebra and Finite Machines by J. H. Conway",
       "Regular Algebra and Finite Machines", 1},
  };
  for (const Case& c : cases) {
    Book book = parse_book(c.entry);
    if (book.title != c.title) {
      detail = "title was '" + book.title + "'";
      return false;
    }
    if (book.authors.size() != c.authors) {
      detail = "author count for '" + c.title + "' was " +
               std::to_string(book.authors.size());
      return false;
    }
  }
  return true;
}

bool check_pack_round_trip(std::string& detail) {
  std::mt19937 rng(90210);
  const std::string name_chars =
      "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-._";
  for (int iter = 0; iter < 1000; ++iter) {
    int n = testutil::rand_int(rng, 0, 8);
    std::vector<LanguageEntry> entries;
    for (int i = 0; i < n; ++i) {
      LanguageEntry e;
      e.problem_url = "https://algorist.com/problems/X.html";
      e.impl_name = trim(testutil::random_word(rng, 1, 14, name_chars));
      if (e.impl_name.empty()) e.impl_name = "name";
      e.impl_url = "https://repo.example/" +
                   testutil::random_word(rng, 1, 10, "abcdefg123");
      e.rating = std::to_string(testutil::rand_int(rng, 1, 10));
      e.language = testutil::random_word(rng, 1, 6, "CJPRabc+");
      entries.push_back(std::move(e));
    }
    std::vector<Implementation> impls =
        split_implementations(pack_implementations(entries));

    std::vector<Implementation> expected;
    for (const LanguageEntry& e : entries) {
      std::string name = normalize_ws(e.impl_name);
      std::string url = normalize_ws(e.impl_url);
      auto it = std::find_if(expected.begin(), expected.end(),
                             [&](const Implementation& m) {
                               return m.name == name &&
                                      m.url == std::optional(url);
                             });
      if (it == expected.end()) {
        Implementation m;
        m.name = name;
        m.url = url;
        m.rating = std::stoi(e.rating);
        m.languages.push_back(e.language);
        expected.push_back(std::move(m));
      } else if (std::find(it->languages.begin(), it->languages.end(),
                           e.language) == it->languages.end()) {
        it->languages.push_back(e.language);
      }
    }
    if (impls != expected) {
      detail = "mismatch at iteration " + std::to_string(iter);
      return false;
    }
  }
  return true;
}

bool check_dual_path(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::vector<AlgorithmProblem> problems = fixture_problems();
  if (problems.size() != 5) {
    detail = "fixture corpus did not yield 5 problems";
    return false;
  }
  Graph direct = build_graph(problems, default_vocabulary());
  ProcessedTable table = expand_table(problems);
  Graph via_rules =
      apply_rules(default_rules(table.header), table, default_vocabulary());
  if (direct.triples != via_rules.triples) {
    detail = "triple sets differ: " + std::to_string(direct.size()) +
             " vs " + std::to_string(via_rules.size());
    return false;
  }
  std::string a = serialize_graph(direct, RdfFormat::NTriples);
  std::string b = serialize_graph(via_rules, RdfFormat::NTriples);
  if (a != b) {
    detail = "serialized dumps differ";
    return false;
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 5.0) {
    detail = "took " + std::to_string(elapsed) + "s";
    return false;
  }
  return true;
}

bool check_mapping_arity(std::string& detail) {
  std::mt19937 rng(40405);
  for (int iter = 0; iter < 100; ++iter) {
    ProcessedTable table = oracles::random_table(rng, iter % 2 == 0);
    RuleSet rules = default_rules(table.header);
    Graph g = apply_rules(rules, table, default_vocabulary());
    std::size_t expected =
        oracles::expected_triple_count(rules, table, default_vocabulary());
    if (g.size() != expected) {
      detail = "iteration " + std::to_string(iter) + ": got " +
               std::to_string(g.size()) + ", oracle " +
               std::to_string(expected);
      return false;
    }
  }
  return true;
}

bool check_query_oracle(std::string& detail) {
  // the shipped Q1 against the fixture graph, frozen expected rows
  Graph fixture_graph = build_graph(fixture_problems(), default_vocabulary());
  QueryAST q1 = parse_query(canned_queries().at("Q1"));
  ResultTable result = evaluate(q1, fixture_graph);

  const std::string res = "https://w3id.org/amv/resource/";
  const std::string amv = "https://w3id.org/amv#";
  auto row = [&](const std::string& problem, const std::string& type,
                 const std::string& desc, const std::string& impl,
                 const std::string& uri, const std::string& lang) {
    return std::vector<Term>{Term::iri(res + problem), Term::iri(amv + type),
                             Term::literal(desc), Term::iri(res + impl),
                             Term::literal(uri), Term::iri(res + lang)};
  };
  std::vector<std::vector<Term>> expected = {
      row("Priority_Queues", "Data_Structures",
          "Build and maintain a data structure for providing quick access "
          "to the smallest or largest key in the set",
          "libstdc%2B%2B", "https://gcc.gnu.org/onlinedocs/libstdc++/",
          "C%2B%2B"),
      row("Convex_Hull", "Computational_Geometry",
          "Find the smallest convex polygon containing all the points of S",
          "Qhull", "http://www.qhull.org/", "C"),
      row("Convex_Hull", "Computational_Geometry",
          "Find the smallest convex polygon containing all the points of S",
          "Qhull", "http://www.qhull.org/", "C%2B%2B"),
      row("Dictionaries", "Data_Structures",
          "Build and maintain a data structure to efficiently locate, "
          "insert, and delete the record associated with any query key",
          "libcpp", "https://llvm.org/svn/llvm-project/libcxx/trunk/",
          "C%2B%2B"),
      row("Dictionaries", "Data_Structures",
          "Build and maintain a data structure to efficiently locate, "
          "insert, and delete the record associated with any query key",
          "libstdc%2B%2B", "https://gcc.gnu.org/onlinedocs/libstdc++/",
          "C%2B%2B"),
  };
  std::sort(expected.begin(), expected.end());
  if (result.rows != expected) {
    detail = "Q1 returned " + std::to_string(result.rows.size()) +
             " rows, expected 5 hand-derived rows";
    return false;
  }
  if (result.rows != oracles::nested_loop_query(q1, fixture_graph)) {
    detail = "Q1 disagrees with the nested-loop join";
    return false;
  }

  // randomized queries against the brute-force join
  std::mt19937 rng(60606);
  for (int iter = 0; iter < 200; ++iter) {
    int max_triples = iter % 50 == 0 ? 1500 : 250;
    Graph g = oracles::random_graph(rng, max_triples);
    QueryAST ast = oracles::random_query(rng, g, 8);
    ResultTable got = evaluate(ast, g);
    if (got.rows != oracles::nested_loop_query(ast, g)) {
      detail = "random query mismatch at iteration " + std::to_string(iter);
      return false;
    }
  }

  // one graph at the 20,000-triple bound with selective chained patterns
  Graph big;
  big.prefixes = {{"ex", "http://big.example/"}};
  for (int i = 0; i < 10000; ++i) {
    std::string a = "http://big.example/n" + std::to_string(i);
    std::string b = "http://big.example/n" + std::to_string((i * 7) % 10000);
    big.add(a, "http://big.example/edge", Term::iri(b));
    big.add(a, "http://big.example/value",
            Term::literal(std::to_string(i % 97)));
  }
  // n1 -> n7 -> n49 -> n343, and 343 % 97 == 52
  QueryAST chain = parse_query(
      "PREFIX ex: <http://big.example/>\n"
      "SELECT DISTINCT ?a ?c WHERE {\n"
      "  ex:n1 ex:edge ?a . ?a ex:edge ?b . ?b ex:edge ?c .\n"
      "  ?c ex:value \"52\" .\n"
      "}");
  ResultTable chained = evaluate(chain, big);
  if (chained.rows.empty() ||
      chained.rows != oracles::nested_loop_query(chain, big)) {
    detail = "chained query on the 20000-triple graph disagrees";
    return false;
  }
  return true;
}

bool check_serializer_round_trip(std::string& detail) {
  std::mt19937 rng(2468);
  for (int iter = 0; iter < 500; ++iter) {
    Graph g = oracles::random_graph(rng, 80);
    Graph nt = parse_graph(serialize_graph(g, RdfFormat::NTriples),
                           RdfFormat::NTriples);
    if (nt.triples != g.triples) {
      detail = "n-triples mismatch at iteration " + std::to_string(iter);
      return false;
    }
    Graph ttl = parse_graph(serialize_graph(g, RdfFormat::Turtle),
                            RdfFormat::Turtle);
    if (ttl.triples != g.triples) {
      detail = "turtle mismatch at iteration " + std::to_string(iter);
      return false;
    }
    // byte stability under insertion order
    std::vector<Triple> shuffled(g.triples.begin(), g.triples.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Graph permuted;
    permuted.prefixes = g.prefixes;
    for (const Triple& t : shuffled) permuted.add(t);
    if (serialize_graph(permuted, RdfFormat::NTriples) !=
        serialize_graph(g, RdfFormat::NTriples)) {
      detail = "dump not stable under permutation at iteration " +
               std::to_string(iter);
      return false;
    }
  }
  return true;
}

bool check_live_shape(std::string& detail) {
  PatternConfig config;
  apply_environment(config);
  Fetcher fetcher = make_polite_fetcher(make_http_fetcher(),
                                        config.politeness_delay_seconds);
  Diagnostics diags;
  CorpusSnapshot snapshot = load_live_corpus(fetcher, config, &diags);
  std::vector<AlgorithmProblem> problems =
      normalize(crawl(snapshot, config, &diags));
  ProcessedTable table = expand_table(problems);
  TableLayout layout = table_layout_of(problems);
  bool ok = true;
  detail = std::to_string(problems.size()) + " problems, " +
           std::to_string(table.header.size()) + " columns";
  if (problems.size() != 75) ok = false;
  if (table.header.size() != layout.width()) ok = false;
  Graph g = build_graph(problems, default_vocabulary());
  KgStats s = stats(g, default_vocabulary());
  detail += ", " + std::to_string(s.individuals) + " individuals, " +
            std::to_string(s.triples) + " triples";
  // reference values with the documented ±25% tolerance
  if (s.individuals < 1120 || s.individuals > 1868) ok = false;
  if (s.triples < 7279 || s.triples > 12133) ok = false;
  return ok;
}

bool check_schema_validation(std::string& detail) {
  std::vector<AlgorithmProblem> problems = fixture_problems();
  ProcessedTable table = expand_table(problems);
  const Vocabulary& vocab = default_vocabulary();

  Graph direct = build_graph(problems, vocab);
  Graph via_rules = apply_rules(default_rules(table.header), table, vocab);
  if (!validate_schema(direct, vocab).empty() ||
      !validate_schema(via_rules, vocab).empty()) {
    detail = "pipeline graph has violations";
    return false;
  }

  Graph seeded = direct;
  const std::string dict = "https://w3id.org/amv/resource/Dictionaries";
  seeded.add(dict, "https://w3id.org/amv#unknownProperty",
             Term::literal("x"));
  seeded.add(dict, vocab_names::has_implementation,
             Term::literal("a literal where a node belongs"));
  seeded.add(dict, vocab_names::title,
             Term::iri("https://w3id.org/amv/resource/Dictionaries"));
  seeded.add("https://w3id.org/amv/resource/UntypedStray",
             vocab_names::title, Term::literal("stray"));
  std::size_t violations = validate_schema(seeded, vocab).size();
  if (violations != 4) {
    detail = "seeded 4 violations, found " + std::to_string(violations);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Check> checks;
  auto run = [&](const std::string& name, bool required, auto&& fn) {
    Check check;
    check.name = name;
    check.required = required;
    try {
      check.passed = fn(check.detail);
    } catch (const std::exception& e) {
      check.passed = false;
      check.detail = e.what();
    }
    checks.push_back(check);
  };

  run("1. ten-element extraction from the TSP fixture page", true,
      check_extraction);
  run("2. book strings parse to exact titles and author counts", true,
      check_book_parsing);
  run("3. packed implementation round trip, 1000 random lists", true,
      check_pack_round_trip);
  run("4. direct graph equals rule-applied graph on the fixture corpus",
      true, check_dual_path);
  run("5. rule application matches the counting oracle, 100 tables", true,
      check_mapping_arity);
  run("6. query engine matches the nested-loop join, Q1 plus 200 random",
      true, check_query_oracle);
  run("7. serializer round trip, 500 graphs, permutation-stable", true,
      check_serializer_round_trip);

  const char* live = std::getenv("ALGOKG_LIVE");
  if (live != nullptr && std::string(live) == "1") {
    run("8. live crawl table shape and reference statistics", false,
        check_live_shape);
  } else {
    Check skip;
    skip.name = "8. live crawl table shape and reference statistics";
    skip.required = false;
    skip.skipped = true;
    skip.detail = "set ALGOKG_LIVE=1 to run against the live site";
    checks.push_back(skip);
  }

  run("9. schema validation clean on pipeline output, exact on seeded "
      "errors",
      true, check_schema_validation);

  bool failed = false;
  for (const Check& check : checks) {
    std::string status = check.skipped ? "SKIP" : check.passed ? "PASS"
                                                               : "FAIL";
    if (!check.passed && !check.skipped && !check.required)
      status = "WARN";  // reported, not fatal
    std::cout << "[" << status << "] " << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
    if (!check.passed && !check.skipped && check.required) failed = true;
  }
  return failed ? 1 : 0;
}
