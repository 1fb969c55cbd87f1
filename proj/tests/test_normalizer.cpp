#include "algokg/normalizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "algokg/extractor.hpp"
#include "test_util.hpp"

using namespace algokg;

namespace {

std::vector<AlgorithmProblem> fixture_problems() {
  return normalize(crawl(testutil::full_corpus(), PatternConfig{}));
}

}  // namespace

TEST(SplitImplementations, SingleFourFieldEntry) {
  std::vector<Implementation> impls =
      split_implementations("libcpp | https://llvm.org/x | 10 | C++");
  ASSERT_EQ(impls.size(), 1u);
  EXPECT_EQ(impls[0].name, "libcpp");
  EXPECT_EQ(impls[0].url.value(), "https://llvm.org/x");
  EXPECT_EQ(impls[0].rating.value(), 10);
  EXPECT_EQ(impls[0].languages, std::vector<std::string>{"C++"});
}

TEST(SplitImplementations, EmptyString) {
  EXPECT_TRUE(split_implementations("").empty());
}

TEST(SplitImplementations, DuplicatesMergeWithLanguageUnion) {
  std::vector<Implementation> impls =
      split_implementations("X | U | 9 | C\nX | U | 9 | C++");
  ASSERT_EQ(impls.size(), 1u);
  EXPECT_EQ(impls[0].languages, (std::vector<std::string>{"C", "C++"}));
  EXPECT_EQ(impls[0].rating.value(), 9);

  // brute-force oracle: group segments by (name, url)
  std::string packed = "a | u1 | 1 | C\nb | u2 | 2 | C\na | u1 | 1 | D\n"
                       "a | u3 | 3 | C\nb | u2 | 2 | C";
  std::map<std::pair<std::string, std::string>, int> groups;
  for (const std::string& seg : split(packed, "\n")) {
    std::vector<std::string> f = split(seg, " | ");
    ++groups[{f[0], f[1]}];
  }
  EXPECT_EQ(split_implementations(packed).size(), groups.size());
}

TEST(SplitImplementations, ThreeFieldEntryHasNoLanguage) {
  std::vector<Implementation> impls =
      split_implementations("Concorde | https://tsp.example/c | 10");
  ASSERT_EQ(impls.size(), 1u);
  EXPECT_TRUE(impls[0].languages.empty());
  EXPECT_EQ(impls[0].rating.value(), 10);
}

TEST(SplitImplementations, BadRatingsReadAsAbsentWithDiagnostic) {
  Diagnostics diags;
  std::vector<Implementation> impls =
      split_implementations("a | u | high | C\nb | u | 11 | C", &diags);
  ASSERT_EQ(impls.size(), 2u);
  EXPECT_FALSE(impls[0].rating.has_value());
  EXPECT_FALSE(impls[1].rating.has_value());
  EXPECT_EQ(diags.size(), 2u);
}

TEST(SplitImplementations, ConflictingRatingKeepsFirst) {
  Diagnostics diags;
  std::vector<Implementation> impls =
      split_implementations("a | u | 9 | C\na | u | 3 | D", &diags);
  ASSERT_EQ(impls.size(), 1u);
  EXPECT_EQ(impls[0].rating.value(), 9);
  EXPECT_EQ(diags.size(), 1u);
}

TEST(SplitRelated, PackedTravelingSalesmanField) {
  std::vector<RelatedProblemRef> refs = split_related(
      "Convex Hull | https://algorist.com/problems/ConvexHull.html\n"
      "Hamiltonian Cycle | https://algorist.com/problems/HamiltonianCycle.html\n"
      "Minimum Spanning Tree | https://algorist.com/problems/MinimumSpanningTree.html");
  ASSERT_EQ(refs.size(), 3u);
  EXPECT_EQ(refs[0].name, "Convex Hull");
  EXPECT_EQ(refs[1].name, "Hamiltonian Cycle");
  EXPECT_EQ(refs[2].name, "Minimum Spanning Tree");
}

TEST(SplitRelated, EmptyString) { EXPECT_TRUE(split_related("").empty()); }

TEST(SplitRelated, SingleRefWithUrl) {
  std::vector<RelatedProblemRef> refs = split_related(
      "Priority Queues | https://algorist.com/problems/PriorityQueues.html");
  ASSERT_EQ(refs.size(), 1u);
  EXPECT_EQ(refs[0].url.value(),
            "https://algorist.com/problems/PriorityQueues.html");
}

TEST(SplitRelated, CountEqualsNonBlankSegments) {
  std::string packed = "a | u\n\nb\n  \nc | v";
  std::size_t non_blank = 0;
  for (const std::string& seg : split(packed, "\n"))
    if (!trim(seg).empty()) ++non_blank;
  EXPECT_EQ(split_related(packed).size(), non_blank);
}

TEST(ParseBook, TwoAuthorsJoinedByAnd) {
  Book book =
      parse_book("Practical Algorithms for Programmers by A. Binstock and "
                 "J. Rex");
  EXPECT_EQ(book.title, "Practical Algorithms for Programmers");
  EXPECT_EQ(book.authors,
            (std::vector<std::string>{"A. Binstock", "J. Rex"}));
}

TEST(ParseBook, InteriorAndInTitleSurvives) {
  Book book = parse_book("Regular Algebra and Finite Machines by J. H. Conway");
  EXPECT_EQ(book.title, "Regular Algebra and Finite Machines");
  EXPECT_EQ(book.authors, std::vector<std::string>{"J. H. Conway"});
}

TEST(ParseBook, ThreeAuthors) {
  Book book = parse_book(
      "The Design and Analysis of Computer Algorithms by A. Aho and "
      "J. Hopcroft and J. Ullman");
  EXPECT_EQ(book.title, "The Design and Analysis of Computer Algorithms");
  EXPECT_EQ(book.authors,
            (std::vector<std::string>{"A. Aho", "J. Hopcroft", "J. Ullman"}));
}

TEST(ParseBook, CommaAndMixedSeparators) {
  Book book = parse_book("Some Title by A. One, B. Two and C. Three");
  EXPECT_EQ(book.authors,
            (std::vector<std::string>{"A. One", "B. Two", "C. Three"}));
}

TEST(ParseBook, NoAuthorsWhenNoByToken) {
  Book book = parse_book("Introduction to Algorithms");
  EXPECT_EQ(book.title, "Introduction to Algorithms");
  EXPECT_TRUE(book.authors.empty());
}

TEST(ParseBook, LastByOccurrenceSplits) {
  Book book = parse_book("Led by Example by X. Author");
  EXPECT_EQ(book.title, "Led by Example");
  EXPECT_EQ(book.authors, std::vector<std::string>{"X. Author"});
}

TEST(ParseBook, RandomBooksRoundTrip) {
  std::mt19937 rng(20240811);
  const std::string word_chars =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ.";
  for (int iter = 0; iter < 300; ++iter) {
    int title_words = testutil::rand_int(rng, 1, 5);
    std::vector<std::string> parts;
    for (int i = 0; i < title_words; ++i)
      parts.push_back(testutil::random_word(rng, 1, 8, word_chars));
    if (testutil::rand_int(rng, 0, 4) == 0) parts.push_back("by example");
    std::string title = join(parts, " ");
    int author_count = testutil::rand_int(rng, 1, 4);
    std::vector<std::string> authors;
    for (int i = 0; i < author_count; ++i)
      authors.push_back(testutil::random_word(rng, 2, 10, word_chars));
    std::string joined = authors[0];
    for (std::size_t i = 1; i < authors.size(); ++i)
      joined += (testutil::rand_int(rng, 0, 1) ? std::string(" and ")
                                               : std::string(", ")) +
                authors[i];
    Book book = parse_book(title + " by " + joined);
    EXPECT_EQ(book.title, title);
    EXPECT_EQ(book.authors, authors);
  }
}

TEST(SplitBooks, UrlsAttachedToBooks) {
  std::vector<Book> books = split_books(
      "Practical Algorithms for Programmers by A. Binstock and J. Rex | "
      "https://amazon.example/1\n"
      "Handbook of Algorithms and Data Structures by G. Gonnet and "
      "R. Baeza-Yates | https://amazon.example/2");
  ASSERT_EQ(books.size(), 2u);
  EXPECT_EQ(books[0].authors.size(), 2u);
  EXPECT_EQ(books[1].authors.size(), 2u);
  EXPECT_EQ(books[0].url.value(), "https://amazon.example/1");
}

TEST(SplitBooks, EmptyString) { EXPECT_TRUE(split_books("").empty()); }

TEST(SplitBooks, FourBooksTotalAuthorsSumToEight) {
  std::string packed =
      "Practical Algorithms for Programmers by A. Binstock and J. Rex\n"
      "Handbook of Algorithms and Data Structures by G. Gonnet and "
      "R. Baeza-Yates\n"
      "The Design and Analysis of Computer Algorithms by A. Aho and "
      "J. Hopcroft and J. Ullman\n"
      "Regular Algebra and Finite Machines by J. H. Conway";
  std::vector<Book> books = split_books(packed);
  ASSERT_EQ(books.size(), 4u);
  std::size_t total = 0;
  for (const Book& b : books) total += b.authors.size();
  EXPECT_EQ(total, 8u);
}

TEST(Normalize, FixtureCorpusShapes) {
  std::vector<AlgorithmProblem> problems = fixture_problems();
  ASSERT_EQ(problems.size(), 5u);
  const AlgorithmProblem& tsp = problems[4];
  EXPECT_EQ(tsp.title, "Traveling Salesman Problem");
  EXPECT_EQ(tsp.implementations.size(), 8u);
  EXPECT_EQ(tsp.related.size(), 3u);
  EXPECT_EQ(tsp.books.size(), 2u);
  // page entry and language entry merged; every implementation has a language
  for (const Implementation& impl : tsp.implementations)
    EXPECT_EQ(impl.languages.size(), 1u) << impl.name;

  const AlgorithmProblem& hull = problems[3];
  ASSERT_EQ(hull.implementations.size(), 1u);
  EXPECT_EQ(hull.implementations[0].languages,
            (std::vector<std::string>{"C", "C++"}));
}

TEST(Normalize, EmptyPackedFieldsGiveEmptyLists) {
  RawProblemRecord record;
  record.problem = "P";
  record.problem_url = "https://algorist.com/problems/P.html";
  std::vector<AlgorithmProblem> problems = normalize({record});
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_TRUE(problems[0].implementations.empty());
  EXPECT_TRUE(problems[0].books.empty());
  EXPECT_TRUE(problems[0].related.empty());
}

TEST(Normalize, DuplicateIdentifierThrows) {
  RawProblemRecord a;
  a.problem = "A";
  a.problem_url = "https://algorist.com/problems/Same.html";
  RawProblemRecord b = a;
  b.problem = "B";
  EXPECT_THROW(normalize({a, b}), DuplicateIdentifier);
}

TEST(ExpandTable, WidthMatchesFormulaOracle) {
  std::vector<AlgorithmProblem> problems = fixture_problems();
  ProcessedTable table = expand_table(problems);

  // independent oracle: maxima recomputed here, formula evaluated directly
  std::size_t max_impl = 0, max_lang = 0, max_rel = 0, max_book = 0,
              max_auth = 0;
  for (const AlgorithmProblem& p : problems) {
    max_impl = std::max(max_impl, p.implementations.size());
    for (const Implementation& i : p.implementations)
      max_lang = std::max(max_lang, i.languages.size());
    max_rel = std::max(max_rel, p.related.size());
    max_book = std::max(max_book, p.books.size());
    for (const Book& b : p.books)
      max_auth = std::max(max_auth, b.authors.size());
  }
  std::size_t expected =
      8 + max_impl * (3 + max_lang) + max_rel * 2 + max_book * (2 + max_auth);
  EXPECT_EQ(table.header.size(), expected);
  EXPECT_EQ(max_impl, 8u);
  EXPECT_EQ(max_lang, 2u);
  EXPECT_EQ(max_rel, 3u);
  EXPECT_EQ(max_book, 4u);
  EXPECT_EQ(max_auth, 3u);
  EXPECT_EQ(table.header.size(), 74u);
  EXPECT_EQ(table.rows.size(), 5u);
}

TEST(ExpandTable, EmptyInputGivesBaseHeaderOnly) {
  ProcessedTable table = expand_table({});
  EXPECT_EQ(table.header, processed_base_header());
  EXPECT_TRUE(table.rows.empty());
}

TEST(ExpandTable, Rectangular) {
  ProcessedTable table = expand_table(fixture_problems());
  for (const auto& row : table.rows)
    EXPECT_EQ(row.size(), table.header.size());
}

TEST(ExpandTable, HeaderUsesDocumentedSuffixScheme) {
  ProcessedTable table = expand_table(fixture_problems());
  auto has = [&](const std::string& name) {
    return std::find(table.header.begin(), table.header.end(), name) !=
           table.header.end();
  };
  EXPECT_TRUE(has("implementation_1_name"));
  EXPECT_TRUE(has("implementation_8_language_2"));
  EXPECT_TRUE(has("related_problem_3_url"));
  EXPECT_TRUE(has("recommended_book_1_author_1"));
  EXPECT_TRUE(has("recommended_book_4_author_3"));
}

TEST(UnexpandTable, RoundTripReproducesProblems) {
  std::vector<AlgorithmProblem> problems = fixture_problems();
  EXPECT_EQ(unexpand_table(expand_table(problems)), problems);
}

TEST(UnexpandTable, InteriorEmptyAuthorCellsCompact) {
  ProcessedTable table;
  table.header = processed_base_header();
  table.header.insert(table.header.end(),
                      {"recommended_book_1_name", "recommended_book_1_url",
                       "recommended_book_1_author_1",
                       "recommended_book_1_author_2",
                       "recommended_book_1_author_3"});
  table.rows.push_back({"P", "u", "T", "", "", "", "", "", "B", "", "A. One",
                        "", "C. Three"});
  std::vector<AlgorithmProblem> problems = unexpand_table(table);
  ASSERT_EQ(problems.size(), 1u);
  ASSERT_EQ(problems[0].books.size(), 1u);
  EXPECT_EQ(problems[0].books[0].authors,
            (std::vector<std::string>{"A. One", "C. Three"}));
}

TEST(ProcessedTableIo, CsvRoundTrip) {
  ProcessedTable table = expand_table(fixture_problems());
  ProcessedTable back = decode_processed_table(encode_processed_table(table));
  EXPECT_EQ(table, back);
}

TEST(SplitPackRoundTrip, RandomEntryLists) {
  std::mt19937 rng(774411);
  const std::string name_chars =
      "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-._";
  for (int iter = 0; iter < 200; ++iter) {
    int n = testutil::rand_int(rng, 0, 6);
    std::vector<LanguageEntry> entries;
    for (int i = 0; i < n; ++i) {
      LanguageEntry e;
      e.problem_url = "https://algorist.com/problems/X.html";
      e.impl_name = trim(testutil::random_word(rng, 1, 12, name_chars));
      if (e.impl_name.empty()) e.impl_name = "x";
      e.impl_url = "https://repo.example/" +
                   testutil::random_word(rng, 1, 8, "abcdefg123");
      e.rating = std::to_string(testutil::rand_int(rng, 1, 10));
      e.language = testutil::random_word(rng, 1, 6, "CJPRabc+");
      entries.push_back(std::move(e));
    }
    std::vector<Implementation> impls =
        split_implementations(pack_implementations(entries));

    // oracle: merge entries by (name, url) by hand
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
    ASSERT_EQ(impls, expected) << "iteration " << iter;
  }
}
