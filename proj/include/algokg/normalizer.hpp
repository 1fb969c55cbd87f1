#ifndef ALGOKG_NORMALIZER_HPP
#define ALGOKG_NORMALIZER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algokg/csv.hpp"
#include "algokg/errors.hpp"
#include "algokg/extractor.hpp"
#include "algokg/text.hpp"

namespace algokg {

struct Implementation {
  std::string name;
  std::optional<std::string> url;
  std::optional<int> rating;            // 1..10 when present
  std::vector<std::string> languages;   // set semantics, first-seen order

  bool operator==(const Implementation&) const = default;
};

struct RelatedProblemRef {
  std::string name;
  std::optional<std::string> url;

  bool operator==(const RelatedProblemRef&) const = default;
};

struct Book {
  std::string title;
  std::optional<std::string> url;
  std::vector<std::string> authors;

  bool operator==(const Book&) const = default;
};

/// A problem with its packed fields unpacked into structured lists.
struct AlgorithmProblem {
  std::string title;
  std::string identifier;  // the problem_url, verbatim
  std::string problem_type;
  std::optional<std::string> input_image;
  std::optional<std::string> output_image;
  std::string input_description;
  std::string problem_statement;
  std::string excerpt;
  std::vector<Implementation> implementations;
  std::vector<Book> books;
  std::vector<RelatedProblemRef> related;

  bool operator==(const AlgorithmProblem&) const = default;
};

namespace norm_detail {

inline std::vector<std::string> packed_segments(const std::string& packed) {
  std::vector<std::string> out;
  for (const std::string& seg : split(packed, "\n"))
    if (!trim(seg).empty()) out.push_back(seg);
  return out;
}

inline std::vector<std::string> packed_fields(const std::string& segment) {
  std::vector<std::string> fields = split(segment, " | ");
  for (std::string& f : fields) f = trim(f);
  return fields;
}

inline std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace norm_detail

/// Unpacks an implementations cell. Duplicate (name, url) entries merge:
/// languages union, first rating kept (a differing later rating is
/// reported, not applied). Rating tokens outside 1..10 or non-numeric
/// read as absent.
inline std::vector<Implementation> split_implementations(
    const std::string& packed, Diagnostics* diags = nullptr) {
  std::vector<Implementation> out;
  for (const std::string& seg : norm_detail::packed_segments(packed)) {
    std::vector<std::string> f = norm_detail::packed_fields(seg);
    if (f[0].empty()) {
      diag(diags, "implementation entry without a name: " + seg);
      continue;
    }
    Implementation entry;
    entry.name = f[0];
    if (f.size() > 1) entry.url = norm_detail::opt(f[1]);
    std::optional<int> rating;
    if (f.size() > 2 && !f[2].empty()) {
      try {
        std::size_t used = 0;
        int value = std::stoi(f[2], &used);
        if (used == f[2].size() && value >= 1 && value <= 10)
          rating = value;
        else
          diag(diags, "rating out of range: " + f[2]);
      } catch (const std::exception&) {
        diag(diags, "unparseable rating: " + f[2]);
      }
    }
    entry.rating = rating;
    if (f.size() > 3 && !f[3].empty()) entry.languages.push_back(f[3]);

    auto match = std::find_if(out.begin(), out.end(), [&](const auto& e) {
      return e.name == entry.name && e.url == entry.url;
    });
    if (match == out.end()) {
      out.push_back(std::move(entry));
      continue;
    }
    for (const std::string& lang : entry.languages)
      if (std::find(match->languages.begin(), match->languages.end(), lang) ==
          match->languages.end())
        match->languages.push_back(lang);
    if (!match->rating) {
      match->rating = entry.rating;
    } else if (entry.rating && *entry.rating != *match->rating) {
      diag(diags, "conflicting rating for " + entry.name + ": kept " +
                      std::to_string(*match->rating) + ", saw " +
                      std::to_string(*entry.rating));
    }
  }
  return out;
}

inline std::vector<RelatedProblemRef> split_related(
    const std::string& packed, Diagnostics* diags = nullptr) {
  std::vector<RelatedProblemRef> out;
  for (const std::string& seg : norm_detail::packed_segments(packed)) {
    std::vector<std::string> f = norm_detail::packed_fields(seg);
    if (f[0].empty()) {
      diag(diags, "related problem without a name: " + seg);
      continue;
    }
    RelatedProblemRef ref;
    ref.name = f[0];
    if (f.size() > 1) ref.url = norm_detail::opt(f[1]);
    out.push_back(std::move(ref));
  }
  return out;
}

/// Splits "Title by A and B" at the last " by " occurrence; the author
/// part then splits on " and " and ",". A title's interior "and" or "by"
/// (as in "Regular Algebra and Finite Machines") survives intact.
inline Book parse_book(const std::string& entry) {
  Book book;
  std::string text = trim(entry);
  std::size_t by = text.rfind(" by ");
  if (by == std::string::npos || trim(text.substr(0, by)).empty()) {
    book.title = text;
    return book;
  }
  book.title = trim(text.substr(0, by));
  for (const std::string& chunk : split(text.substr(by + 4), " and "))
    for (const std::string& name : split(chunk, ",")) {
      std::string author = trim(name);
      if (!author.empty()) book.authors.push_back(author);
    }
  return book;
}

inline std::vector<Book> split_books(const std::string& packed,
                                     Diagnostics* diags = nullptr) {
  std::vector<Book> out;
  for (const std::string& seg : norm_detail::packed_segments(packed)) {
    std::vector<std::string> f = norm_detail::packed_fields(seg);
    Book book = parse_book(f[0]);
    if (book.title.empty()) {
      diag(diags, "book entry without a title: " + seg);
      continue;
    }
    if (f.size() > 1) book.url = norm_detail::opt(f[1]);
    out.push_back(std::move(book));
  }
  return out;
}

inline std::vector<AlgorithmProblem> normalize(
    const std::vector<RawProblemRecord>& records,
    Diagnostics* diags = nullptr) {
  std::vector<AlgorithmProblem> out;
  std::set<std::string> seen;
  for (const RawProblemRecord& r : records) {
    if (!seen.insert(r.problem_url).second)
      throw DuplicateIdentifier(r.problem_url);
    AlgorithmProblem p;
    p.title = r.problem;
    p.identifier = r.problem_url;
    p.problem_type = r.problem_type;
    p.input_image = r.input_image;
    p.output_image = r.output_image;
    p.input_description = r.input_description;
    p.problem_statement = r.problem_statement;
    p.excerpt = r.description;
    p.implementations = split_implementations(r.implementations, diags);
    p.books = split_books(r.recommended_books, diags);
    p.related = split_related(r.related_problems, diags);
    out.push_back(std::move(p));
  }
  return out;
}

/// Rectangular wide table: base columns A..H, then one column per
/// entity-field-index, each family widened to the dataset maximum.
struct ProcessedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const ProcessedTable&) const = default;
};

/// Family cardinalities of a processed table. Derived from the problem
/// list when expanding, or recovered from column names when reading a
/// table back.
struct TableLayout {
  std::size_t max_implementations = 0;
  std::size_t max_languages = 0;
  std::size_t max_related = 0;
  std::size_t max_books = 0;
  std::size_t max_authors = 0;

  std::size_t width() const {
    return 8 + max_implementations * (3 + max_languages) + max_related * 2 +
           max_books * (2 + max_authors);
  }
};

inline const std::vector<std::string>& processed_base_header() {
  static const std::vector<std::string> header = {
      "problem",           "problem_url",  "problem_type",
      "input_image",       "output_image", "input_description",
      "problem_statement", "description"};
  return header;
}

inline TableLayout table_layout_of(
    const std::vector<AlgorithmProblem>& problems) {
  TableLayout layout;
  for (const AlgorithmProblem& p : problems) {
    layout.max_implementations =
        std::max(layout.max_implementations, p.implementations.size());
    for (const Implementation& impl : p.implementations)
      layout.max_languages =
          std::max(layout.max_languages, impl.languages.size());
    layout.max_related = std::max(layout.max_related, p.related.size());
    layout.max_books = std::max(layout.max_books, p.books.size());
    for (const Book& b : p.books)
      layout.max_authors = std::max(layout.max_authors, b.authors.size());
  }
  return layout;
}

inline std::vector<std::string> processed_header(const TableLayout& layout) {
  std::vector<std::string> header = processed_base_header();
  for (std::size_t i = 1; i <= layout.max_implementations; ++i) {
    std::string base = "implementation_" + std::to_string(i) + "_";
    header.push_back(base + "name");
    header.push_back(base + "url");
    header.push_back(base + "rating");
    for (std::size_t j = 1; j <= layout.max_languages; ++j)
      header.push_back(base + "language_" + std::to_string(j));
  }
  for (std::size_t i = 1; i <= layout.max_related; ++i) {
    std::string base = "related_problem_" + std::to_string(i) + "_";
    header.push_back(base + "name");
    header.push_back(base + "url");
  }
  for (std::size_t i = 1; i <= layout.max_books; ++i) {
    std::string base = "recommended_book_" + std::to_string(i) + "_";
    header.push_back(base + "name");
    header.push_back(base + "url");
    for (std::size_t j = 1; j <= layout.max_authors; ++j)
      header.push_back(base + "author_" + std::to_string(j));
  }
  return header;
}

inline ProcessedTable expand_table(
    const std::vector<AlgorithmProblem>& problems) {
  TableLayout layout = table_layout_of(problems);
  ProcessedTable table;
  table.header = processed_header(layout);
  for (const AlgorithmProblem& p : problems) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    row.push_back(p.title);
    row.push_back(p.identifier);
    row.push_back(p.problem_type);
    row.push_back(p.input_image.value_or(""));
    row.push_back(p.output_image.value_or(""));
    row.push_back(p.input_description);
    row.push_back(p.problem_statement);
    row.push_back(p.excerpt);
    for (std::size_t i = 0; i < layout.max_implementations; ++i) {
      const Implementation* impl =
          i < p.implementations.size() ? &p.implementations[i] : nullptr;
      row.push_back(impl ? impl->name : "");
      row.push_back(impl ? impl->url.value_or("") : "");
      row.push_back(impl && impl->rating ? std::to_string(*impl->rating)
                                         : "");
      for (std::size_t j = 0; j < layout.max_languages; ++j)
        row.push_back(impl && j < impl->languages.size()
                          ? impl->languages[j]
                          : "");
    }
    for (std::size_t i = 0; i < layout.max_related; ++i) {
      const RelatedProblemRef* ref =
          i < p.related.size() ? &p.related[i] : nullptr;
      row.push_back(ref ? ref->name : "");
      row.push_back(ref ? ref->url.value_or("") : "");
    }
    for (std::size_t i = 0; i < layout.max_books; ++i) {
      const Book* book = i < p.books.size() ? &p.books[i] : nullptr;
      row.push_back(book ? book->title : "");
      row.push_back(book ? book->url.value_or("") : "");
      for (std::size_t j = 0; j < layout.max_authors; ++j)
        row.push_back(book && j < book->authors.size() ? book->authors[j]
                                                       : "");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace norm_detail {

struct FamilyColumns {
  // per family index: column of each fixed field, then per-sub-index ones
  std::map<std::size_t, std::map<std::string, std::size_t>> fields;
  std::map<std::size_t, std::map<std::size_t, std::size_t>> sub;  // i -> j -> col
};

inline bool parse_family_column(const std::string& name,
                                const std::string& family,
                                const std::string& sub_field,
                                FamilyColumns& out, std::size_t col) {
  if (!starts_with(name, family + "_")) return false;
  std::string rest = name.substr(family.size() + 1);
  std::size_t underscore = rest.find('_');
  if (underscore == std::string::npos) return false;
  std::size_t index = 0;
  try {
    index = std::stoul(rest.substr(0, underscore));
  } catch (const std::exception&) {
    return false;
  }
  std::string field = rest.substr(underscore + 1);
  if (!sub_field.empty() && starts_with(field, sub_field + "_")) {
    std::size_t j = 0;
    try {
      j = std::stoul(field.substr(sub_field.size() + 1));
    } catch (const std::exception&) {
      return false;
    }
    out.sub[index][j] = col;
    return true;
  }
  out.fields[index][field] = col;
  return true;
}

}  // namespace norm_detail

/// Reads a processed table back into structured problems. Interior empty
/// cells inside a family are tolerated: lists are compacted, an entry
/// exists only where its name cell is non-empty.
inline std::vector<AlgorithmProblem> unexpand_table(
    const ProcessedTable& table) {
  const auto& base = processed_base_header();
  if (table.header.size() < base.size() ||
      !std::equal(base.begin(), base.end(), table.header.begin()))
    throw SyntaxError(1, "processed table base columns mismatch");

  norm_detail::FamilyColumns impls, related, books;
  for (std::size_t c = base.size(); c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (norm_detail::parse_family_column(name, "implementation", "language",
                                         impls, c))
      continue;
    if (norm_detail::parse_family_column(name, "related_problem", "", related,
                                         c))
      continue;
    if (norm_detail::parse_family_column(name, "recommended_book", "author",
                                         books, c))
      continue;
    throw SyntaxError(1, "unrecognized processed column: " + name);
  }

  std::vector<AlgorithmProblem> problems;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw SyntaxError(1, "ragged processed table row");
    AlgorithmProblem p;
    p.title = row[0];
    p.identifier = row[1];
    p.problem_type = row[2];
    p.input_image = norm_detail::opt(row[3]);
    p.output_image = norm_detail::opt(row[4]);
    p.input_description = row[5];
    p.problem_statement = row[6];
    p.excerpt = row[7];
    auto cell = [&](std::size_t c) { return trim(row[c]); };
    for (const auto& [i, fields] : impls.fields) {
      auto name_it = fields.find("name");
      if (name_it == fields.end() || cell(name_it->second).empty()) continue;
      Implementation impl;
      impl.name = cell(name_it->second);
      if (auto it = fields.find("url"); it != fields.end())
        impl.url = norm_detail::opt(cell(it->second));
      if (auto it = fields.find("rating"); it != fields.end()) {
        std::string token = cell(it->second);
        if (!token.empty()) {
          try {
            int value = std::stoi(token);
            if (value >= 1 && value <= 10) impl.rating = value;
          } catch (const std::exception&) {
          }
        }
      }
      if (auto sub_it = impls.sub.find(i); sub_it != impls.sub.end())
        for (const auto& [j, col] : sub_it->second)
          if (!cell(col).empty()) impl.languages.push_back(cell(col));
      p.implementations.push_back(std::move(impl));
    }
    for (const auto& [i, fields] : related.fields) {
      auto name_it = fields.find("name");
      if (name_it == fields.end() || cell(name_it->second).empty()) continue;
      RelatedProblemRef ref;
      ref.name = cell(name_it->second);
      if (auto it = fields.find("url"); it != fields.end())
        ref.url = norm_detail::opt(cell(it->second));
      p.related.push_back(std::move(ref));
    }
    for (const auto& [i, fields] : books.fields) {
      auto name_it = fields.find("name");
      if (name_it == fields.end() || cell(name_it->second).empty()) continue;
      Book book;
      book.title = cell(name_it->second);
      if (auto it = fields.find("url"); it != fields.end())
        book.url = norm_detail::opt(cell(it->second));
      if (auto sub_it = books.sub.find(i); sub_it != books.sub.end())
        for (const auto& [j, col] : sub_it->second)
          if (!cell(col).empty()) book.authors.push_back(cell(col));
      p.books.push_back(std::move(book));
    }
    problems.push_back(std::move(p));
  }
  return problems;
}

inline std::string encode_processed_table(const ProcessedTable& table) {
  std::vector<CsvRow> rows;
  rows.push_back(table.header);
  for (const auto& row : table.rows) rows.push_back(row);
  return csv_encode(rows);
}

inline ProcessedTable decode_processed_table(const std::string& text) {
  std::vector<CsvRow> rows = csv_decode(text);
  if (rows.empty()) throw SyntaxError(1, "processed table has no header");
  ProcessedTable table;
  table.header = rows[0];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != table.header.size())
      throw SyntaxError(i + 1, "row width differs from header");
    for (std::string& cell : rows[i])
      if (cell == "nan") cell.clear();
    table.rows.push_back(std::move(rows[i]));
  }
  return table;
}

inline void export_processed_table(const ProcessedTable& table,
                                   const std::string& path) {
  write_file(path, encode_processed_table(table));
}

inline ProcessedTable import_processed_table(const std::string& path) {
  return decode_processed_table(read_file(path));
}

}  // namespace algokg

#endif  // ALGOKG_NORMALIZER_HPP
