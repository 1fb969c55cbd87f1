#ifndef ALGOKG_EXTRACTOR_HPP
#define ALGOKG_EXTRACTOR_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algokg/corpus.hpp"
#include "algokg/csv.hpp"
#include "algokg/errors.hpp"
#include "algokg/html.hpp"
#include "algokg/text.hpp"
#include "algokg/url.hpp"

namespace algokg {

/// One problem's ten metadata elements, straight off the pages. The three
/// multi-valued fields stay packed: entries joined by '\n', an entry's
/// fields joined by ' | '.
struct RawProblemRecord {
  std::string problem;
  std::string problem_url;  // doubles as the identifier
  std::string problem_type;
  std::optional<std::string> input_image;
  std::optional<std::string> output_image;
  std::string input_description;
  std::string problem_statement;
  std::string description;
  std::string implementations;
  std::string recommended_books;
  std::string related_problems;

  bool operator==(const RawProblemRecord&) const = default;
};

struct SectionInfo {
  std::string type_name;
  std::vector<std::string> problem_urls;

  std::size_t count() const { return problem_urls.size(); }
};

/// One implementation mention on a per-language page.
struct LanguageEntry {
  std::string problem_url;
  std::string impl_name;
  std::string impl_url;
  std::string rating;  // raw token as scraped
  std::string language;

  bool operator==(const LanguageEntry&) const = default;
};

inline const std::vector<std::string>& raw_table_header() {
  static const std::vector<std::string> header = {
      "problem",           "problem_url",       "problem_type",
      "input_image",       "output_image",      "input_description",
      "problem_statement", "description",       "implementations",
      "recommended_books", "related_problems"};
  return header;
}

namespace extract_detail {

inline std::string rating_token(const std::string& text) {
  std::size_t pos = text.find("rating");
  if (pos == std::string::npos) return "";
  pos += 6;
  while (pos < text.size() && is_space(text[pos])) ++pos;
  std::size_t end = pos;
  while (end < text.size() && !is_space(text[end]) && text[end] != ')' &&
         text[end] != ',')
    ++end;
  return text.substr(pos, end - pos);
}

inline bool block_matches_label(const Block& b, const std::string& label) {
  return !label.empty() && starts_with(b.text, label);
}

inline bool is_any_label(const Block& b, const FieldLocators& loc) {
  return block_matches_label(b, loc.input_description) ||
         block_matches_label(b, loc.problem_statement) ||
         block_matches_label(b, loc.description) ||
         b.text == loc.implementations || b.text == loc.recommended_books ||
         b.text == loc.related_problems;
}

/// Value of a labeled field: the remainder of every block starting with
/// the label, plus unlabeled paragraphs that follow it, until the next
/// heading or labeled block.
inline std::string labeled_text(const std::vector<Block>& blocks,
                                const std::string& label,
                                const FieldLocators& loc) {
  std::string value;
  auto append = [&](const std::string& piece) {
    std::string t = trim(piece);
    if (t.empty()) return;
    if (!value.empty()) value.push_back(' ');
    value.append(t);
  };
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!block_matches_label(blocks[i], label)) continue;
    append(blocks[i].text.substr(label.size()));
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      const Block& b = blocks[j];
      if (b.kind != BlockKind::Paragraph || is_any_label(b, loc)) break;
      append(b.text);
      i = j;
    }
  }
  return value;
}

/// Item blocks under the heading whose text equals the label, up to the
/// next heading.
inline std::vector<const Block*> section_items(
    const std::vector<Block>& blocks, const std::string& label) {
  std::vector<const Block*> items;
  bool in_section = false;
  for (const Block& b : blocks) {
    if (b.kind == BlockKind::Heading) {
      in_section = b.text == label;
      continue;
    }
    if (in_section && b.kind == BlockKind::Item) items.push_back(&b);
  }
  return items;
}

inline void sanitize_packed_field(std::string& field) {
  field = normalize_ws(field);
  if (field.find(" | ") != std::string::npos)
    throw FieldContainsDelimiter(field);
}

inline std::string pack_entry(std::vector<std::string> fields) {
  while (!fields.empty() && fields.back().empty()) fields.pop_back();
  for (std::string& f : fields) sanitize_packed_field(f);
  return join(fields, " | ");
}

}  // namespace extract_detail

/// Renders per-language implementation entries in the packed format:
/// `name | url | rating | language`, one entry per line. Entries missing
/// trailing fields pack to fewer fields; the normalizer tolerates that.
inline std::string pack_implementations(
    const std::vector<LanguageEntry>& entries) {
  std::vector<std::string> lines;
  for (const LanguageEntry& e : entries)
    lines.push_back(extract_detail::pack_entry(
        {e.impl_name, e.impl_url, e.rating, e.language}));
  return join(lines, "\n");
}

/// Scrapes one problem page. The title comes from the first level-1
/// heading; everything else is located by the configured labels and may
/// be absent.
inline RawProblemRecord extract_record(const PageContent& page,
                                       const std::string& type_name,
                                       const PatternConfig& config = {}) {
  const FieldLocators& loc = config.locators;
  PageScan scan = scan_page(page.body);
  auto title = first_heading(scan, 1);
  if (!title) throw NoTitle(page.url);

  RawProblemRecord record;
  record.problem = *title;
  record.problem_url = page.url;
  record.problem_type = type_name;
  if (!scan.images.empty())
    record.input_image = resolve_url(page.url, scan.images[0]);
  if (scan.images.size() > 1)
    record.output_image = resolve_url(page.url, scan.images[1]);
  record.input_description =
      extract_detail::labeled_text(scan.blocks, loc.input_description, loc);
  record.problem_statement =
      extract_detail::labeled_text(scan.blocks, loc.problem_statement, loc);
  record.description =
      extract_detail::labeled_text(scan.blocks, loc.description, loc);

  std::vector<std::string> impl_lines;
  for (const Block* item :
       extract_detail::section_items(scan.blocks, loc.implementations)) {
    std::string name;
    std::string url;
    if (!item->anchors.empty()) {
      name = item->anchors.front().text;
      url = resolve_url(page.url, item->anchors.front().href);
    } else {
      name = item->text.substr(0, item->text.find('('));
    }
    std::string rating = extract_detail::rating_token(item->text);
    if (trim(name).empty()) continue;
    impl_lines.push_back(extract_detail::pack_entry({name, url, rating}));
  }
  record.implementations = join(impl_lines, "\n");

  std::vector<std::string> book_lines;
  for (const Block* item :
       extract_detail::section_items(scan.blocks, loc.recommended_books)) {
    std::string entry = item->text;
    std::string url;
    if (!item->anchors.empty()) {
      entry = item->anchors.front().text;
      url = resolve_url(page.url, item->anchors.front().href);
    }
    if (trim(entry).empty()) continue;
    book_lines.push_back(extract_detail::pack_entry({entry, url}));
  }
  record.recommended_books = join(book_lines, "\n");

  std::vector<std::string> related_lines;
  for (const Block* item :
       extract_detail::section_items(scan.blocks, loc.related_problems)) {
    std::string name = item->text;
    std::string url;
    if (!item->anchors.empty()) {
      name = item->anchors.front().text;
      url = resolve_url(page.url, item->anchors.front().href);
    }
    if (trim(name).empty()) continue;
    related_lines.push_back(extract_detail::pack_entry({name, url}));
  }
  record.related_problems = join(related_lines, "\n");
  return record;
}

/// Section page: heading gives the type name (spaces become underscores);
/// the problems it lists give the membership, first occurrence kept.
inline SectionInfo extract_section(const PageContent& page,
                                   const PatternConfig& config = {}) {
  PageScan scan = scan_page(page.body);
  auto heading = first_heading(scan, 1);
  if (!heading) heading = first_heading(scan, 2);
  if (!heading) throw NoHeading(page.url);
  SectionInfo info;
  info.type_name = replace_all(*heading, " ", "_");
  std::set<std::string> seen;
  for (const Anchor& a : scan.anchors) {
    if (trim(a.href).empty()) continue;
    std::string url = resolve_url(page.url, a.href);
    LinkClass cls;
    try {
      cls = classify_link(url, config);
    } catch (const MalformedUrl&) {
      continue;
    }
    if (cls != LinkClass::Problem) continue;
    if (seen.insert(url).second) info.problem_urls.push_back(url);
  }
  return info;
}

/// Per-language page: one entry per item block that links back to a
/// problem page. The implementation link is the first non-problem anchor
/// in the block.
inline std::vector<LanguageEntry> extract_language_page(
    const PageContent& page, const std::string& language,
    const PatternConfig& config = {}) {
  PageScan scan = scan_page(page.body);
  std::vector<LanguageEntry> entries;
  for (const Block& b : scan.blocks) {
    if (b.kind != BlockKind::Item) continue;
    std::string problem_url;
    std::string impl_name;
    std::string impl_url;
    for (const Anchor& a : b.anchors) {
      if (trim(a.href).empty()) continue;
      std::string url = resolve_url(page.url, a.href);
      LinkClass cls;
      try {
        cls = classify_link(url, config);
      } catch (const MalformedUrl&) {
        continue;
      }
      if (cls == LinkClass::Problem) {
        if (problem_url.empty()) problem_url = url;
      } else if (impl_name.empty()) {
        impl_name = a.text;
        impl_url = url;
      }
    }
    if (problem_url.empty() || trim(impl_name).empty()) continue;
    entries.push_back(LanguageEntry{problem_url, impl_name, impl_url,
                                    extract_detail::rating_token(b.text),
                                    language});
  }
  return entries;
}

namespace extract_detail {

inline std::string language_name_from_url(const std::string& url) {
  std::string path = parse_url(url).path;
  std::size_t slash = path.rfind('/');
  std::string name = path.substr(slash + 1);
  std::size_t dot = name.rfind('.');
  if (dot != std::string::npos) name.resize(dot);
  return name;
}

}  // namespace extract_detail

/// Walks the snapshot: problems come from the homepage listing (in page
/// order), types from the section that lists each problem (first section
/// wins), implementations from the problem page plus every language page
/// that mentions it. Pages in the snapshot but not linked from the
/// homepage are still consulted for sections and languages.
inline std::vector<RawProblemRecord> crawl(const CorpusSnapshot& snapshot,
                                           const PatternConfig& config,
                                           Diagnostics* diags = nullptr) {
  std::vector<std::string> problem_urls;
  std::vector<std::string> section_urls;
  std::vector<std::string> language_urls;
  std::set<std::string> seen;
  auto take = [&](const std::string& url) {
    LinkClass cls;
    try {
      cls = classify_link(url, config);
    } catch (const MalformedUrl&) {
      return;
    }
    if (cls == LinkClass::Other) return;
    if (!seen.insert(url).second) return;
    if (cls == LinkClass::Problem) problem_urls.push_back(url);
    if (cls == LinkClass::Section) section_urls.push_back(url);
    if (cls == LinkClass::Language) language_urls.push_back(url);
  };
  for (const std::string& url : discover_links(snapshot.root())) take(url);
  std::vector<std::string> homepage_problems = problem_urls;
  for (const auto& [url, page] : snapshot.pages) take(url);

  // section membership decides each problem's type
  std::map<std::string, std::string> type_of;
  for (const std::string& url : section_urls) {
    const PageContent* page = snapshot.find(url);
    if (page == nullptr) {
      diag(diags, "section page not in snapshot: " + url);
      continue;
    }
    try {
      SectionInfo info = extract_section(*page, config);
      for (const std::string& purl : info.problem_urls)
        type_of.emplace(purl, info.type_name);
    } catch (const Error& e) {
      diag(diags, std::string("section page skipped: ") + e.what());
    }
  }

  std::map<std::string, std::vector<LanguageEntry>> language_entries;
  for (const std::string& url : language_urls) {
    const PageContent* page = snapshot.find(url);
    if (page == nullptr) {
      diag(diags, "language page not in snapshot: " + url);
      continue;
    }
    std::string language;
    try {
      if (auto h = first_heading(scan_page(page->body), 1)) language = *h;
    } catch (const Error&) {
    }
    if (language.empty())
      language = extract_detail::language_name_from_url(url);
    for (LanguageEntry& e : extract_language_page(*page, language, config))
      language_entries[e.problem_url].push_back(std::move(e));
  }

  std::vector<RawProblemRecord> records;
  for (const std::string& url : homepage_problems) {
    const PageContent* page = snapshot.find(url);
    if (page == nullptr) {
      diag(diags, "problem page not in snapshot: " + url);
      continue;
    }
    std::string type;
    auto tit = type_of.find(url);
    if (tit != type_of.end())
      type = tit->second;
    else
      diag(diags, "no section lists problem: " + url);
    try {
      RawProblemRecord record = extract_record(*page, type, config);
      auto lit = language_entries.find(url);
      if (lit != language_entries.end()) {
        std::string packed = pack_implementations(lit->second);
        if (record.implementations.empty())
          record.implementations = packed;
        else if (!packed.empty())
          record.implementations += "\n" + packed;
      }
      records.push_back(std::move(record));
    } catch (const Error& e) {
      diag(diags, std::string("problem page skipped: ") + e.what());
    }
  }
  return records;
}

inline std::string encode_raw_table(
    const std::vector<RawProblemRecord>& records) {
  std::vector<CsvRow> rows;
  rows.push_back(raw_table_header());
  for (const RawProblemRecord& r : records)
    rows.push_back({r.problem, r.problem_url, r.problem_type,
                    r.input_image.value_or(""), r.output_image.value_or(""),
                    r.input_description, r.problem_statement, r.description,
                    r.implementations, r.recommended_books,
                    r.related_problems});
  return csv_encode(rows);
}

/// Writes the raw-stage table: eleven columns, RFC 4180 quoting, packed
/// cells keep their literal newlines inside quotes.
inline void export_table(const std::vector<RawProblemRecord>& records,
                         const std::string& path) {
  write_file(path, encode_raw_table(records));
}

inline std::vector<RawProblemRecord> decode_raw_table(
    const std::string& text) {
  std::vector<CsvRow> rows = csv_decode(text);
  if (rows.empty() || rows[0] != raw_table_header())
    throw SyntaxError(1, "raw table header mismatch");
  // 'nan' placeholders from other exporters read as absent
  auto cell = [](const std::string& s) { return s == "nan" ? "" : s; };
  std::vector<RawProblemRecord> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != raw_table_header().size())
      throw SyntaxError(i + 1, "expected 11 cells");
    const CsvRow& r = rows[i];
    RawProblemRecord rec;
    rec.problem = cell(r[0]);
    rec.problem_url = cell(r[1]);
    rec.problem_type = cell(r[2]);
    if (!cell(r[3]).empty()) rec.input_image = cell(r[3]);
    if (!cell(r[4]).empty()) rec.output_image = cell(r[4]);
    rec.input_description = cell(r[5]);
    rec.problem_statement = cell(r[6]);
    rec.description = cell(r[7]);
    rec.implementations = cell(r[8]);
    rec.recommended_books = cell(r[9]);
    rec.related_problems = cell(r[10]);
    records.push_back(std::move(rec));
  }
  return records;
}

inline std::vector<RawProblemRecord> import_raw_table(
    const std::string& path) {
  return decode_raw_table(read_file(path));
}

}  // namespace algokg

#endif  // ALGOKG_EXTRACTOR_HPP
