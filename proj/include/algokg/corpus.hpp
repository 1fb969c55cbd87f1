#ifndef ALGOKG_CORPUS_HPP
#define ALGOKG_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "algokg/config.hpp"
#include "algokg/csv.hpp"
#include "algokg/errors.hpp"
#include "algokg/html.hpp"
#include "algokg/url.hpp"

namespace algokg {

struct PageContent {
  std::string url;
  std::string body;
  std::int64_t fetched_at = 0;  // seconds; informational only
};

/// Immutable one-hop snapshot of the site: the homepage plus the pages it
/// links to. Safe to share across threads once built.
struct CorpusSnapshot {
  std::map<std::string, PageContent> pages;  // keyed by absolute URL
  std::string root_url;

  const PageContent* find(const std::string& url) const {
    auto it = pages.find(url);
    return it == pages.end() ? nullptr : &it->second;
  }
  const PageContent& root() const { return pages.at(root_url); }
};

enum class LinkClass { Problem, Section, Language, Other };

/// Every hyperlink target on the page, resolved to absolute URLs in
/// document order. Duplicates are preserved.
inline std::vector<std::string> discover_links(const PageContent& homepage) {
  PageScan scan = scan_page(homepage.body);
  if (scan.tag_count == 0) throw EmptyDocument();
  std::vector<std::string> out;
  for (const Anchor& a : scan.anchors) {
    if (trim(a.href).empty()) continue;
    out.push_back(resolve_url(homepage.url, a.href));
  }
  return out;
}

/// Literal prefix match after lowercasing scheme and host. The prefixes
/// come from configuration; problem and section pages live on different
/// hosts on the source site.
inline LinkClass classify_link(const std::string& url,
                               const PatternConfig& config) {
  std::string canon = canonical_url(url);  // throws MalformedUrl
  if (starts_with(canon, config.problem_prefix)) return LinkClass::Problem;
  if (starts_with(canon, config.section_prefix)) return LinkClass::Section;
  if (starts_with(canon, config.language_prefix)) return LinkClass::Language;
  return LinkClass::Other;
}

/// Fetches one URL, returning the body. Throws on failure; load_corpus
/// records the failure and moves on.
using Fetcher = std::function<std::string(const std::string& url)>;

struct ManifestEntry {
  std::string file_name;
  std::string url;
};

/// Manifest format: one "<file-name>\t<absolute-url>" pair per line,
/// '#' comments and blank lines allowed.
inline std::vector<ManifestEntry> parse_manifest(const std::string& text) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen_urls;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, "\n")) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw SyntaxError(line_no, "expected <file-name><TAB><absolute-url>");
    ManifestEntry entry{trim(line.substr(0, tab)), trim(line.substr(tab + 1))};
    if (entry.file_name.empty() || entry.url.empty())
      throw SyntaxError(line_no, "empty manifest field");
    parse_url(entry.url);  // must be absolute
    if (!seen_urls.insert(entry.url).second)
      throw ManifestUrlCollision(entry.url);
    entries.push_back(std::move(entry));
  }
  return entries;
}

/// Loads the snapshot from a fixture directory: every manifest-listed file
/// becomes a page keyed by its original URL. Unreadable or empty files are
/// recorded and skipped, except the root page, which is required.
inline CorpusSnapshot load_fixture_corpus(const std::string& directory,
                                          const PatternConfig& config,
                                          Diagnostics* diags = nullptr) {
  namespace fs = std::filesystem;
  fs::path dir(directory);
  fs::path manifest_path = dir / "manifest.tsv";
  if (!fs::exists(manifest_path))
    throw MissingManifest("no manifest.tsv in " + directory);
  std::vector<ManifestEntry> entries =
      parse_manifest(read_file(manifest_path.string()));

  CorpusSnapshot snapshot;
  snapshot.root_url = config.root_url;
  for (const ManifestEntry& entry : entries) {
    fs::path file = dir / entry.file_name;
    std::string body;
    try {
      body = read_file(file.string());
    } catch (const IoError& e) {
      diag(diags, std::string("fetch failure: ") + entry.url + ": " +
                      e.what());
      continue;
    }
    if (body.empty()) {
      diag(diags, "fetch failure: " + entry.url + ": empty file");
      continue;
    }
    snapshot.pages[entry.url] = PageContent{entry.url, body, 0};
  }
  if (snapshot.pages.find(snapshot.root_url) == snapshot.pages.end())
    throw MissingManifest("root page absent: " + snapshot.root_url);
  return snapshot;
}

/// Live mode: fetch the homepage, then every Problem/Section/Language link
/// on it, each URL at most once and strictly sequentially. A failed page
/// is recorded as a diagnostic and skipped.
inline CorpusSnapshot load_live_corpus(const Fetcher& fetch,
                                       const PatternConfig& config,
                                       Diagnostics* diags = nullptr,
                                       std::int64_t now = 0) {
  CorpusSnapshot snapshot;
  snapshot.root_url = config.root_url;
  std::string root_body;
  try {
    root_body = fetch(config.root_url);
  } catch (const std::exception& e) {
    throw IoError("cannot fetch root page " + config.root_url + ": " +
                  e.what());
  }
  if (root_body.empty())
    throw IoError("root page is empty: " + config.root_url);
  snapshot.pages[config.root_url] =
      PageContent{config.root_url, root_body, now};

  std::set<std::string> requested{config.root_url};
  for (const std::string& url : discover_links(snapshot.root())) {
    LinkClass cls;
    try {
      cls = classify_link(url, config);
    } catch (const MalformedUrl&) {
      continue;
    }
    if (cls == LinkClass::Other) continue;
    if (!requested.insert(url).second) continue;
    try {
      std::string body = fetch(url);
      if (body.empty()) throw IoError("empty body");
      snapshot.pages[url] = PageContent{url, body, now};
    } catch (const std::exception& e) {
      diag(diags, std::string("fetch failure: ") + url + ": " + e.what());
    }
  }
  return snapshot;
}

}  // namespace algokg

#endif  // ALGOKG_CORPUS_HPP
