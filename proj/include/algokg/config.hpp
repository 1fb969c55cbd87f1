#ifndef ALGOKG_CONFIG_HPP
#define ALGOKG_CONFIG_HPP

#include <cstdlib>
#include <map>
#include <string>

#include "algokg/csv.hpp"
#include "algokg/errors.hpp"
#include "algokg/text.hpp"

namespace algokg {

/// Labels that anchor each metadata field on a problem page. The site
/// marks fields with bold labels ("Input Description:") and section
/// headings ("Implementations"), so locators are plain text matched
/// against block starts.
struct FieldLocators {
  std::string input_description = "Input Description:";
  std::string problem_statement = "Problem:";
  std::string description = "Excerpt from The Algorithm Design Manual:";
  std::string implementations = "Implementations";
  std::string recommended_books = "Recommended Books";
  std::string related_problems = "Related Problems";
};

/// Crawl and KG settings. The URL prefixes mirror the source site, which
/// serves problem pages from algorist.com and section pages from
/// www.algorist.com; the two hosts are configured separately and never
/// assumed equivalent.
struct PatternConfig {
  std::string root_url = "https://algorist.com/algorist.html";
  std::string problem_prefix = "https://algorist.com/problems/";
  std::string section_prefix = "https://www.algorist.com/sections";
  std::string language_prefix = "https://algorist.com/languages/";
  FieldLocators locators;
  double politeness_delay_seconds = 1.0;
  std::string resource_namespace = "https://w3id.org/amv/resource/";
};

/// key=value settings file; '#' comments and blank lines allowed.
inline std::map<std::string, std::string> parse_config_text(
    const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, "\n")) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line_no, "expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

inline void apply_config_entry(PatternConfig& config, const std::string& key,
                               const std::string& value) {
  if (key == "root_url")
    config.root_url = value;
  else if (key == "problem_prefix")
    config.problem_prefix = value;
  else if (key == "section_prefix")
    config.section_prefix = value;
  else if (key == "language_prefix")
    config.language_prefix = value;
  else if (key == "politeness_delay_seconds")
    config.politeness_delay_seconds = std::stod(value);
  else if (key == "resource_namespace")
    config.resource_namespace = value;
  else if (key == "label_input_description")
    config.locators.input_description = value;
  else if (key == "label_problem_statement")
    config.locators.problem_statement = value;
  else if (key == "label_description")
    config.locators.description = value;
  else if (key == "label_implementations")
    config.locators.implementations = value;
  else if (key == "label_recommended_books")
    config.locators.recommended_books = value;
  else if (key == "label_related_problems")
    config.locators.related_problems = value;
  else
    throw Error("unknown configuration key: " + key);
}

inline PatternConfig load_config_file(const std::string& path,
                                      PatternConfig base = {}) {
  for (const auto& [key, value] : parse_config_text(read_file(path)))
    apply_config_entry(base, key, value);
  return base;
}

/// ALGOKG_ROOT_URL wins over flags and files.
inline void apply_environment(PatternConfig& config) {
  if (const char* root = std::getenv("ALGOKG_ROOT_URL"))
    if (*root != '\0') config.root_url = root;
}

}  // namespace algokg

#endif  // ALGOKG_CONFIG_HPP
