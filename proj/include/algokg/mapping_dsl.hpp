#ifndef ALGOKG_MAPPING_DSL_HPP
#define ALGOKG_MAPPING_DSL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algokg/errors.hpp"
#include "algokg/kg.hpp"
#include "algokg/normalizer.hpp"
#include "algokg/text.hpp"

namespace algokg {

/// Spreadsheet-style column arithmetic: A..Z, AA, AB, ...
inline std::size_t column_index(const std::string& label) {
  std::size_t n = 0;
  for (char c : label) n = n * 26 + static_cast<std::size_t>(c - 'A' + 1);
  return n - 1;
}

inline std::string column_label(std::size_t index) {
  std::string out;
  std::size_t n = index + 1;
  while (n > 0) {
    out.insert(out.begin(), static_cast<char>('A' + (n - 1) % 26));
    n = (n - 1) / 26;
  }
  return out;
}

/// Per-row cell reference: `@X*` reads the cell value, `@X**` reads it as
/// a class name and declares the class.
struct CellRef {
  enum class Mode { Value, ClassDecl };

  std::string column;
  Mode mode = Mode::Value;

  bool operator==(const CellRef&) const = default;
};

/// Types clause entry: either a class-declaring cell reference or a fixed
/// class named directly by qname.
struct TypeEntry {
  bool fixed = false;
  std::string class_iri;  // when fixed
  CellRef ref;            // when not

  bool operator==(const TypeEntry&) const = default;
};

struct MappingRule {
  CellRef individual;  // Value mode
  std::optional<std::pair<std::string, CellRef>> label_annotation;
  std::vector<TypeEntry> types;
  std::vector<std::pair<std::string, CellRef>> facts;  // property IRI, ref

  bool operator==(const MappingRule&) const = default;
};

struct RuleSet {
  std::map<std::string, std::string> prefixes;
  std::vector<MappingRule> rules;

  bool operator==(const RuleSet&) const = default;
};

namespace dsl_detail {

struct Token {
  enum class Kind {
    Name,
    Colon,
    Equals,
    Comma,
    LParen,
    RParen,
    Iri,
    Vref,
    Cref,
  };
  Kind kind;
  std::string text;
  std::size_t line;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ':') {
      tokens.push_back({Token::Kind::Colon, ":", line});
      ++i;
      continue;
    }
    if (c == '=') {
      tokens.push_back({Token::Kind::Equals, "=", line});
      ++i;
      continue;
    }
    if (c == ',') {
      tokens.push_back({Token::Kind::Comma, ",", line});
      ++i;
      continue;
    }
    if (c == '(') {
      tokens.push_back({Token::Kind::LParen, "(", line});
      ++i;
      continue;
    }
    if (c == ')') {
      tokens.push_back({Token::Kind::RParen, ")", line});
      ++i;
      continue;
    }
    if (c == '<') {
      std::size_t end = text.find('>', i);
      if (end == std::string::npos)
        throw SyntaxError(line, "unterminated IRI");
      tokens.push_back({Token::Kind::Iri, text.substr(i + 1, end - i - 1),
                        line});
      i = end + 1;
      continue;
    }
    if (c == '@') {
      std::size_t j = i + 1;
      std::string column;
      while (j < text.size() && text[j] >= 'A' && text[j] <= 'Z')
        column.push_back(text[j++]);
      if (column.empty())
        throw SyntaxError(line, "cell reference needs a column letter");
      if (j >= text.size() || text[j] != '*')
        throw SyntaxError(line, "cell reference must end with '*'");
      ++j;
      bool class_decl = j < text.size() && text[j] == '*';
      if (class_decl) ++j;
      tokens.push_back({class_decl ? Token::Kind::Cref : Token::Kind::Vref,
                        column, line});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_' || text[j] == '-'))
        ++j;
      tokens.push_back({Token::Kind::Name, text.substr(i, j - i), line});
      i = j;
      continue;
    }
    throw SyntaxError(line, std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

inline bool is_reserved(const std::string& name) {
  return name == "Prefix" || name == "Individual" || name == "Types" ||
         name == "Facts";
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  RuleSet parse() {
    RuleSet out;
    while (!at_end()) {
      const Token& tok = expect(Token::Kind::Name, "'Prefix:' or 'Individual:'");
      if (tok.text == "Prefix") {
        expect(Token::Kind::Colon, "':' after 'Prefix'");
        const Token& name = expect(Token::Kind::Name, "prefix name");
        expect(Token::Kind::Equals, "'=' in prefix declaration");
        const Token& iri = expect(Token::Kind::Iri, "namespace IRI");
        out.prefixes[name.text] = iri.text;
      } else if (tok.text == "Individual") {
        expect(Token::Kind::Colon, "':' after 'Individual'");
        out.rules.push_back(parse_rule(out));
      } else {
        throw SyntaxError(tok.line, "expected 'Prefix:' or 'Individual:', got '" +
                                        tok.text + "'");
      }
    }
    return out;
  }

private:
  MappingRule parse_rule(const RuleSet& scope) {
    MappingRule rule;
    const Token& ind = next("individual cell reference");
    if (ind.kind == Token::Kind::Cref)
      throw SyntaxError(ind.line,
                        "a class-declaring reference cannot mint an individual");
    if (ind.kind != Token::Kind::Vref)
      throw SyntaxError(ind.line, "expected a value reference like '@A*'");
    rule.individual = CellRef{ind.text, CellRef::Mode::Value};

    if (!at_end() && peek().kind == Token::Kind::LParen) {
      ++pos_;
      std::string property = parse_qname(scope);
      expect(Token::Kind::Equals, "'=' in annotation");
      expect(Token::Kind::LParen, "'(' before annotation reference");
      const Token& ref = next("annotation cell reference");
      if (ref.kind != Token::Kind::Vref)
        throw SyntaxError(ref.line, "annotation takes a value reference");
      expect(Token::Kind::RParen, "')' after annotation reference");
      expect(Token::Kind::RParen, "')' closing annotation");
      rule.label_annotation = {property, CellRef{ref.text, CellRef::Mode::Value}};
    }

    const Token& types_kw = expect(Token::Kind::Name, "'Types:'");
    if (types_kw.text != "Types")
      throw SyntaxError(types_kw.line, "expected 'Types:'");
    expect(Token::Kind::Colon, "':' after 'Types'");
    while (true) {
      rule.types.push_back(parse_type_entry(scope));
      if (!at_end() && peek().kind == Token::Kind::Comma) {
        ++pos_;
        continue;
      }
      break;
    }

    if (!at_end() && peek().kind == Token::Kind::Name &&
        peek().text == "Facts") {
      ++pos_;
      expect(Token::Kind::Colon, "':' after 'Facts'");
      while (true) {
        std::string property = parse_qname(scope);
        const Token& ref = next("fact cell reference");
        if (ref.kind == Token::Kind::Cref)
          throw SyntaxError(ref.line,
                            "class-declaring references are not allowed in Facts");
        if (ref.kind != Token::Kind::Vref)
          throw SyntaxError(ref.line, "expected a value reference like '@A*'");
        rule.facts.emplace_back(property,
                                CellRef{ref.text, CellRef::Mode::Value});
        if (!at_end() && peek().kind == Token::Kind::Comma) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    return rule;
  }

  TypeEntry parse_type_entry(const RuleSet& scope) {
    const Token& tok = next("type entry");
    if (tok.kind == Token::Kind::Vref)
      throw SyntaxError(tok.line,
                        "Types takes class-declaring references ('@X**') or "
                        "class names");
    if (tok.kind == Token::Kind::Cref) {
      TypeEntry entry;
      entry.ref = CellRef{tok.text, CellRef::Mode::ClassDecl};
      return entry;
    }
    if (tok.kind == Token::Kind::Name && !is_reserved(tok.text)) {
      --pos_;
      TypeEntry entry;
      entry.fixed = true;
      entry.class_iri = parse_qname(scope);
      return entry;
    }
    throw SyntaxError(tok.line, "expected a type entry");
  }

  std::string parse_qname(const RuleSet& scope) {
    const Token& prefix = expect(Token::Kind::Name, "qname prefix");
    if (is_reserved(prefix.text))
      throw SyntaxError(prefix.line,
                        "'" + prefix.text + "' cannot start a qname");
    expect(Token::Kind::Colon, "':' inside qname");
    const Token& local = expect(Token::Kind::Name, "qname local part");
    auto it = scope.prefixes.find(prefix.text);
    if (it == scope.prefixes.end())
      throw UndeclaredPrefix(prefix.line, prefix.text);
    return it->second + local.text;
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next(const char* what) {
    if (at_end())
      throw SyntaxError(last_line(), std::string("expected ") + what +
                                         ", got end of input");
    return tokens_[pos_++];
  }
  const Token& expect(Token::Kind kind, const char* what) {
    const Token& tok = next(what);
    if (tok.kind != kind)
      throw SyntaxError(tok.line,
                        std::string("expected ") + what + ", got '" +
                            tok.text + "'");
    return tok;
  }
  std::size_t last_line() const {
    return tokens_.empty() ? 1 : tokens_.back().line;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace dsl_detail

inline RuleSet parse_rules(const std::string& text) {
  return dsl_detail::Parser(dsl_detail::lex(text)).parse();
}

/// Trimmed cell under the reference's column; empty cells are absent.
inline std::optional<std::string> resolve_ref(
    const CellRef& ref, const std::vector<std::string>& row,
    const std::vector<std::string>& header) {
  std::size_t index = column_index(ref.column);
  if (index >= header.size())
    throw ColumnOutOfRange(ref.column, header.size());
  if (index >= row.size()) return std::nullopt;
  std::string value = trim(row[index]);
  if (value.empty()) return std::nullopt;
  return value;
}

/// Runs every rule over every row. A rule fires only when its individual
/// reference resolves; resolved type references mint and declare classes;
/// facts follow the property kind in the vocabulary (object properties
/// mint IRIs, data and annotation properties make literals). Empty cells
/// contribute nothing.
inline Graph apply_rules(const RuleSet& rules, const ProcessedTable& table,
                         const Vocabulary& vocab = default_vocabulary()) {
  for (const MappingRule& rule : rules.rules) {
    if (rule.label_annotation && !vocab.has_property(rule.label_annotation->first))
      throw UnknownProperty(rule.label_annotation->first);
    for (const auto& [property, ref] : rule.facts)
      if (!vocab.has_property(property)) throw UnknownProperty(property);
  }

  Graph g;
  g.prefixes = default_prefixes(vocab.base_resource_ns);
  for (const auto& row : table.rows) {
    for (const MappingRule& rule : rules.rules) {
      auto individual_value = resolve_ref(rule.individual, row, table.header);
      if (!individual_value) continue;
      std::string ind = mint_iri(*individual_value, MintKind::Individual, vocab);
      for (const TypeEntry& type : rule.types) {
        std::string cls;
        if (type.fixed) {
          cls = type.class_iri;
        } else {
          auto value = resolve_ref(type.ref, row, table.header);
          if (!value) continue;
          cls = mint_iri(*value, MintKind::Class, vocab);
        }
        g.add(ind, ns::rdf_type, Term::iri(cls));
        g.add(cls, ns::rdf_type, Term::iri(ns::owl_class));
      }
      if (rule.label_annotation) {
        if (auto value =
                resolve_ref(rule.label_annotation->second, row, table.header))
          g.add(ind, rule.label_annotation->first,
                vocab.make_literal(rule.label_annotation->first, *value));
      }
      for (const auto& [property, ref] : rule.facts) {
        auto value = resolve_ref(ref, row, table.header);
        if (!value) continue;
        if (vocab.is_object_property(property))
          g.add(ind, property,
                Term::iri(mint_iri(*value, MintKind::Individual, vocab)));
        else
          g.add(ind, property, vocab.make_literal(property, *value));
      }
    }
  }
  return g;
}

namespace dsl_detail {

inline std::string ref_for(const std::vector<std::string>& header,
                           const std::string& column_name) {
  auto it = std::find(header.begin(), header.end(), column_name);
  if (it == header.end())
    throw Error("processed table lacks column: " + column_name);
  return "@" +
         column_label(static_cast<std::size_t>(it - header.begin())) + "*";
}

}  // namespace dsl_detail

/// Generates the rule file the pipeline applies by default: one rule
/// minting the problem individual, one adding its relation links, then
/// one rule per implementation, book, and author slot present in the
/// header. Multi-valued links become one fact per expanded column;
/// skip-if-empty keeps ragged rows safe.
inline std::string default_rules_text(const std::vector<std::string>& header) {
  using dsl_detail::ref_for;
  TableLayout layout;
  for (const std::string& name : header) {
    norm_detail::FamilyColumns impls, related, books;
    if (norm_detail::parse_family_column(name, "implementation", "language",
                                         impls, 0)) {
      for (const auto& [i, f] : impls.fields)
        layout.max_implementations = std::max(layout.max_implementations, i);
      for (const auto& [i, sub] : impls.sub)
        for (const auto& [j, c] : sub)
          layout.max_languages = std::max(layout.max_languages, j);
    } else if (norm_detail::parse_family_column(name, "related_problem", "",
                                                related, 0)) {
      for (const auto& [i, f] : related.fields)
        layout.max_related = std::max(layout.max_related, i);
    } else if (norm_detail::parse_family_column(name, "recommended_book",
                                                "author", books, 0)) {
      for (const auto& [i, f] : books.fields)
        layout.max_books = std::max(layout.max_books, i);
      for (const auto& [i, sub] : books.sub)
        for (const auto& [j, c] : sub)
          layout.max_authors = std::max(layout.max_authors, j);
    }
  }

  std::string out;
  out += "# generated mapping rules for the current table layout\n";
  out += "Prefix: rdfs = <" + std::string(ns::rdfs) + ">\n";
  out += "Prefix: dct = <" + std::string(ns::dct) + ">\n";
  out += "Prefix: amv = <" + std::string(ns::amv) + ">\n";
  out += "\n";

  std::vector<std::string> facts;
  auto flush_rule = [&](const std::string& individual_col,
                        const std::string& types_clause, bool with_label) {
    out += "Individual: " + individual_col;
    if (with_label) out += " (rdfs:label=(" + individual_col + "))";
    out += "\nTypes: " + types_clause + "\n";
    if (!facts.empty()) {
      out += "Facts: ";
      for (std::size_t i = 0; i < facts.size(); ++i) {
        if (i > 0) out += ",\n    ";
        out += facts[i];
      }
      out += "\n";
    }
    out += "\n";
    facts.clear();
  };

  // the problem rule
  facts.push_back("dct:title " + ref_for(header, "problem"));
  facts.push_back("dct:identifier " + ref_for(header, "problem_url"));
  facts.push_back("amv:inputImage " + ref_for(header, "input_image"));
  facts.push_back("amv:outputImage " + ref_for(header, "output_image"));
  facts.push_back("amv:inputDescription " +
                  ref_for(header, "input_description"));
  facts.push_back("amv:problemDescription " +
                  ref_for(header, "problem_statement"));
  facts.push_back("amv:excerpt " + ref_for(header, "description"));
  for (std::size_t i = 1; i <= layout.max_implementations; ++i)
    facts.push_back(
        "amv:hasImplementation " +
        ref_for(header, "implementation_" + std::to_string(i) + "_name"));
  for (std::size_t i = 1; i <= layout.max_books; ++i)
    facts.push_back(
        "amv:recommendedResource " +
        ref_for(header, "recommended_book_" + std::to_string(i) + "_name"));
  std::string problem_ref = dsl_detail::ref_for(header, "problem");
  std::string type_ref = dsl_detail::ref_for(header, "problem_type");
  flush_rule(problem_ref, type_ref + "*", true);

  // the relation links, as their own rule on the same individual
  if (layout.max_related > 0) {
    for (std::size_t i = 1; i <= layout.max_related; ++i)
      facts.push_back(
          "dct:relation " +
          ref_for(header, "related_problem_" + std::to_string(i) + "_name"));
    flush_rule(problem_ref, type_ref + "*", false);
  }

  for (std::size_t i = 1; i <= layout.max_implementations; ++i) {
    std::string base = "implementation_" + std::to_string(i) + "_";
    std::string name_ref = ref_for(header, base + "name");
    facts.push_back("dct:title " + name_ref);
    facts.push_back("dct:identifier " + ref_for(header, base + "url"));
    facts.push_back("amv:rating " + ref_for(header, base + "rating"));
    for (std::size_t j = 1; j <= layout.max_languages; ++j)
      facts.push_back(
          "amv:inProgrammingLanguage " +
          ref_for(header, base + "language_" + std::to_string(j)));
    flush_rule(name_ref, "amv:Implementation", true);
  }

  for (std::size_t i = 1; i <= layout.max_books; ++i) {
    std::string base = "recommended_book_" + std::to_string(i) + "_";
    std::string name_ref = ref_for(header, base + "name");
    facts.push_back("dct:title " + name_ref);
    facts.push_back("dct:identifier " + ref_for(header, base + "url"));
    for (std::size_t j = 1; j <= layout.max_authors; ++j)
      facts.push_back("amv:hasAuthor " +
                      ref_for(header, base + "author_" + std::to_string(j)));
    flush_rule(name_ref, "amv:Book", true);
  }

  for (std::size_t i = 1; i <= layout.max_books; ++i)
    for (std::size_t j = 1; j <= layout.max_authors; ++j) {
      std::string name_ref =
          ref_for(header, "recommended_book_" + std::to_string(i) +
                              "_author_" + std::to_string(j));
      flush_rule(name_ref, "amv:Person", true);
    }

  return out;
}

inline RuleSet default_rules(const std::vector<std::string>& header) {
  return parse_rules(default_rules_text(header));
}

}  // namespace algokg

#endif  // ALGOKG_MAPPING_DSL_HPP
