#ifndef ALGOKG_KG_HPP
#define ALGOKG_KG_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "algokg/errors.hpp"
#include "algokg/normalizer.hpp"
#include "algokg/text.hpp"

namespace algokg {

namespace ns {
inline constexpr std::string_view rdf =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd =
    "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view dct = "http://purl.org/dc/terms/";
inline constexpr std::string_view amv = "https://w3id.org/amv#";
inline constexpr std::string_view resource =
    "https://w3id.org/amv/resource/";

inline const std::string rdf_type = std::string(rdf) + "type";
inline const std::string rdfs_label = std::string(rdfs) + "label";
inline const std::string owl_class = std::string(owl) + "Class";
inline const std::string xsd_integer = std::string(xsd) + "integer";
}  // namespace ns

/// IRI or literal. Subjects and predicates are always IRIs; only objects
/// use the literal side. Plain literals leave datatype empty.
struct Term {
  enum class Kind { Iri, Literal };

  Kind kind = Kind::Iri;
  std::string value;
  std::string datatype;

  static Term iri(std::string v) {
    return Term{Kind::Iri, std::move(v), ""};
  }
  static Term literal(std::string lexical, std::string datatype = "") {
    return Term{Kind::Literal, std::move(lexical), std::move(datatype)};
  }
  bool is_iri() const { return kind == Kind::Iri; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  std::string subject;
  std::string predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

using TripleSet = std::set<Triple>;

/// Triple store with set semantics. Prefixes ride along for the Turtle
/// serialization only; equality of graphs means equality of triple sets.
struct Graph {
  TripleSet triples;
  std::map<std::string, std::string> prefixes;

  void add(Triple t) { triples.insert(std::move(t)); }
  void add(std::string s, std::string p, Term o) {
    triples.insert(Triple{std::move(s), std::move(p), std::move(o)});
  }
  std::size_t size() const { return triples.size(); }
  bool contains(const Triple& t) const { return triples.count(t) > 0; }
};

inline std::map<std::string, std::string> default_prefixes(
    const std::string& resource_ns) {
  return {{"rdf", std::string(ns::rdf)},   {"rdfs", std::string(ns::rdfs)},
          {"owl", std::string(ns::owl)},   {"xsd", std::string(ns::xsd)},
          {"dct", std::string(ns::dct)},   {"amv", std::string(ns::amv)},
          {"res", resource_ns}};
}

/// The fixed schema subset the pipeline writes against: class IRIs and
/// property IRIs grouped by kind, plus per-property literal datatypes.
struct Vocabulary {
  std::string base_resource_ns = std::string(ns::resource);
  std::set<std::string> classes;
  std::set<std::string> object_properties;
  std::set<std::string> data_properties;
  std::set<std::string> annotation_properties;
  std::map<std::string, std::string> data_property_datatypes;

  bool is_object_property(const std::string& iri) const {
    return object_properties.count(iri) > 0;
  }
  bool is_data_property(const std::string& iri) const {
    return data_properties.count(iri) > 0;
  }
  bool is_annotation_property(const std::string& iri) const {
    return annotation_properties.count(iri) > 0;
  }
  bool has_property(const std::string& iri) const {
    return is_object_property(iri) || is_data_property(iri) ||
           is_annotation_property(iri);
  }
  std::string datatype_of(const std::string& data_property) const {
    auto it = data_property_datatypes.find(data_property);
    return it == data_property_datatypes.end() ? "" : it->second;
  }
  Term make_literal(const std::string& property,
                    const std::string& lexical) const {
    return Term::literal(lexical, datatype_of(property));
  }
};

namespace vocab_names {
inline const std::string relation = std::string(ns::dct) + "relation";
inline const std::string title = std::string(ns::dct) + "title";
inline const std::string identifier = std::string(ns::dct) + "identifier";
inline const std::string has_implementation =
    std::string(ns::amv) + "hasImplementation";
inline const std::string in_programming_language =
    std::string(ns::amv) + "inProgrammingLanguage";
inline const std::string recommended_resource =
    std::string(ns::amv) + "recommendedResource";
inline const std::string has_author = std::string(ns::amv) + "hasAuthor";
inline const std::string input_image = std::string(ns::amv) + "inputImage";
inline const std::string output_image =
    std::string(ns::amv) + "outputImage";
inline const std::string input_description =
    std::string(ns::amv) + "inputDescription";
inline const std::string problem_description =
    std::string(ns::amv) + "problemDescription";
inline const std::string excerpt = std::string(ns::amv) + "excerpt";
inline const std::string rating = std::string(ns::amv) + "rating";
inline const std::string cls_implementation =
    std::string(ns::amv) + "Implementation";
inline const std::string cls_book = std::string(ns::amv) + "Book";
inline const std::string cls_person = std::string(ns::amv) + "Person";
inline const std::string cls_programming_language =
    std::string(ns::amv) + "ProgrammingLanguage";
}  // namespace vocab_names

/// Vocabulary file: IRIs one per line under [classes] / [object] / [data]
/// / [annotation] headers; a data-property line may carry a datatype IRI
/// as a second token. Names not attested by the AMV documentation are
/// marked with "# invented" comments in the shipped file.
inline constexpr std::string_view kDefaultVocabularyText =
    R"([resource-namespace]
https://w3id.org/amv/resource/

[classes]
https://w3id.org/amv#Data_Structures
https://w3id.org/amv#Numerical_Problems
https://w3id.org/amv#Combinatorial_Problems
https://w3id.org/amv#Graph_Problems
https://w3id.org/amv#Computational_Geometry
https://w3id.org/amv#Set_and_String_Problems
https://w3id.org/amv#Hard_Problems
https://w3id.org/amv#Implementation
https://w3id.org/amv#Book
https://w3id.org/amv#Person            # invented
https://w3id.org/amv#ProgrammingLanguage

[object]
http://purl.org/dc/terms/relation
https://w3id.org/amv#hasImplementation
https://w3id.org/amv#inProgrammingLanguage
https://w3id.org/amv#recommendedResource
https://w3id.org/amv#hasAuthor         # invented

[data]
http://purl.org/dc/terms/title
http://purl.org/dc/terms/identifier
https://w3id.org/amv#inputImage
https://w3id.org/amv#outputImage
https://w3id.org/amv#inputDescription
https://w3id.org/amv#problemDescription
https://w3id.org/amv#excerpt
https://w3id.org/amv#rating http://www.w3.org/2001/XMLSchema#integer  # invented

[annotation]
http://www.w3.org/2000/01/rdf-schema#label
)";

inline Vocabulary parse_vocabulary(const std::string& text) {
  Vocabulary vocab;
  vocab.base_resource_ns.clear();
  std::string section;
  std::size_t line_no = 0;
  for (const std::string& raw : split(text, "\n")) {
    ++line_no;
    std::string line = raw;
    // '#' opens a comment only at line start or after whitespace, since
    // the IRIs themselves contain fragments
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || is_space(line[i - 1]))) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    std::vector<std::string> tokens;
    for (const std::string& tok : split(normalize_ws(line), " "))
      if (!tok.empty()) tokens.push_back(tok);
    if (section == "resource-namespace") {
      vocab.base_resource_ns = tokens[0];
    } else if (section == "classes") {
      vocab.classes.insert(tokens[0]);
    } else if (section == "object") {
      vocab.object_properties.insert(tokens[0]);
    } else if (section == "data") {
      vocab.data_properties.insert(tokens[0]);
      if (tokens.size() > 1)
        vocab.data_property_datatypes[tokens[0]] = tokens[1];
    } else if (section == "annotation") {
      vocab.annotation_properties.insert(tokens[0]);
    } else {
      throw SyntaxError(line_no, "entry outside a known vocabulary section");
    }
  }
  if (vocab.base_resource_ns.empty())
    vocab.base_resource_ns = std::string(ns::resource);
  return vocab;
}

inline const Vocabulary& default_vocabulary() {
  static const Vocabulary vocab =
      parse_vocabulary(std::string(kDefaultVocabularyText));
  return vocab;
}

enum class MintKind { Individual, Class };

/// Label transform behind IRI minting: whitespace runs become a single
/// '_', everything outside unreserved-plus-underscore is percent-encoded.
/// Injective on distinct transformed labels.
inline std::string transform_label(const std::string& label) {
  std::string collapsed = normalize_ws(label);
  std::string out;
  out.reserve(collapsed.size());
  static const char* hex = "0123456789ABCDEF";
  for (char c : collapsed) {
    if (c == ' ') {
      out.push_back('_');
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
               c == '.' || c == '_' || c == '~') {
      out.push_back(c);
    } else {
      unsigned char b = static_cast<unsigned char>(c);
      out.push_back('%');
      out.push_back(hex[b >> 4]);
      out.push_back(hex[b & 0x0F]);
    }
  }
  return out;
}

inline std::string mint_iri(const std::string& label, MintKind kind,
                            const Vocabulary& vocab) {
  std::string transformed = transform_label(label);
  if (transformed.empty()) throw EmptyLabel();
  if (kind == MintKind::Individual)
    return vocab.base_resource_ns + transformed;
  return std::string(ns::amv) + transformed;
}

/// Direct construction of the graph from structured problems. Mirrors the
/// shipped mapping rules triple for triple; the two paths are required to
/// produce set-equal graphs.
inline Graph build_graph(const std::vector<AlgorithmProblem>& problems,
                         const Vocabulary& vocab = default_vocabulary()) {
  Graph g;
  g.prefixes = default_prefixes(vocab.base_resource_ns);
  {
    std::set<std::string> ids;
    for (const AlgorithmProblem& p : problems)
      if (!ids.insert(p.identifier).second)
        throw DuplicateIdentifier(p.identifier);
  }
  auto declare_class = [&](const std::string& cls) {
    g.add(cls, ns::rdf_type, Term::iri(ns::owl_class));
  };
  auto add_data = [&](const std::string& s, const std::string& p,
                      const std::string& value) {
    if (!trim(value).empty()) g.add(s, p, vocab.make_literal(p, trim(value)));
  };
  for (const AlgorithmProblem& p : problems) {
    // entity nodes exist independently of the problem node, exactly as
    // the per-entity mapping rules fire independently of the problem rule
    bool has_title = !trim(p.title).empty();
    std::string ind;
    if (has_title) {
      ind = mint_iri(p.title, MintKind::Individual, vocab);
      g.add(ind, ns::rdfs_label, Term::literal(trim(p.title)));
      if (!trim(p.problem_type).empty()) {
        std::string cls = mint_iri(p.problem_type, MintKind::Class, vocab);
        g.add(ind, ns::rdf_type, Term::iri(cls));
        declare_class(cls);
      }
      add_data(ind, vocab_names::title, p.title);
      add_data(ind, vocab_names::identifier, p.identifier);
      add_data(ind, vocab_names::input_image, p.input_image.value_or(""));
      add_data(ind, vocab_names::output_image, p.output_image.value_or(""));
      add_data(ind, vocab_names::input_description, p.input_description);
      add_data(ind, vocab_names::problem_description, p.problem_statement);
      add_data(ind, vocab_names::excerpt, p.excerpt);
      for (const RelatedProblemRef& ref : p.related) {
        if (trim(ref.name).empty()) continue;
        g.add(ind, vocab_names::relation,
              Term::iri(mint_iri(ref.name, MintKind::Individual, vocab)));
      }
    }
    for (const Implementation& impl : p.implementations) {
      if (trim(impl.name).empty()) continue;
      std::string impl_iri = mint_iri(impl.name, MintKind::Individual, vocab);
      if (has_title)
        g.add(ind, vocab_names::has_implementation, Term::iri(impl_iri));
      g.add(impl_iri, ns::rdfs_label, Term::literal(trim(impl.name)));
      g.add(impl_iri, ns::rdf_type,
            Term::iri(vocab_names::cls_implementation));
      declare_class(vocab_names::cls_implementation);
      add_data(impl_iri, vocab_names::title, impl.name);
      add_data(impl_iri, vocab_names::identifier, impl.url.value_or(""));
      if (impl.rating)
        add_data(impl_iri, vocab_names::rating, std::to_string(*impl.rating));
      for (const std::string& lang : impl.languages) {
        if (trim(lang).empty()) continue;
        g.add(impl_iri, vocab_names::in_programming_language,
              Term::iri(mint_iri(lang, MintKind::Individual, vocab)));
      }
    }
    for (const Book& book : p.books) {
      if (trim(book.title).empty()) continue;
      std::string book_iri =
          mint_iri(book.title, MintKind::Individual, vocab);
      if (has_title)
        g.add(ind, vocab_names::recommended_resource, Term::iri(book_iri));
      g.add(book_iri, ns::rdfs_label, Term::literal(trim(book.title)));
      g.add(book_iri, ns::rdf_type, Term::iri(vocab_names::cls_book));
      declare_class(vocab_names::cls_book);
      add_data(book_iri, vocab_names::title, book.title);
      add_data(book_iri, vocab_names::identifier, book.url.value_or(""));
      for (const std::string& author : book.authors) {
        if (trim(author).empty()) continue;
        std::string author_iri =
            mint_iri(author, MintKind::Individual, vocab);
        g.add(book_iri, vocab_names::has_author, Term::iri(author_iri));
        g.add(author_iri, ns::rdfs_label, Term::literal(trim(author)));
        g.add(author_iri, ns::rdf_type, Term::iri(vocab_names::cls_person));
        declare_class(vocab_names::cls_person);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------

namespace rdf_detail {

inline void append_escaped_codepoint(std::string& out, uint32_t cp) {
  static const char* hex = "0123456789ABCDEF";
  if (cp <= 0xFFFF) {
    out += "\\u";
    for (int shift = 12; shift >= 0; shift -= 4)
      out.push_back(hex[(cp >> shift) & 0xF]);
  } else {
    out += "\\U";
    for (int shift = 28; shift >= 0; shift -= 4)
      out.push_back(hex[(cp >> shift) & 0xF]);
  }
}

/// ASCII-only string escaping shared by the N-Triples and Turtle writers.
inline std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == '"') {
      out += "\\\"";
      ++i;
    } else if (c == '\\') {
      out += "\\\\";
      ++i;
    } else if (c == '\n') {
      out += "\\n";
      ++i;
    } else if (c == '\r') {
      out += "\\r";
      ++i;
    } else if (c == '\t') {
      out += "\\t";
      ++i;
    } else if (c < 0x20 || c == 0x7F) {
      append_escaped_codepoint(out, c);
      ++i;
    } else if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
    } else {
      // decode one UTF-8 sequence; bad bytes become U+FFFD
      uint32_t cp = 0xFFFD;
      std::size_t len = 1;
      if ((c & 0xE0) == 0xC0 && i + 1 < s.size()) {
        cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
        len = 2;
      } else if ((c & 0xF0) == 0xE0 && i + 2 < s.size()) {
        cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
        len = 3;
      } else if ((c & 0xF8) == 0xF0 && i + 3 < s.size()) {
        cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 |
             (s[i + 2] & 0x3F) << 6 | (s[i + 3] & 0x3F);
        len = 4;
      }
      append_escaped_codepoint(out, cp);
      i += len;
    }
  }
  return out;
}

inline void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string unescape_literal(const std::string& s, std::size_t line) {
  std::string out;
  std::size_t i = 0;
  auto hex_value = [&](char c) -> uint32_t {
    if (c >= '0' && c <= '9') return static_cast<uint32_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<uint32_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<uint32_t>(c - 'A' + 10);
    throw SyntaxError(line, "bad hex digit in escape");
  };
  while (i < s.size()) {
    char c = s[i];
    if (c != '\\') {
      out.push_back(c);
      ++i;
      continue;
    }
    if (i + 1 >= s.size()) throw SyntaxError(line, "dangling escape");
    char e = s[i + 1];
    i += 2;
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 't': out.push_back('\t'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\'': out.push_back('\''); break;
      case '\\': out.push_back('\\'); break;
      case 'u': {
        if (i + 4 > s.size()) throw SyntaxError(line, "short \\u escape");
        uint32_t cp = 0;
        for (int k = 0; k < 4; ++k) cp = cp * 16 + hex_value(s[i + k]);
        i += 4;
        append_utf8(out, cp);
        break;
      }
      case 'U': {
        if (i + 8 > s.size()) throw SyntaxError(line, "short \\U escape");
        uint32_t cp = 0;
        for (int k = 0; k < 8; ++k) cp = cp * 16 + hex_value(s[i + k]);
        i += 8;
        append_utf8(out, cp);
        break;
      }
      default:
        throw SyntaxError(line, std::string("unknown escape \\") + e);
    }
  }
  return out;
}

inline std::string ntriples_term(const Term& t) {
  if (t.is_iri()) return "<" + t.value + ">";
  std::string out = "\"" + escape_literal(t.value) + "\"";
  if (!t.datatype.empty()) out += "^^<" + t.datatype + ">";
  return out;
}

/// A local name usable in a Turtle prefixed name: letters, digits, '_',
/// '-', '%', interior '.'; must be non-empty and not end with '.'.
inline bool turtle_safe_local(std::string_view local) {
  if (local.empty() || local.back() == '.') return false;
  for (char c : local) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
        c == '-' || c == '%' || c == '.')
      continue;
    return false;
  }
  return true;
}

inline std::string turtle_iri(
    const std::string& iri,
    const std::map<std::string, std::string>& prefixes) {
  const std::string* best_prefix = nullptr;
  const std::string* best_ns = nullptr;
  for (const auto& [prefix, nsiri] : prefixes) {
    if (nsiri.empty() || !starts_with(iri, nsiri)) continue;
    if (best_ns == nullptr || nsiri.size() > best_ns->size()) {
      best_prefix = &prefix;
      best_ns = &nsiri;
    }
  }
  if (best_ns != nullptr) {
    std::string local = iri.substr(best_ns->size());
    if (turtle_safe_local(local)) return *best_prefix + ":" + local;
  }
  return "<" + iri + ">";
}

inline std::string turtle_term(
    const Term& t, const std::map<std::string, std::string>& prefixes) {
  if (t.is_iri()) return turtle_iri(t.value, prefixes);
  std::string out = "\"" + escape_literal(t.value) + "\"";
  if (!t.datatype.empty()) out += "^^" + turtle_iri(t.datatype, prefixes);
  return out;
}

}  // namespace rdf_detail

enum class RdfFormat { NTriples, Turtle };

/// Byte-deterministic dumps. N-Triples lines are sorted; Turtle groups by
/// subject with rdf:type first and ';'/',' abbreviations.
inline std::string serialize_graph(const Graph& g, RdfFormat format) {
  if (format == RdfFormat::NTriples) {
    std::vector<std::string> lines;
    lines.reserve(g.triples.size());
    for (const Triple& t : g.triples)
      lines.push_back("<" + t.subject + "> <" + t.predicate + "> " +
                      rdf_detail::ntriples_term(t.object) + " .");
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& line : lines) {
      out += line;
      out += "\n";
    }
    return out;
  }

  std::string out;
  for (const auto& [prefix, nsiri] : g.prefixes)
    out += "@prefix " + prefix + ": <" + nsiri + "> .\n";
  if (!g.prefixes.empty() && !g.triples.empty()) out += "\n";

  // subject -> predicate -> object tokens, everything pre-sorted
  std::map<std::string, std::map<std::string, std::set<std::string>>> grouped;
  for (const Triple& t : g.triples)
    grouped[t.subject][t.predicate].insert(
        rdf_detail::turtle_term(t.object, g.prefixes));
  for (const auto& [subject, by_predicate] : grouped) {
    out += rdf_detail::turtle_iri(subject, g.prefixes);
    std::vector<std::string> predicates;
    for (const auto& [p, objs] : by_predicate) predicates.push_back(p);
    std::sort(predicates.begin(), predicates.end(),
              [](const std::string& a, const std::string& b) {
                bool ta = a == ns::rdf_type;
                bool tb = b == ns::rdf_type;
                if (ta != tb) return ta;
                return a < b;
              });
    bool first_predicate = true;
    for (const std::string& p : predicates) {
      out += first_predicate ? " " : " ;\n    ";
      first_predicate = false;
      out += p == ns::rdf_type ? "a"
                               : rdf_detail::turtle_iri(p, g.prefixes);
      bool first_object = true;
      for (const std::string& obj : by_predicate.at(p)) {
        out += first_object ? " " : " , ";
        first_object = false;
        out += obj;
      }
    }
    out += " .\n";
  }
  return out;
}

namespace rdf_detail {

struct TurtleToken {
  enum class Kind {
    PrefixKeyword,
    Iri,
    PrefixedName,
    Literal,
    Semicolon,
    Comma,
    Dot,
    A,
  };
  Kind kind;
  std::string value;     // iri, "prefix:local", or literal lexical form
  std::string datatype;  // literal datatype token ("" if none)
  std::size_t line;
};

inline std::vector<TurtleToken> turtle_lex(const std::string& text) {
  std::vector<TurtleToken> tokens;
  std::size_t i = 0;
  std::size_t line = 1;
  auto peek = [&](std::size_t k = 0) -> char {
    return i + k < text.size() ? text[i + k] : '\0';
  };
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
    if (c == '<') {
      std::size_t end = text.find('>', i);
      if (end == std::string::npos)
        throw SyntaxError(line, "unterminated IRI");
      tokens.push_back({TurtleToken::Kind::Iri,
                        text.substr(i + 1, end - i - 1), "", line});
      i = end + 1;
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string raw;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\\' && j + 1 < text.size()) {
          raw.push_back(text[j]);
          raw.push_back(text[j + 1]);
          j += 2;
          continue;
        }
        if (text[j] == '\n') throw SyntaxError(line, "newline in literal");
        raw.push_back(text[j]);
        ++j;
      }
      if (j >= text.size()) throw SyntaxError(line, "unterminated literal");
      TurtleToken tok{TurtleToken::Kind::Literal,
                      unescape_literal(raw, line), "", line};
      i = j + 1;
      if (peek() == '^' && peek(1) == '^') {
        i += 2;
        if (peek() == '<') {
          std::size_t end = text.find('>', i);
          if (end == std::string::npos)
            throw SyntaxError(line, "unterminated datatype IRI");
          tok.datatype = text.substr(i + 1, end - i - 1);
          i = end + 1;
        } else {
          std::size_t start = i;
          while (i < text.size() && !is_space(text[i]) && text[i] != ';' &&
                 text[i] != ',' && text[i] != '#')
            ++i;
          std::string qname = text.substr(start, i - start);
          while (!qname.empty() && qname.back() == '.') {
            qname.pop_back();
            --i;
          }
          tok.datatype = qname;  // resolved by the parser
        }
      }
      tokens.push_back(std::move(tok));
      continue;
    }
    if (c == ';') {
      tokens.push_back({TurtleToken::Kind::Semicolon, ";", "", line});
      ++i;
      continue;
    }
    if (c == ',') {
      tokens.push_back({TurtleToken::Kind::Comma, ",", "", line});
      ++i;
      continue;
    }
    if (c == '.') {
      tokens.push_back({TurtleToken::Kind::Dot, ".", "", line});
      ++i;
      continue;
    }
    // bare word: @prefix, 'a', or prefixed name
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i]) && text[i] != ';' &&
           text[i] != ',' && text[i] != '<' && text[i] != '"' &&
           text[i] != '#')
      ++i;
    std::string word = text.substr(start, i - start);
    while (!word.empty() && word.back() == '.') {
      word.pop_back();
      --i;
    }
    if (word.empty()) throw SyntaxError(line, "stray '.'");
    if (word == "@prefix") {
      tokens.push_back({TurtleToken::Kind::PrefixKeyword, word, "", line});
    } else if (word == "a") {
      tokens.push_back({TurtleToken::Kind::A, word, "", line});
    } else if (word.find(':') != std::string::npos) {
      tokens.push_back({TurtleToken::Kind::PrefixedName, word, "", line});
    } else {
      throw SyntaxError(line, "unexpected token: " + word);
    }
  }
  return tokens;
}

}  // namespace rdf_detail

inline Graph parse_graph(const std::string& text, RdfFormat format) {
  Graph g;
  if (format == RdfFormat::NTriples) {
    std::size_t line_no = 0;
    for (const std::string& raw : split(text, "\n")) {
      ++line_no;
      std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      std::size_t pos = 0;
      auto skip_ws = [&] {
        while (pos < line.size() && is_space(line[pos])) ++pos;
      };
      auto read_iri = [&]() -> std::string {
        skip_ws();
        if (pos >= line.size() || line[pos] != '<')
          throw SyntaxError(line_no, "expected IRI");
        std::size_t end = line.find('>', pos);
        if (end == std::string::npos)
          throw SyntaxError(line_no, "unterminated IRI");
        std::string iri = line.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        return iri;
      };
      std::string subject = read_iri();
      std::string predicate = read_iri();
      skip_ws();
      Term object;
      if (pos < line.size() && line[pos] == '<') {
        object = Term::iri(read_iri());
      } else if (pos < line.size() && line[pos] == '"') {
        std::size_t j = pos + 1;
        std::string raw_lexical;
        while (j < line.size() && line[j] != '"') {
          if (line[j] == '\\' && j + 1 < line.size()) {
            raw_lexical.push_back(line[j]);
            raw_lexical.push_back(line[j + 1]);
            j += 2;
            continue;
          }
          raw_lexical.push_back(line[j]);
          ++j;
        }
        if (j >= line.size())
          throw SyntaxError(line_no, "unterminated literal");
        object = Term::literal(
            rdf_detail::unescape_literal(raw_lexical, line_no));
        pos = j + 1;
        if (pos + 1 < line.size() && line[pos] == '^' &&
            line[pos + 1] == '^') {
          pos += 2;
          object.datatype = read_iri();
        }
      } else {
        throw SyntaxError(line_no, "expected IRI or literal object");
      }
      skip_ws();
      if (pos >= line.size() || line[pos] != '.')
        throw SyntaxError(line_no, "missing terminating '.'");
      ++pos;
      skip_ws();
      if (pos != line.size()) throw SyntaxError(line_no, "trailing content");
      g.add(subject, predicate, std::move(object));
    }
    return g;
  }

  using Tok = rdf_detail::TurtleToken;
  std::vector<Tok> tokens = rdf_detail::turtle_lex(text);
  std::size_t i = 0;
  auto at_end = [&] { return i >= tokens.size(); };
  auto expect = [&](Tok::Kind kind, const char* what) -> const Tok& {
    if (at_end())
      throw SyntaxError(tokens.empty() ? 1 : tokens.back().line,
                        std::string("expected ") + what);
    if (tokens[i].kind != kind)
      throw SyntaxError(tokens[i].line, std::string("expected ") + what);
    return tokens[i++];
  };
  auto resolve_qname = [&](const std::string& qname,
                           std::size_t line) -> std::string {
    std::size_t colon = qname.find(':');
    std::string prefix = qname.substr(0, colon);
    auto it = g.prefixes.find(prefix);
    if (it == g.prefixes.end()) throw SyntaxError(line, "unknown prefix: " + prefix);
    return it->second + qname.substr(colon + 1);
  };
  auto read_resource = [&]() -> std::string {
    if (at_end())
      throw SyntaxError(tokens.back().line, "unexpected end of input");
    const Tok& tok = tokens[i];
    if (tok.kind == Tok::Kind::Iri) {
      ++i;
      return tok.value;
    }
    if (tok.kind == Tok::Kind::PrefixedName) {
      ++i;
      return resolve_qname(tok.value, tok.line);
    }
    throw SyntaxError(tok.line, "expected IRI or prefixed name");
  };
  auto read_object = [&]() -> Term {
    if (at_end())
      throw SyntaxError(tokens.back().line, "unexpected end of input");
    const Tok& tok = tokens[i];
    if (tok.kind == Tok::Kind::Literal) {
      ++i;
      std::string datatype = tok.datatype;
      if (!datatype.empty() && datatype.find("://") == std::string::npos)
        datatype = resolve_qname(datatype, tok.line);
      return Term::literal(tok.value, datatype);
    }
    return Term::iri(read_resource());
  };

  while (!at_end()) {
    if (tokens[i].kind == Tok::Kind::PrefixKeyword) {
      ++i;
      const Tok& name = expect(Tok::Kind::PrefixedName, "prefix declaration");
      if (name.value.back() != ':')
        throw SyntaxError(name.line, "prefix must end with ':'");
      const Tok& iri = expect(Tok::Kind::Iri, "namespace IRI");
      expect(Tok::Kind::Dot, "'.' after @prefix");
      g.prefixes[name.value.substr(0, name.value.size() - 1)] = iri.value;
      continue;
    }
    std::string subject = read_resource();
    while (true) {
      std::string predicate;
      if (!at_end() && tokens[i].kind == Tok::Kind::A) {
        ++i;
        predicate = ns::rdf_type;
      } else {
        predicate = read_resource();
      }
      while (true) {
        g.add(subject, predicate, read_object());
        if (!at_end() && tokens[i].kind == Tok::Kind::Comma) {
          ++i;
          continue;
        }
        break;
      }
      if (!at_end() && tokens[i].kind == Tok::Kind::Semicolon) {
        ++i;
        continue;
      }
      break;
    }
    expect(Tok::Kind::Dot, "'.' at end of statement");
  }
  return g;
}

// ---------------------------------------------------------------------
// statistics and validation
// ---------------------------------------------------------------------

struct KgStats {
  std::size_t individuals = 0;
  std::size_t triples = 0;
  std::size_t classes_used = 0;
  std::size_t object_properties_used = 0;
  std::size_t data_properties_used = 0;
};

/// Individuals are subjects typed by something other than the owl:Class
/// marker; class declarations do not count.
inline KgStats stats(const Graph& g, const Vocabulary& vocab) {
  KgStats out;
  out.triples = g.triples.size();
  std::set<std::string> individuals;
  std::set<std::string> classes;
  std::set<std::string> object_props;
  std::set<std::string> data_props;
  for (const Triple& t : g.triples) {
    if (t.predicate == ns::rdf_type && t.object.is_iri()) {
      if (t.object.value == ns::owl_class) continue;
      individuals.insert(t.subject);
      classes.insert(t.object.value);
    }
    if (vocab.is_object_property(t.predicate))
      object_props.insert(t.predicate);
    if (vocab.is_data_property(t.predicate)) data_props.insert(t.predicate);
  }
  out.individuals = individuals.size();
  out.classes_used = classes.size();
  out.object_properties_used = object_props.size();
  out.data_properties_used = data_props.size();
  return out;
}

struct Violation {
  std::string subject;
  std::string predicate;
  std::string message;
};

/// Basic structural checks against the vocabulary: unknown predicates,
/// object properties with literal objects, data properties with IRI
/// objects, and untyped subjects. rdf:type itself is structural.
inline std::vector<Violation> validate_schema(const Graph& g,
                                              const Vocabulary& vocab) {
  std::vector<Violation> out;
  std::set<std::string> typed;
  for (const Triple& t : g.triples)
    if (t.predicate == ns::rdf_type) typed.insert(t.subject);
  std::set<std::string> untyped_reported;
  for (const Triple& t : g.triples) {
    if (t.predicate != ns::rdf_type) {
      if (!vocab.has_property(t.predicate)) {
        out.push_back({t.subject, t.predicate,
                       "predicate not in vocabulary: " + t.predicate});
      } else if (vocab.is_object_property(t.predicate) &&
                 !t.object.is_iri()) {
        out.push_back({t.subject, t.predicate,
                       "object property with literal object: " +
                           t.predicate});
      } else if (vocab.is_data_property(t.predicate) && t.object.is_iri()) {
        out.push_back({t.subject, t.predicate,
                       "data property with IRI object: " + t.predicate});
      }
    }
    if (typed.count(t.subject) == 0 &&
        untyped_reported.insert(t.subject).second)
      out.push_back(
          {t.subject, t.predicate, "untyped subject: " + t.subject});
  }
  return out;
}

}  // namespace algokg

#endif  // ALGOKG_KG_HPP
