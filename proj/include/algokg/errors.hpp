#ifndef ALGOKG_ERRORS_HPP
#define ALGOKG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace algokg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

class MalformedUrl : public Error {
public:
  explicit MalformedUrl(const std::string& url)
      : Error("malformed url: " + url) {}
};

class EmptyDocument : public Error {
public:
  EmptyDocument() : Error("document contains no markup") {}
};

class MissingManifest : public Error {
public:
  explicit MissingManifest(const std::string& detail)
      : Error("missing manifest: " + detail) {}
};

class ManifestUrlCollision : public Error {
public:
  explicit ManifestUrlCollision(const std::string& url)
      : Error("two manifest entries claim the same url: " + url) {}
};

class NoTitle : public Error {
public:
  explicit NoTitle(const std::string& url)
      : Error("page has no level-1 heading: " + url) {}
};

class NoHeading : public Error {
public:
  explicit NoHeading(const std::string& url)
      : Error("section page has no heading: " + url) {}
};

class FieldContainsDelimiter : public Error {
public:
  explicit FieldContainsDelimiter(const std::string& field)
      : Error("field contains the packing delimiter: " + field) {}
};

class DuplicateIdentifier : public Error {
public:
  explicit DuplicateIdentifier(const std::string& id)
      : Error("duplicate problem identifier: " + id) {}
};

class EmptyLabel : public Error {
public:
  EmptyLabel() : Error("cannot mint an IRI from an empty label") {}
};

class ColumnOutOfRange : public Error {
public:
  ColumnOutOfRange(const std::string& column, std::size_t width)
      : Error("column " + column + " is outside a table of width " +
              std::to_string(width)) {}
};

class UnknownProperty : public Error {
public:
  explicit UnknownProperty(const std::string& iri)
      : Error("property not declared in the vocabulary: " + iri) {}
};

/// Parse failure with a 1-based line number, used by every text format
/// reader (mapping rules, queries, graph dumps, manifests).
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class UndeclaredPrefix : public SyntaxError {
public:
  UndeclaredPrefix(std::size_t line, const std::string& prefix)
      : SyntaxError(line, "undeclared prefix: " + prefix) {}
};

/// Collector for non-fatal per-item problems. Crawling and splitting keep
/// going past bad entries; callers that care pass a sink and inspect or
/// print it afterwards.
struct Diagnostics {
  std::vector<std::string> messages;

  void add(std::string message) { messages.push_back(std::move(message)); }
  bool empty() const { return messages.empty(); }
  std::size_t size() const { return messages.size(); }
};

inline void diag(Diagnostics* sink, std::string message) {
  if (sink != nullptr) sink->add(std::move(message));
}

}  // namespace algokg

#endif  // ALGOKG_ERRORS_HPP
