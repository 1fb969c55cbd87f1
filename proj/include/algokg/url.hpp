#ifndef ALGOKG_URL_HPP
#define ALGOKG_URL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algokg/errors.hpp"
#include "algokg/text.hpp"

namespace algokg {

/// Decomposed absolute URL. Only the pieces the crawler needs; query
/// strings stay glued to the path.
struct Url {
  std::string scheme;
  std::string host;  // includes :port when present
  std::string path;  // always begins with '/' (or is empty for mailto-like)

  std::string str() const { return scheme + "://" + host + path; }
};

inline std::optional<Url> try_parse_url(std::string_view s) {
  std::size_t scheme_end = s.find("://");
  if (scheme_end == std::string_view::npos || scheme_end == 0) return {};
  Url u;
  u.scheme = std::string(s.substr(0, scheme_end));
  for (char c : u.scheme) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' &&
        c != '-' && c != '.')
      return {};
  }
  std::string_view rest = s.substr(scheme_end + 3);
  std::size_t path_start = rest.find_first_of("/?#");
  if (path_start == std::string_view::npos) {
    u.host = std::string(rest);
    u.path = "/";
  } else {
    u.host = std::string(rest.substr(0, path_start));
    u.path = std::string(rest.substr(path_start));
    if (u.path[0] != '/') u.path = "/" + u.path;
  }
  if (u.host.empty()) return {};
  return u;
}

inline Url parse_url(std::string_view s) {
  auto u = try_parse_url(s);
  if (!u) throw MalformedUrl(std::string(s));
  return *u;
}

/// Lowercases scheme and host, leaves the path untouched.
inline std::string canonical_url(std::string_view s) {
  Url u = parse_url(s);
  return to_lower(u.scheme) + "://" + to_lower(u.host) + u.path;
}

inline std::string strip_fragment(std::string s) {
  std::size_t hash = s.find('#');
  if (hash != std::string::npos) s.resize(hash);
  return s;
}

namespace detail {

inline std::string merge_paths(std::string_view base_path,
                               std::string_view ref) {
  std::string merged;
  std::size_t slash = base_path.rfind('/');
  if (slash == std::string_view::npos)
    merged = "/";
  else
    merged = std::string(base_path.substr(0, slash + 1));
  merged.append(ref);
  return merged;
}

inline std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string> out;
  for (const std::string& seg : split(path, "/")) {
    if (seg == "." || seg.empty()) continue;
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
      continue;
    }
    out.push_back(seg);
  }
  std::string joined = "/" + join(out, "/");
  if ((path.size() > 1 && path.back() == '/') || path.ends_with("/.") ||
      path.ends_with("/..")) {
    if (joined.back() != '/') joined.push_back('/');
  }
  return joined;
}

}  // namespace detail

/// Resolves an href against the page it appeared on. Fragments are
/// dropped: the crawler treats a.html#x and a.html as the same page.
inline std::string resolve_url(std::string_view base, std::string_view href) {
  std::string ref = strip_fragment(trim(href));
  if (ref.empty()) return strip_fragment(std::string(base));
  if (try_parse_url(ref)) return ref;
  // scheme-relative or non-hierarchical refs (mailto:, javascript:)
  std::size_t colon = ref.find(':');
  std::size_t slash = ref.find('/');
  if (colon != std::string_view::npos &&
      (slash == std::string_view::npos || colon < slash))
    return ref;
  Url b = parse_url(base);
  if (starts_with(ref, "//")) return b.scheme + ":" + ref;
  if (starts_with(ref, "/"))
    return b.scheme + "://" + b.host + detail::remove_dot_segments(ref);
  // handle query-only refs against the base path
  if (starts_with(ref, "?")) return b.scheme + "://" + b.host + b.path + ref;
  return b.scheme + "://" + b.host +
         detail::remove_dot_segments(detail::merge_paths(b.path, ref));
}

}  // namespace algokg

#endif  // ALGOKG_URL_HPP
