#ifndef ALGOKG_HTML_HPP
#define ALGOKG_HTML_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algokg/text.hpp"

namespace algokg {

/// Hyperlink as it appears in the document: raw href attribute plus the
/// entity-decoded, whitespace-normalized inner text.
struct Anchor {
  std::string href;
  std::string text;
};

enum class BlockKind { Heading, Item, Paragraph };

/// A flat, display-oriented chunk of the page: one heading, list item, or
/// paragraph. Field extraction works on blocks instead of a DOM.
struct Block {
  BlockKind kind = BlockKind::Paragraph;
  int level = 0;  // heading level, 1..6
  std::string text;
  std::vector<Anchor> anchors;
};

inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (name == "amp") {
      out.push_back('&');
    } else if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else if (name == "nbsp") {
      out.push_back(' ');
    } else if (!name.empty() && name[0] == '#') {
      uint32_t cp = 0;
      bool ok = name.size() > 1;
      if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
        for (char c : name.substr(2)) {
          if (!std::isxdigit(static_cast<unsigned char>(c))) {
            ok = false;
            break;
          }
          cp = cp * 16 + static_cast<uint32_t>(
                             std::isdigit(static_cast<unsigned char>(c))
                                 ? c - '0'
                                 : std::tolower(c) - 'a' + 10);
        }
      } else {
        for (char c : name.substr(1)) {
          if (!std::isdigit(static_cast<unsigned char>(c))) {
            ok = false;
            break;
          }
          cp = cp * 10 + static_cast<uint32_t>(c - '0');
        }
      }
      if (!ok || cp == 0 || cp > 0x10FFFF) {
        out.push_back(s[i++]);
        continue;
      }
      // encode the codepoint as UTF-8
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
    } else {
      out.push_back(s[i]);
      ++i;
      continue;
    }
    i = semi + 1;
  }
  return out;
}

namespace html_detail {

struct TagEvent {
  std::string name;                          // lowercase
  std::map<std::string, std::string> attrs;  // lowercase keys, decoded values
  bool closing = false;
};

/// Tolerant scanner: walks the byte stream, reporting tags and text runs.
/// Malformed fragments (stray '<', unterminated tags) are passed through
/// as text or skipped; nothing is fatal. Returns the number of tags seen.
template <typename OnTag, typename OnText>
std::size_t scan_html(std::string_view html, OnTag&& on_tag,
                      OnText&& on_text) {
  std::size_t tag_count = 0;
  std::size_t i = 0;
  std::string text;
  const std::string lowered = to_lower(html);
  auto flush_text = [&] {
    if (!text.empty()) {
      on_text(text);
      text.clear();
    }
  };
  bool skipping = false;  // inside <script> or <style>
  std::string skip_until;
  while (i < html.size()) {
    if (skipping) {
      std::size_t close = lowered.find(skip_until, i);
      i = close == std::string::npos ? html.size() : close;
      skipping = false;
      continue;
    }
    char c = html[i];
    if (c != '<') {
      text.push_back(c);
      ++i;
      continue;
    }
    if (html.substr(i, 4) == "<!--") {
      std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (html.substr(i, 2) == "<!" || html.substr(i, 2) == "<?") {
      std::size_t end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }
    // a '<' not opening a tag stays text; nothing after it is consumed
    char after = i + 1 < html.size() ? html[i + 1] : '\0';
    bool looks_like_tag =
        std::isalpha(static_cast<unsigned char>(after)) ||
        (after == '/' && i + 2 < html.size() &&
         std::isalpha(static_cast<unsigned char>(html[i + 2])));
    if (!looks_like_tag) {
      text.push_back('<');
      ++i;
      continue;
    }
    std::size_t end = html.find('>', i);
    if (end == std::string_view::npos) {
      // unterminated tag at end of document: treat the rest as text
      text.append(html.substr(i));
      break;
    }
    std::string_view inside = html.substr(i + 1, end - i - 1);
    i = end + 1;
    TagEvent ev;
    std::size_t p = 0;
    if (!inside.empty() && inside[0] == '/') {
      ev.closing = true;
      p = 1;
    }
    std::size_t name_start = p;
    while (p < inside.size() && !is_space(inside[p]) && inside[p] != '/')
      ++p;
    ev.name = to_lower(inside.substr(name_start, p - name_start));
    while (p < inside.size() && !ev.closing) {
      while (p < inside.size() && (is_space(inside[p]) || inside[p] == '/'))
        ++p;
      std::size_t key_start = p;
      while (p < inside.size() && !is_space(inside[p]) && inside[p] != '=' &&
             inside[p] != '/')
        ++p;
      if (p == key_start) break;
      std::string key = to_lower(inside.substr(key_start, p - key_start));
      std::string value;
      while (p < inside.size() && is_space(inside[p])) ++p;
      if (p < inside.size() && inside[p] == '=') {
        ++p;
        while (p < inside.size() && is_space(inside[p])) ++p;
        if (p < inside.size() && (inside[p] == '"' || inside[p] == '\'')) {
          char quote = inside[p++];
          std::size_t vstart = p;
          while (p < inside.size() && inside[p] != quote) ++p;
          value = std::string(inside.substr(vstart, p - vstart));
          if (p < inside.size()) ++p;
        } else {
          std::size_t vstart = p;
          while (p < inside.size() && !is_space(inside[p])) ++p;
          value = std::string(inside.substr(vstart, p - vstart));
        }
      }
      ev.attrs[key] = decode_entities(value);
    }
    flush_text();
    ++tag_count;
    if (!ev.closing && (ev.name == "script" || ev.name == "style")) {
      skipping = true;
      skip_until = "</" + ev.name;
    }
    on_tag(ev);
  }
  flush_text();
  return tag_count;
}

inline bool is_block_boundary(const std::string& name) {
  return name == "p" || name == "div" || name == "li" || name == "tr" ||
         name == "td" || name == "th" || name == "ul" || name == "ol" ||
         name == "table" || name == "br" || name == "hr" ||
         name == "body" || name == "html" || name == "head" ||
         name == "title" || name == "dt" || name == "dd";
}

}  // namespace html_detail

struct PageScan {
  std::vector<Block> blocks;
  std::vector<Anchor> anchors;        // document order, across all blocks
  std::vector<std::string> images;    // img src attributes, document order
  std::size_t tag_count = 0;
};

/// One pass over the document, grouping content into flat blocks.
inline PageScan scan_page(std::string_view html) {
  PageScan out;
  Block current;
  bool current_open = false;
  Anchor* open_anchor = nullptr;
  std::string anchor_text;

  auto close_block = [&] {
    if (!current_open) return;
    current.text = normalize_ws(decode_entities(current.text));
    if (!current.text.empty() || !current.anchors.empty())
      out.blocks.push_back(current);
    current = Block{};
    current_open = false;
  };
  auto ensure_block = [&](BlockKind kind, int level) {
    close_block();
    current.kind = kind;
    current.level = level;
    current_open = true;
  };

  out.tag_count = html_detail::scan_html(
      html,
      [&](const html_detail::TagEvent& ev) {
        const std::string& n = ev.name;
        if (n == "a") {
          if (!ev.closing) {
            std::string href;
            auto it = ev.attrs.find("href");
            if (it != ev.attrs.end()) href = it->second;
            if (!current_open) ensure_block(BlockKind::Paragraph, 0);
            current.anchors.push_back(Anchor{href, ""});
            open_anchor = &current.anchors.back();
            anchor_text.clear();
          } else {
            if (open_anchor != nullptr)
              open_anchor->text = normalize_ws(decode_entities(anchor_text));
            open_anchor = nullptr;
          }
          return;
        }
        if (n == "img") {
          auto it = ev.attrs.find("src");
          if (it != ev.attrs.end() && !it->second.empty())
            out.images.push_back(it->second);
          return;
        }
        if (n.size() == 2 && n[0] == 'h' && n[1] >= '1' && n[1] <= '6') {
          open_anchor = nullptr;
          if (!ev.closing)
            ensure_block(BlockKind::Heading, n[1] - '0');
          else
            close_block();
          return;
        }
        if (n == "li") {
          open_anchor = nullptr;
          if (!ev.closing)
            ensure_block(BlockKind::Item, 0);
          else
            close_block();
          return;
        }
        if (html_detail::is_block_boundary(n)) {
          open_anchor = nullptr;
          if (!ev.closing && (n == "p" || n == "dt" || n == "dd"))
            ensure_block(BlockKind::Paragraph, 0);
          else
            close_block();
        }
      },
      [&](const std::string& text) {
        if (!current_open && !trim(text).empty())
          ensure_block(BlockKind::Paragraph, 0);
        if (current_open) current.text.append(text);
        if (open_anchor != nullptr) anchor_text.append(text);
      });
  close_block();

  for (const Block& b : out.blocks)
    for (const Anchor& a : b.anchors) out.anchors.push_back(a);
  return out;
}

inline std::optional<std::string> first_heading(const PageScan& scan,
                                                int level) {
  for (const Block& b : scan.blocks)
    if (b.kind == BlockKind::Heading && b.level == level && !b.text.empty())
      return b.text;
  return {};
}

}  // namespace algokg

#endif  // ALGOKG_HTML_HPP
