/*
 * Copyright (C) 2026 The a11yaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "a11y/xml.hpp"

#include <cctype>

namespace a11y::xml {
namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

class Parser {
 public:
  explicit Parser(std::string_view source) : src_(source) {}

  Document parse_document() {
    skip_misc();
    if (eof()) fail("expected root element");
    Document doc;
    doc.root = parse_element();
    skip_misc();
    if (!eof()) fail("content after root element");
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    auto [line, col] = line_column(src_, pos_);
    throw ParseError(message, line, col);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  bool starts_with(std::string_view token) const {
    return src_.compare(pos_, token.size(), token) == 0;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void skip_until(std::string_view token, const std::string& what) {
    std::size_t at = src_.find(token, pos_);
    if (at == std::string_view::npos) fail("unterminated " + what);
    pos_ = at + token.size();
  }

  // Prolog, comments, PIs, DOCTYPE and whitespace between markup.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<!DOCTYPE")) {
        skip_until(">", "DOCTYPE");
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    if (eof() || !is_name_start(peek())) fail("expected name");
    std::size_t begin = pos_;
    while (!eof() && is_name_char(peek())) ++pos_;
    return std::string(src_.substr(begin, pos_ - begin));
  }

  // Decodes one entity starting at '&'.
  void append_entity(std::string& out) {
    std::size_t end = src_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12)
      fail("unterminated entity");
    std::string_view body = src_.substr(pos_ + 1, end - pos_ - 1);
    if (body == "amp") {
      out += '&';
    } else if (body == "lt") {
      out += '<';
    } else if (body == "gt") {
      out += '>';
    } else if (body == "quot") {
      out += '"';
    } else if (body == "apos") {
      out += '\'';
    } else if (!body.empty() && body[0] == '#') {
      int base = 10;
      std::string_view digits = body.substr(1);
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits = digits.substr(1);
      }
      if (digits.empty()) fail("empty character reference");
      unsigned long code = 0;
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9')
          d = c - '0';
        else if (base == 16 && c >= 'a' && c <= 'f')
          d = c - 'a' + 10;
        else if (base == 16 && c >= 'A' && c <= 'F')
          d = c - 'A' + 10;
        else
          fail("bad character reference");
        code = code * base + static_cast<unsigned long>(d);
        if (code > 0x10FFFF) fail("character reference out of range");
      }
      append_utf8(out, code);
    } else {
      fail("unknown entity '" + std::string(body) + "'");
    }
    pos_ = end + 1;
  }

  static void append_utf8(std::string& out, unsigned long code) {
    if (code < 0x80) {
      out += static_cast<char>(code);
    } else if (code < 0x800) {
      out += static_cast<char>(0xC0 | (code >> 6));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else if (code < 0x10000) {
      out += static_cast<char>(0xE0 | (code >> 12));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (code >> 18));
      out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    }
  }

  Attribute parse_attribute() {
    Attribute attr;
    attr.name = parse_name();
    skip_ws();
    if (eof() || peek() != '=') fail("expected '=' after attribute name");
    ++pos_;
    skip_ws();
    if (eof() || (peek() != '"' && peek() != '\''))
      fail("expected quoted attribute value");
    char quote = peek();
    ++pos_;
    attr.value_begin = pos_;
    while (!eof() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&') {
        append_entity(attr.value);
      } else {
        attr.value += peek();
        ++pos_;
      }
    }
    if (eof()) fail("unterminated attribute value");
    attr.value_end = pos_;
    ++pos_;  // closing quote
    return attr;
  }

  Element parse_element() {
    Element elem;
    elem.start_offset = pos_;
    ++pos_;  // '<'
    elem.name = parse_name();
    elem.insert_offset = pos_;
    for (;;) {
      std::size_t before_ws = pos_;
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '/') {
        ++pos_;
        if (eof() || peek() != '>') fail("expected '>' after '/'");
        ++pos_;
        elem.self_closing = true;
        elem.insert_offset = before_ws;
        return elem;
      }
      if (peek() == '>') {
        ++pos_;
        elem.insert_offset = before_ws;
        break;
      }
      if (before_ws == pos_) fail("expected whitespace before attribute");
      Attribute attr = parse_attribute();
      if (elem.find_attribute(attr.name) != nullptr)
        fail("duplicate attribute '" + attr.name + "' on <" + elem.name +
             ">");
      elem.attributes.push_back(std::move(attr));
      elem.insert_offset = pos_;
    }
    // Content until the matching end tag.
    for (;;) {
      if (eof()) fail("unterminated element '" + elem.name + "'");
      if (starts_with("</")) {
        pos_ += 2;
        std::string closing = parse_name();
        if (closing != elem.name)
          fail("mismatched end tag '" + closing + "', expected '" + elem.name +
               "'");
        skip_ws();
        if (eof() || peek() != '>') fail("expected '>' in end tag");
        ++pos_;
        return elem;
      }
      if (starts_with("<![CDATA[")) {
        pos_ += 9;
        std::size_t end = src_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        elem.text.append(src_.substr(pos_, end - pos_));
        pos_ = end + 3;
      } else if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (peek() == '<') {
        elem.children.push_back(parse_element());
      } else if (peek() == '&') {
        append_entity(elem.text);
      } else {
        elem.text += peek();
        ++pos_;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

const Attribute* Element::find_attribute(std::string_view attr_name) const {
  for (const Attribute& attr : attributes)
    if (attr.name == attr_name) return &attr;
  return nullptr;
}

std::string Element::attribute_or(std::string_view attr_name,
                                  std::string_view fallback) const {
  const Attribute* attr = find_attribute(attr_name);
  return attr ? attr->value : std::string(fallback);
}

bool Element::has_attribute(std::string_view attr_name) const {
  return find_attribute(attr_name) != nullptr;
}

Document parse(std::string_view source) {
  return Parser(source).parse_document();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view source,
                                                std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string escape_attribute(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_text(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace a11y::xml
