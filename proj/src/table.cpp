#include "pkadapt/table.hpp"

#include "pkadapt/values.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pkadapt {

TableParseError::TableParseError(const std::string& message, std::size_t line, std::size_t offset)
    : std::runtime_error(message + " (line " + std::to_string(line) + ", byte " +
                         std::to_string(offset) + ")"),
      line_(line),
      offset_(offset) {}

namespace {

struct CsvReader {
  const std::string& bytes;
  std::size_t pos = 0;
  std::size_t line = 1;

  bool eof() const { return pos >= bytes.size(); }

  // Reads one record; returns false at end of input.
  bool read_record(std::vector<std::string>& fields) {
    fields.clear();
    if (eof()) return false;
    std::string cur;
    bool quoted = false;
    bool any = false;
    while (!eof()) {
      const char c = bytes[pos];
      if (quoted) {
        if (c == '"') {
          if (pos + 1 < bytes.size() && bytes[pos + 1] == '"') {
            cur += '"';
            pos += 2;
          } else {
            quoted = false;
            ++pos;
            if (!eof() && bytes[pos] != ',' && bytes[pos] != '\r' && bytes[pos] != '\n') {
              throw TableParseError("unexpected character after closing quote", line, pos);
            }
          }
        } else {
          if (c == '\n') ++line;
          cur += c;
          ++pos;
        }
        continue;
      }
      if (c == '"') {
        if (!cur.empty()) {
          throw TableParseError("quote inside unquoted field", line, pos);
        }
        quoted = true;
        any = true;
        ++pos;
      } else if (c == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
        any = true;
        ++pos;
      } else if (c == '\r' || c == '\n') {
        if (c == '\r' && pos + 1 < bytes.size() && bytes[pos + 1] == '\n') ++pos;
        ++pos;
        ++line;
        fields.push_back(std::move(cur));
        return true;
      } else {
        cur += c;
        any = true;
        ++pos;
      }
    }
    if (quoted) {
      throw TableParseError("unterminated quoted field", line, pos);
    }
    if (any || !cur.empty()) {
      fields.push_back(std::move(cur));
      return true;
    }
    return false;
  }
};

void pad_grid(RawTable& table) {
  std::size_t width = 0;
  for (const auto& row : table.grid) width = std::max(width, row.size());
  for (std::size_t r = 0; r < table.grid.size(); ++r) {
    while (table.grid[r].size() < width) {
      table.padded_cells.emplace_back(r, table.grid[r].size());
      table.grid[r].emplace_back();
    }
  }
}

bool row_is_blank(const std::vector<std::string>& row) {
  return std::all_of(row.begin(), row.end(),
                     [](const std::string& c) { return c.find_first_not_of(" \t") == std::string::npos; });
}

}  // namespace

int detect_header_rows(const std::vector<std::vector<std::string>>& grid) {
  int n = 0;
  for (const auto& row : grid) {
    std::size_t non_numeric = 0;
    for (const auto& cell : row) {
      if (!is_numeric_cell(cell)) ++non_numeric;
    }
    if (row.empty() || 2 * non_numeric < row.size()) break;
    ++n;
  }
  // A table always carries at least one header row and at least one data row.
  const int max_headers = grid.size() > 1 ? static_cast<int>(grid.size()) - 1 : 1;
  return std::clamp(n, 1, max_headers);
}

RawTable parse_table_csv(const std::string& bytes, const std::string& table_id,
                         std::optional<int> header_rows_override) {
  RawTable table;
  table.table_id = table_id;
  CsvReader reader{bytes};
  std::vector<std::string> fields;
  while (reader.read_record(fields)) {
    if (row_is_blank(fields)) continue;
    table.grid.push_back(fields);
  }
  if (table.grid.empty()) {
    throw TableParseError("empty table", reader.line, reader.pos);
  }
  pad_grid(table);
  table.n_header_rows =
      header_rows_override ? std::max(1, *header_rows_override) : detect_header_rows(table.grid);
  return table;
}

// --- Minimal XML subset parser ------------------------------------------
//
// Supports the dialect of docs/formats.md: prolog, comments, elements with
// quoted attributes, character data with the five named entities and
// numeric references. No namespaces or CDATA.

namespace {

struct XmlNode {
  std::string name;
  std::map<std::string, std::string> attributes;
  std::vector<XmlNode> children;
  std::string text;  // concatenated character data
};

class XmlParser {
 public:
  explicit XmlParser(const std::string& bytes) : bytes_(bytes) {}

  XmlNode parse_document() {
    skip_misc();
    if (eof()) fail("missing root element");
    XmlNode root = parse_element();
    skip_misc();
    if (!eof()) fail("trailing content after root element");
    return root;
  }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;

  bool eof() const { return pos_ >= bytes_.size(); }
  char peek() const { return bytes_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw TableParseError("xml: " + message, line_, pos_);
  }

  void advance() {
    if (bytes_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool starts_with(const char* token) const {
    return bytes_.compare(pos_, std::char_traits<char>::length(token), token) == 0;
  }

  void expect(const char* token) {
    if (!starts_with(token)) fail(std::string("expected '") + token + "'");
    for (std::size_t i = 0; i < std::char_traits<char>::length(token); ++i) advance();
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        while (!eof() && !starts_with("?>")) advance();
        expect("?>");
      } else if (starts_with("<!--")) {
        while (!eof() && !starts_with("-->")) advance();
        expect("-->");
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    const std::size_t begin = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' ||
                      peek() == '_' || peek() == ':')) {
      advance();
    }
    if (pos_ == begin) fail("expected a name");
    return bytes_.substr(begin, pos_ - begin);
  }

  std::string decode_entity() {
    expect("&");
    const std::size_t semi = bytes_.find(';', pos_);
    if (semi == std::string::npos || semi - pos_ > 8) fail("unterminated entity reference");
    const std::string body = bytes_.substr(pos_, semi - pos_);
    while (pos_ <= semi) advance();
    if (body == "amp") return "&";
    if (body == "lt") return "<";
    if (body == "gt") return ">";
    if (body == "quot") return "\"";
    if (body == "apos") return "'";
    if (!body.empty() && body[0] == '#') {
      const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
      const long code = std::strtol(body.c_str() + (hex ? 2 : 1), nullptr, hex ? 16 : 10);
      if (code <= 0 || code > 0x10FFFF) fail("bad character reference");
      // UTF-8 encode.
      std::string out;
      const auto c = static_cast<unsigned long>(code);
      if (c < 0x80) {
        out += static_cast<char>(c);
      } else if (c < 0x800) {
        out += static_cast<char>(0xC0 | (c >> 6));
        out += static_cast<char>(0x80 | (c & 0x3F));
      } else if (c < 0x10000) {
        out += static_cast<char>(0xE0 | (c >> 12));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
      } else {
        out += static_cast<char>(0xF0 | (c >> 18));
        out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
      }
      return out;
    }
    fail("unknown entity '&" + body + ";'");
  }

  std::string parse_attribute_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    const char quote = peek();
    advance();
    std::string value;
    while (!eof() && peek() != quote) {
      if (peek() == '&') {
        value += decode_entity();
      } else {
        value += peek();
        advance();
      }
    }
    if (eof()) fail("unterminated attribute value");
    advance();
    return value;
  }

  XmlNode parse_element() {
    expect("<");
    XmlNode node;
    node.name = parse_name();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (starts_with("/>")) {
        expect("/>");
        return node;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      const std::string attr = parse_name();
      skip_ws();
      expect("=");
      skip_ws();
      node.attributes[attr] = parse_attribute_value();
    }
    // Content.
    for (;;) {
      if (eof()) fail("unterminated element <" + node.name + ">");
      if (starts_with("</")) {
        expect("</");
        const std::string closing = parse_name();
        if (closing != node.name) {
          fail("mismatched closing tag </" + closing + "> for <" + node.name + ">");
        }
        skip_ws();
        expect(">");
        return node;
      }
      if (starts_with("<!--")) {
        while (!eof() && !starts_with("-->")) advance();
        expect("-->");
      } else if (peek() == '<') {
        node.children.push_back(parse_element());
      } else if (peek() == '&') {
        node.text += decode_entity();
      } else {
        node.text += peek();
        advance();
      }
    }
  }
};

const XmlNode* find_child(const XmlNode& node, const std::string& name) {
  for (const auto& c : node.children) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

RawTable table_from_node(const XmlNode& node, const std::string& fallback_id, int index) {
  RawTable table;
  const auto id_it = node.attributes.find("id");
  table.table_id =
      id_it != node.attributes.end() ? id_it->second : fallback_id + ":table" + std::to_string(index);
  for (const auto& child : node.children) {
    if (child.name == "caption") {
      table.caption = trim(child.text);
    } else if (child.name == "footnote") {
      table.footnotes.push_back(trim(child.text));
    } else if (child.name == "row") {
      std::vector<std::string> row;
      for (const auto& cell : child.children) {
        if (cell.name == "cell") row.push_back(trim(cell.text));
      }
      table.grid.push_back(std::move(row));
    }
  }
  if (table.grid.empty()) {
    throw TableParseError("empty table '" + table.table_id + "'", 0, 0);
  }
  pad_grid(table);
  const auto hr_it = node.attributes.find("header-rows");
  if (hr_it != node.attributes.end()) {
    table.n_header_rows = std::max(1, std::atoi(hr_it->second.c_str()));
  } else {
    table.n_header_rows = detect_header_rows(table.grid);
  }
  return table;
}

}  // namespace

XmlArticle parse_xml_article(const std::string& bytes, const std::string& source_id) {
  XmlParser parser(bytes);
  const XmlNode root = parser.parse_document();
  if (root.name != "article") {
    throw TableParseError("xml: expected <article> root, got <" + root.name + ">", 0, 0);
  }
  XmlArticle article;
  if (const XmlNode* t = find_child(root, "title")) article.title = trim(t->text);
  if (const XmlNode* a = find_child(root, "abstract")) article.abstract_text = trim(a->text);
  int index = 0;
  for (const auto& child : root.children) {
    if (child.name != "table") continue;
    RawTable table = table_from_node(child, source_id, index++);
    table.article_title = article.title;
    table.article_abstract = article.abstract_text;
    article.tables.push_back(std::move(table));
  }
  if (article.tables.empty()) {
    throw TableParseError("xml: article has no tables", 0, 0);
  }
  return article;
}

RawTable parse_table(const std::string& bytes, TableFormat format, const std::string& table_id,
                     std::optional<int> header_rows_override) {
  if (format == TableFormat::csv) {
    return parse_table_csv(bytes, table_id, header_rows_override);
  }
  XmlArticle article = parse_xml_article(bytes, table_id);
  RawTable table = std::move(article.tables.front());
  if (header_rows_override) table.n_header_rows = std::max(1, *header_rows_override);
  return table;
}

}  // namespace pkadapt
