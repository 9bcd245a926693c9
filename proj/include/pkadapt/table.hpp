#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pkadapt {

// A rectangular grid of cell strings extracted from one published table,
// with the text context the extraction pipeline keeps alongside it.
struct RawTable {
  std::string table_id;
  std::vector<std::vector<std::string>> grid;  // rectangular; ragged rows are padded
  int n_header_rows = 1;
  std::string caption;
  std::vector<std::string> footnotes;
  std::string article_title;
  std::string article_abstract;
  std::vector<std::pair<std::size_t, std::size_t>> padded_cells;  // (row, col) added as padding

  std::size_t rows() const { return grid.size(); }
  std::size_t cols() const { return grid.empty() ? 0 : grid.front().size(); }
};

enum class TableFormat { csv, xml_table };

class TableParseError : public std::runtime_error {
 public:
  TableParseError(const std::string& message, std::size_t line, std::size_t offset);
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

// RFC-4180 CSV into a grid; ragged rows are padded with empty cells and the
// padding recorded. Header rows detected unless overridden: leading rows
// count as headers while at least half of their cells are non-numeric.
RawTable parse_table_csv(const std::string& bytes, const std::string& table_id,
                         std::optional<int> header_rows_override = std::nullopt);

// The XML article dialect (docs/formats.md): <article> with optional
// <title>/<abstract> and one or more <table> elements built from <row> and
// <cell>, plus <caption> and <footnote>.
struct XmlArticle {
  std::string title;
  std::string abstract_text;
  std::vector<RawTable> tables;
};

XmlArticle parse_xml_article(const std::string& bytes, const std::string& source_id);

// Single-table entry point; for XML input this is the first table.
RawTable parse_table(const std::string& bytes, TableFormat format, const std::string& table_id,
                     std::optional<int> header_rows_override = std::nullopt);

// Header heuristic used by parse_table, exposed for tests: a cell is
// numeric when it parses as a value (plain, plus-minus, bound or range).
int detect_header_rows(const std::vector<std::vector<std::string>>& grid);

}  // namespace pkadapt
