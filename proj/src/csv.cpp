#include "relcheck/csv.hpp"

#include <iterator>

#include "relcheck/error.hpp"

namespace relcheck::csv {

std::vector<Row> read(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  if (data.starts_with("\xEF\xBB\xBF")) pos = 3;

  std::vector<Row> rows;
  std::size_t line = 1;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool row_started = false;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    if (row_started) {
      end_field();
      rows.push_back(std::move(row));
    }
    row = Row{};
    row_started = false;
  };

  for (; pos < data.size(); ++pos) {
    const char c = data[pos];
    if (!row_started && !in_quotes && c != '\n' && c != '\r') {
      row_started = true;
      row.line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < data.size() && data[pos + 1] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          throw Error(ErrorCode::ParseError, "stray quote at line " + std::to_string(line));
        }
        in_quotes = true;
        field_started = true;
        quote_line = line;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::ParseError, "unterminated quote starting at line " + std::to_string(quote_line));
  }
  end_row();
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace relcheck::csv
