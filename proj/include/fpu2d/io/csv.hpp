#pragma once

// RFC-4180 style CSV: comma separated, CRLF-free (LF line ends), fields quoted
// when they contain a comma, quote or newline. Numbers use 17 significant
// digits and '.' as decimal separator. Optional metadata precedes the header as
// lines "# key = value"; readers skip them unless asked for the metadata.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/io/config.hpp"

namespace fpu2d::io {

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ConfigError("CSV has no column '" + name + "'");
  }
  std::vector<double> numbers(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(parse_number(r.at(c), "CSV column " + name));
    return out;
  }
  std::string meta(const std::string& key) const {
    for (const auto& [k, v] : metadata)
      if (k == key) return v;
    throw ConfigError("CSV metadata lacks '" + key + "'");
  }
  double meta_number(const std::string& key) const { return parse_number(meta(key), key); }

  void add_row(const std::vector<double>& r) {
    std::vector<std::string> s;
    s.reserve(r.size());
    for (double v : r) s.push_back(format_number(v));
    rows.push_back(std::move(s));
  }
  void add_meta(const std::string& k, double v) { metadata.emplace_back(k, format_number(v)); }
  void add_meta(const std::string& k, const std::string& v) { metadata.emplace_back(k, v); }
};

inline std::string csv_quote(const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
  std::string out = "\"";
  for (char ch : f) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& o, const CsvTable& t) {
  for (const auto& [k, v] : t.metadata) o << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) o << (i ? "," : "") << csv_quote(t.header[i]);
  o << "\n";
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw ConsistencyError("CSV row width differs from header");
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << csv_quote(r[i]);
    o << "\n";
  }
}

inline void write_csv(const std::string& path, const CsvTable& t) {
  std::ofstream o(path);
  if (!o) throw ConfigError("cannot write '" + path + "'");
  write_csv(o, t);
}

/// Splits one record; handles quoted fields spanning lines.
inline bool read_record(std::istream& in, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false, any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(field);
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (!any) return false;
  if (quoted) throw ConfigError("unterminated quoted CSV field");
  out.push_back(field);
  return true;
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  while (in.peek() == '#') {
    std::string line;
    std::getline(in, line);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    t.metadata.emplace_back(detail::trim(line.substr(1, eq - 1)), detail::trim(line.substr(eq + 1)));
  }
  std::vector<std::string> rec;
  if (!read_record(in, t.header)) return t;
  while (read_record(in, rec)) {
    if (rec.size() == 1 && rec[0].empty()) continue;
    if (rec.size() != t.header.size()) throw ConfigError("CSV row width differs from header");
    t.rows.push_back(rec);
  }
  return t;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace fpu2d::io
