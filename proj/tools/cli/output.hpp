#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "paa/distribution.hpp"

namespace paa::cli {

using ojson = nlohmann::ordered_json;

enum class Format { tsv, json };

/// Result of a subcommand: metadata plus rows. TSV prints `# key=value`
/// comments and tab-separated rows; JSON prints
/// {"command", "metadata", "columns", "rows"}.
struct Table {
  std::string command;
  ojson metadata = ojson::object();
  std::vector<std::string> columns{"value", "probability"};
  std::vector<std::vector<ojson>> rows;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string cell_text(const ojson& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_float()) return format_double(c.get<double>());
  if (c.is_array()) {
    std::string out;
    for (const auto& x : c) out += (out.empty() ? "" : ",") + cell_text(x);
    return out;
  }
  return c.dump();
}

inline void write_table(std::ostream& out, const Table& t, Format format) {
  if (format == Format::json) {
    ojson rows = ojson::array();
    for (const auto& r : t.rows) rows.push_back(r);
    ojson doc{{"command", t.command}, {"metadata", t.metadata}, {"columns", t.columns}, {"rows", rows}};
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# command=" << t.command << '\n';
  for (const auto& [k, v] : t.metadata.items()) out << "# " << k << '=' << cell_text(v) << '\n';
  out << "# columns=";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << cell_text(r[i]);
    out << '\n';
  }
}

/// One row per support point plus the tail in the metadata.
template <class K>
Table distribution_table(std::string command, const Distribution<K>& d) {
  Table t;
  t.command = std::move(command);
  for (const auto& [k, p] : d) t.rows.push_back({ojson(k), ojson(p)});
  t.metadata["tail"] = d.tail();
  return t;
}

}  // namespace paa::cli
