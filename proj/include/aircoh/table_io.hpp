#pragma once

// CSV serialization of sampled tables and the plain `key = value` config format.

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "aircoh/gridlab.hpp"

namespace aircoh::io {

/// 17 significant digits, std::to_chars general format (locale-independent).
std::string format_double(double v);

struct Column {
  std::string name;
  std::vector<double> values;
};

/// Header row plus one row per index; ',' separated, LF line endings.
void write_csv(std::ostream& os, const std::vector<Column>& cols);
std::string to_csv(const std::vector<Column>& cols);

/// Axis columns followed by the values: `value` for real tables,
/// `value_re`, `value_im` for complex ones. 2D tables list the first axis slowest.
std::vector<Column> table_columns(const grid::FieldTable& t, const std::vector<std::string>& axis_names,
                                  const std::string& value_name);

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
/// Throws DomainError on malformed lines or duplicate keys.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace aircoh::io
