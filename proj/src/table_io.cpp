#include "aircoh/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "aircoh/error.hpp"

namespace aircoh::io {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error("format_double: conversion failed");
  return {buf, res.ptr};
}

void write_csv(std::ostream& os, const std::vector<Column>& cols) {
  if (cols.empty()) throw DomainError("write_csv: no columns");
  const std::size_t n = cols.front().values.size();
  for (const auto& c : cols) {
    if (c.values.size() != n) throw DomainError("write_csv: column '" + c.name + "' has a different length");
  }
  std::string line;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (j) line += ',';
    line += cols[j].name;
  }
  line += '\n';
  os << line;
  for (std::size_t i = 0; i < n; ++i) {
    line.clear();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j) line += ',';
      line += format_double(cols[j].values[i]);
    }
    line += '\n';
    os << line;
  }
}

std::string to_csv(const std::vector<Column>& cols) {
  std::ostringstream os;
  write_csv(os, cols);
  return os.str();
}

std::vector<Column> table_columns(const grid::FieldTable& t, const std::vector<std::string>& axis_names,
                                  const std::string& value_name) {
  t.validate();
  if (axis_names.size() != t.rank()) throw DomainError("table_columns: one name per axis required");
  std::vector<Column> cols;
  const std::size_t n = t.size();
  if (t.rank() == 1) {
    cols.push_back({axis_names[0], t.axes[0].values()});
  } else {
    const auto& gx = t.axes[0];
    const auto& gxp = t.axes[1];
    Column a{axis_names[0], std::vector<double>(n)}, b{axis_names[1], std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
      a.values[k] = gx.at(k / gxp.count());
      b.values[k] = gxp.at(k % gxp.count());
    }
    cols.push_back(std::move(a));
    cols.push_back(std::move(b));
  }
  if (t.complex_valued) {
    Column re{value_name + "_re", std::vector<double>(n)}, im{value_name + "_im", std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
      re.values[k] = t.values[k].real();
      im.values[k] = t.values[k].imag();
    }
    cols.push_back(std::move(re));
    cols.push_back(std::move(im));
  } else {
    Column v{value_name, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) v.values[k] = t.values[k].real();
    cols.push_back(std::move(v));
  }
  return cols;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw DomainError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!out.emplace(key, value).second) {
      throw DomainError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace aircoh::io
