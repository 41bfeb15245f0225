#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "aircoh/cli.hpp"

namespace clitest {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

inline Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = aircoh::cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

/// Fresh empty directory under the system temp dir.
inline fs::path scratch(const std::string& name) {
  static std::atomic<int> counter{0};
  const fs::path p = fs::temp_directory_path() / ("aircoh_" + name + "_" + std::to_string(::getpid()) + "_" +
                                                  std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parsed CSV: header names and numeric rows.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("no column " + name);
  }
};

inline Csv read_csv(const fs::path& p) {
  Csv c;
  std::istringstream in(slurp(p));
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    return out;
  };
  if (std::getline(in, line)) c.header = split(line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(std::stod(cell));
    c.rows.push_back(std::move(row));
  }
  return c;
}

/// Name -> contents of every regular file in `dir`.
inline std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir, const std::string& ext) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.emplace_back(e.path().filename().string(), slurp(e.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace clitest
