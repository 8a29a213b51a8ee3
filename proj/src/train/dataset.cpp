#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hignn/data.hpp"
#include "hignn/mol.hpp"

namespace hignn::train {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t b = s.find_first_not_of(' ');
    if (b != std::string::npos && b > 0) s = s.substr(b);
  }
  return out;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) throw DataError("cannot open dataset " + path);
  std::string line;
  if (!std::getline(f, line)) throw DataError("empty dataset " + path);
  auto header = split_csv_line(line);
  int smiles_col = -1;
  Dataset data;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == "smiles")
      smiles_col = static_cast<int>(k);
    else
      data.task_names.push_back(header[k]);
  }
  if (smiles_col < 0) throw DataError("dataset has no 'smiles' column");
  data.n_tasks = static_cast<int>(data.task_names.size());
  if (data.n_tasks == 0) throw DataError("dataset has no task columns");

  int source = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw DataError(path + ": row " + std::to_string(source) + " has " +
                      std::to_string(cells.size()) + " cells");
    Row row;
    row.source_index = source++;
    row.smiles = cells[smiles_col];
    try {
      mol::parse_smiles(row.smiles);
    } catch (const Error&) {
      ++data.dropped;
      continue;
    }
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (static_cast<int>(k) == smiles_col) continue;
      if (cells[k].empty()) {
        row.labels.push_back(0.0);
        row.mask.push_back(0.0);
      } else {
        try {
          row.labels.push_back(std::stod(cells[k]));
        } catch (...) {
          throw DataError(path + ": row " + std::to_string(row.source_index) +
                          " bad number '" + cells[k] + "'");
        }
        row.mask.push_back(1.0);
      }
    }
    data.rows.push_back(std::move(row));
  }
  if (data.dropped > 0)
    std::cerr << "dataset " << path << ": dropped " << data.dropped
              << " unparseable rows\n";
  if (data.rows.empty()) throw DataError("no usable rows in " + path);
  return data;
}

std::map<std::string, std::string> load_config_file(
    const std::string& path, const std::vector<std::string>& known_keys) {
  std::ifstream f(path);
  if (!f.good()) throw ConfigError("cannot open config " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(0, 1);
    if (std::find(known_keys.begin(), known_keys.end(), key) ==
        known_keys.end())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    out[key] = value;
  }
  return out;
}

}  // namespace hignn::train
