#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hignn/errors.hpp"

namespace hignn::train {

struct Row {
  std::string smiles;
  std::vector<double> labels;  // raw values; meaningless where masked
  std::vector<double> mask;    // 1.0 present, 0.0 missing
  int source_index = -1;       // 0-based data row in the source CSV
};

struct Dataset {
  std::vector<Row> rows;  // parseable rows only
  std::vector<std::string> task_names;
  int n_tasks = 0;
  int dropped = 0;        // unparseable rows, logged by the loader
};

// CSV with a header; "smiles" column required, remaining columns are tasks,
// empty cells are missing labels; unparseable SMILES are dropped (counted)
Dataset load_csv(const std::string& path);

// flat key=value config text; '#' comments; unknown keys are an error
// (validated against the caller's key set)
std::map<std::string, std::string> load_config_file(
    const std::string& path, const std::vector<std::string>& known_keys);

enum class SplitMethod { Random, Scaffold };

struct Split {
  std::vector<int> train, val, test;  // source CSV data-row indices
  SplitMethod method = SplitMethod::Random;
  uint64_t seed = 0;
};

// 8:1:1 by default; Random = seeded shuffle then cut, Scaffold = group by
// scaffold key, largest groups into train first (no key spans partitions)
Split make_split(const Dataset& data, SplitMethod method, uint64_t seed,
                 double train_frac = 0.8, double val_frac = 0.1);

void save_split(const std::string& path, const Split& split);
Split load_split(const std::string& path);

// map split indices (source positions) to dataset row positions; indices
// that refer to dropped rows are skipped
std::vector<int> resolve_rows(const Dataset& data,
                              const std::vector<int>& source_indices);

}  // namespace hignn::train
