#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>

#include "hignn/data.hpp"
#include "hignn/mol.hpp"
#include "hignn/rng.hpp"

namespace hignn::train {

using nlohmann::json;

Split make_split(const Dataset& data, SplitMethod method, uint64_t seed,
                 double train_frac, double val_frac) {
  int n = static_cast<int>(data.rows.size());
  if (n < 3) throw DataError("dataset too small to split");
  Split split;
  split.method = method;
  split.seed = seed;
  int n_train = static_cast<int>(train_frac * n);
  int n_val = static_cast<int>(val_frac * n);

  if (method == SplitMethod::Random) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    CounterRng rng(seed, stable_hash("random-split"));
    for (int i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.next_below(i + 1)]);
    for (int i = 0; i < n; ++i) {
      int src = data.rows[order[i]].source_index;
      if (i < n_train)
        split.train.push_back(src);
      else if (i < n_train + n_val)
        split.val.push_back(src);
      else
        split.test.push_back(src);
    }
  } else {
    // group by scaffold key, biggest groups into train first
    std::map<std::string, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
      mol::Molecule m = mol::parse_smiles(data.rows[i].smiles);
      groups[mol::scaffold_key(m)].push_back(i);
    }
    std::vector<std::pair<std::string, std::vector<int>>> ordered(
        groups.begin(), groups.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) {
                if (a.second.size() != b.second.size())
                  return a.second.size() > b.second.size();
                return a.first < b.first;
              });
    int in_train = 0, in_val = 0;
    for (const auto& [key, members] : ordered) {
      std::vector<int>* dest;
      if (in_train < n_train) {
        dest = &split.train;
        in_train += static_cast<int>(members.size());
      } else if (in_val < n_val) {
        dest = &split.val;
        in_val += static_cast<int>(members.size());
      } else {
        dest = &split.test;
      }
      for (int i : members) dest->push_back(data.rows[i].source_index);
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.val.begin(), split.val.end());
    std::sort(split.test.begin(), split.test.end());

    // executable leakage assertion
    std::map<int, const std::string*> key_of;
    for (const auto& [key, members] : ordered)
      for (int i : members) key_of[data.rows[i].source_index] = &key;
    std::set<std::string> tr, va;
    for (int s : split.train) tr.insert(*key_of[s]);
    for (int s : split.val) {
      if (tr.count(*key_of[s]))
        throw DataError("scaffold leakage between train and val");
      va.insert(*key_of[s]);
    }
    for (int s : split.test)
      if (tr.count(*key_of[s]) || va.count(*key_of[s]))
        throw DataError("scaffold leakage into test");
  }
  return split;
}

void save_split(const std::string& path, const Split& split) {
  json j;
  j["method"] = split.method == SplitMethod::Random ? "random" : "scaffold";
  j["seed"] = split.seed;
  j["train"] = split.train;
  j["val"] = split.val;
  j["test"] = split.test;
  std::ofstream f(path);
  if (!f.good()) throw DataError("cannot write split " + path);
  f << j.dump(1) << "\n";
}

Split load_split(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) throw DataError("cannot read split " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw DataError("bad split JSON: " + std::string(e.what()));
  }
  Split s;
  s.method = j.at("method").get<std::string>() == "scaffold"
                 ? SplitMethod::Scaffold
                 : SplitMethod::Random;
  s.seed = j.at("seed").get<uint64_t>();
  s.train = j.at("train").get<std::vector<int>>();
  s.val = j.at("val").get<std::vector<int>>();
  s.test = j.at("test").get<std::vector<int>>();
  return s;
}

std::vector<int> resolve_rows(const Dataset& data,
                              const std::vector<int>& source_indices) {
  std::map<int, int> lookup;
  for (int i = 0; i < static_cast<int>(data.rows.size()); ++i)
    lookup[data.rows[i].source_index] = i;
  std::vector<int> out;
  for (int s : source_indices) {
    auto it = lookup.find(s);
    if (it != lookup.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace hignn::train
