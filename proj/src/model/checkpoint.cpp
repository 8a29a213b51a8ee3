// Versioned JSON checkpoints. nlohmann orders object keys, and doubles
// serialize shortest-round-trip, so save -> load -> save is byte-stable
// and values reload bit-exact.

#include <fstream>
#include <json.hpp>
#include <map>

#include "hignn/checkpoint.hpp"

namespace hignn::nn {

using nlohmann::json;

json config_to_json(const ModelConfig& cfg) {
  json j;
  j["d"] = cfg.encoder.d;
  j["depth"] = cfg.encoder.depth;
  j["slices"] = cfg.encoder.slices;
  j["reduction"] = cfg.encoder.reduction;
  j["dropout"] = cfg.encoder.dropout;
  j["scheme"] = scheme_to_string(cfg.encoder.scheme);
  j["fa_enabled"] = cfg.encoder.fa_enabled;
  j["atom_dim"] = cfg.encoder.atom_dim;
  j["bond_dim"] = cfg.encoder.bond_dim;
  j["mode"] = mode_to_string(cfg.mode);
  j["task"] = task_to_string(cfg.task);
  j["n_tasks"] = cfg.n_tasks;
  j["heads"] = cfg.heads;
  j["metric"] = cfg.metric;
  j["target_mean"] = cfg.target_mean;
  j["target_std"] = cfg.target_std;
  return j;
}

ModelConfig config_from_json(const json& j) {
  ModelConfig cfg;
  cfg.encoder.d = j.at("d").get<int>();
  cfg.encoder.depth = j.at("depth").get<int>();
  cfg.encoder.slices = j.at("slices").get<int>();
  cfg.encoder.reduction = j.at("reduction").get<int>();
  cfg.encoder.dropout = j.at("dropout").get<double>();
  cfg.encoder.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  cfg.encoder.fa_enabled = j.at("fa_enabled").get<bool>();
  cfg.encoder.atom_dim = j.at("atom_dim").get<int>();
  cfg.encoder.bond_dim = j.at("bond_dim").get<int>();
  cfg.mode = mode_from_string(j.at("mode").get<std::string>());
  cfg.task = task_from_string(j.at("task").get<std::string>());
  cfg.n_tasks = j.at("n_tasks").get<int>();
  cfg.heads = j.at("heads").get<int>();
  cfg.metric = j.at("metric").get<std::string>();
  cfg.target_mean = j.at("target_mean").get<std::vector<double>>();
  cfg.target_std = j.at("target_std").get<std::vector<double>>();
  return cfg;
}

void save_checkpoint(const std::string& path, HignnModel& model) {
  json j;
  j["format_version"] = 1;
  j["config"] = config_to_json(model.cfg);
  json params;
  for (tensor::Param* p : model.all_params()) {
    json entry;
    entry["shape"] = p->shape;
    entry["data"] = p->value;
    params[p->name] = std::move(entry);
  }
  j["params"] = std::move(params);
  std::ofstream f(path);
  if (!f.good()) throw DataError("cannot write checkpoint " + path);
  f << j.dump(1) << "\n";
}

HignnModel load_checkpoint(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) throw DataError("cannot read checkpoint " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw DataError("bad checkpoint JSON: " + std::string(e.what()));
  }
  if (j.value("format_version", 0) != 1)
    throw DataError("unsupported checkpoint format version");
  HignnModel model;
  model.cfg = config_from_json(j.at("config"));
  model.init(0);
  std::map<std::string, tensor::Param*> by_name;
  for (tensor::Param* p : model.all_params()) by_name[p->name] = p;
  const json& params = j.at("params");
  for (auto it = params.begin(); it != params.end(); ++it) {
    auto found = by_name.find(it.key());
    if (found == by_name.end())
      throw DataError("checkpoint has unknown parameter " + it.key());
    tensor::Param* p = found->second;
    auto shape = it.value().at("shape").get<std::vector<int>>();
    if (shape != p->shape)
      throw DataError("checkpoint shape mismatch for " + it.key());
    auto data = it.value().at("data").get<std::vector<double>>();
    if (data.size() != p->value.size())
      throw DataError("checkpoint size mismatch for " + it.key());
    p->value = std::move(data);
    by_name.erase(found);
  }
  if (!by_name.empty())
    throw DataError("checkpoint missing parameter " + by_name.begin()->first);
  return model;
}

}  // namespace hignn::nn
