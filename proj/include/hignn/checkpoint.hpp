#pragma once

#include <string>

#include "hignn/model.hpp"

namespace hignn::nn {

void save_checkpoint(const std::string& path, HignnModel& model);
HignnModel load_checkpoint(const std::string& path);

}  // namespace hignn::nn
