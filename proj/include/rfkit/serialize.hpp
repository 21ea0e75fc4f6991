#pragma once

#include <string>

#include "rfkit/features.hpp"
#include "rfkit/kernels.hpp"
#include "rfkit/solvers.hpp"
#include "rfkit/standardize.hpp"

namespace rfkit {

// JSON snapshots. Doubles are written in shortest round-trip form, so a
// reloaded model or feature map predicts bit-identically to the original.
// Feature-map snapshots store the sampling recipe (family, D, parameters,
// seed) and re-derive the draws on load; Binning additionally stores the
// frozen cell tables and the allocated output width.

std::string kernel_to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const std::string& text);

std::string feature_map_to_json(const FittedFeatureMap& map);
FittedFeatureMap feature_map_from_json(const std::string& text);

std::string model_to_json(const FitModel& model);
FitModel model_from_json(const std::string& text);

void save_feature_map(const FittedFeatureMap& map, const std::string& path);
FittedFeatureMap load_feature_map(const std::string& path);

void save_model(const FitModel& model, const std::string& path);
FitModel load_model(const std::string& path);

}  // namespace rfkit
