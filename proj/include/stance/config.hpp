#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "stance/evaluation.hpp"
#include "stance/resources.hpp"

namespace stance {

// Operating point and resource locations. Defaults: 3000 features, C = 1,
// wi = 0.9, gamma_min = 0.5, 5 folds.
struct PipelineConfig {
  ResourcePaths resources = ResourcePaths::defaults_in(default_resource_dir());
  std::size_t num_features = 3000;
  double C = 1.0;
  double wi = 0.9;
  double gamma_min = 0.5;
  std::size_t k_folds = 5;
  std::uint64_t seed = 42;
  bool leaky_selection = false;
  double tolerance = 1e-4;
  std::size_t max_epochs = 1000;

  // Sets one key; throws Error for unknown keys or unparsable values.
  // Relative resource paths are resolved against `base_dir`.
  void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir = {});
  void validate() const;

  TrainConfig train_config() const;
  CvConfig cv_config() const;
};

// Flat "key = value" lines; '#' starts a comment.
PipelineConfig load_config(const std::filesystem::path& path);
void apply_config_text(PipelineConfig& cfg, std::string_view text, const std::filesystem::path& base_dir);

}  // namespace stance
