#pragma once

#include <string>

#include "ailrs/discriminator.hpp"
#include "ailrs/env_config.hpp"
#include "ailrs/expert.hpp"
#include "ailrs/trainer.hpp"

namespace ailrs {

struct EvalConfig {
  int episodes = 100;
  std::uint64_t seed = 9000;
};

struct PathsConfig {
  std::string demos = "demos.jsonl";
  std::string run_dir = "runs/default";
};

struct RunConfig {
  EnvConfig env;
  TrainConfig train;
  DiscriminatorConfig disc;
  ExpertRule expert;
  EvalConfig eval;
  PathsConfig paths;

  void validate() const;
};

void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);
void to_json(nlohmann::json& j, const DiscriminatorConfig& c);
void from_json(const nlohmann::json& j, DiscriminatorConfig& c);
void to_json(nlohmann::json& j, const EvalConfig& c);
void from_json(const nlohmann::json& j, EvalConfig& c);
void to_json(nlohmann::json& j, const PathsConfig& c);
void from_json(const nlohmann::json& j, PathsConfig& c);
void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_run_config(const std::string& path);

}  // namespace ailrs
