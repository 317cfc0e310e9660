#include "ailrs/run_config.hpp"

#include <stdexcept>

#include "ailrs/util.hpp"

namespace ailrs {

void RunConfig::validate() const {
  env.validate();
  train.validate();
  disc.validate();
  expert.validate();
  if (eval.episodes < 1) throw std::invalid_argument("RunConfig: eval.episodes must be >= 1");
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{
      {"step_size", c.step_size},
      {"directions", c.directions},
      {"top_k", c.top_k},
      {"perturb_std", c.perturb_std},
      {"iterations", c.iterations},
      {"denominator_mode", c.denominator_mode == TrainConfig::Denominator::UseN ? "N" : "K"},
      {"sigma_floor", c.sigma_floor},
      {"master_seed", c.master_seed},
      {"checkpoint_every", c.checkpoint_every},
  };
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  TrainConfig d;
  c.step_size = j.value("step_size", d.step_size);
  c.directions = j.value("directions", d.directions);
  c.top_k = j.value("top_k", d.top_k);
  c.perturb_std = j.value("perturb_std", d.perturb_std);
  c.iterations = j.value("iterations", d.iterations);
  const std::string mode = j.value("denominator_mode", "N");
  if (mode == "N") {
    c.denominator_mode = TrainConfig::Denominator::UseN;
  } else if (mode == "K") {
    c.denominator_mode = TrainConfig::Denominator::UseK;
  } else {
    throw std::invalid_argument("TrainConfig: denominator_mode must be \"N\" or \"K\"");
  }
  c.sigma_floor = j.value("sigma_floor", d.sigma_floor);
  c.master_seed = j.value("master_seed", d.master_seed);
  c.checkpoint_every = j.value("checkpoint_every", d.checkpoint_every);
  c.validate();
}

void to_json(nlohmann::json& j, const DiscriminatorConfig& c) {
  j = nlohmann::json{
      {"label_policy", c.label_policy},
      {"label_expert", c.label_expert},
      {"learning_rate", c.learning_rate},
      {"adam_beta1", c.adam_beta1},
      {"adam_beta2", c.adam_beta2},
      {"adam_eps", c.adam_eps},
      {"minibatch_size", c.minibatch_size},
      {"updates_per_iteration", c.updates_per_iteration},
      {"d_clamp", c.d_clamp},
      {"hidden1", c.hidden1},
      {"hidden2", c.hidden2},
      {"return_mode", c.return_mode == DiscriminatorConfig::ReturnMode::Sum ? "sum" : "mean"},
  };
}

void from_json(const nlohmann::json& j, DiscriminatorConfig& c) {
  DiscriminatorConfig d;
  c.label_policy = j.value("label_policy", d.label_policy);
  c.label_expert = j.value("label_expert", d.label_expert);
  c.learning_rate = j.value("learning_rate", d.learning_rate);
  c.adam_beta1 = j.value("adam_beta1", d.adam_beta1);
  c.adam_beta2 = j.value("adam_beta2", d.adam_beta2);
  c.adam_eps = j.value("adam_eps", d.adam_eps);
  c.minibatch_size = j.value("minibatch_size", d.minibatch_size);
  c.updates_per_iteration = j.value("updates_per_iteration", d.updates_per_iteration);
  c.d_clamp = j.value("d_clamp", d.d_clamp);
  c.hidden1 = j.value("hidden1", d.hidden1);
  c.hidden2 = j.value("hidden2", d.hidden2);
  const std::string mode = j.value("return_mode", "sum");
  if (mode == "sum") {
    c.return_mode = DiscriminatorConfig::ReturnMode::Sum;
  } else if (mode == "mean") {
    c.return_mode = DiscriminatorConfig::ReturnMode::Mean;
  } else {
    throw std::invalid_argument("DiscriminatorConfig: return_mode must be \"sum\" or \"mean\"");
  }
  c.validate();
}

void to_json(nlohmann::json& j, const EvalConfig& c) {
  j = nlohmann::json{{"episodes", c.episodes}, {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, EvalConfig& c) {
  EvalConfig d;
  c.episodes = j.value("episodes", d.episodes);
  c.seed = j.value("seed", d.seed);
}

void to_json(nlohmann::json& j, const PathsConfig& c) {
  j = nlohmann::json{{"demos", c.demos}, {"run_dir", c.run_dir}};
}

void from_json(const nlohmann::json& j, PathsConfig& c) {
  PathsConfig d;
  c.demos = j.value("demos", d.demos);
  c.run_dir = j.value("run_dir", d.run_dir);
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"env", c.env},       {"train", c.train}, {"disc", c.disc},
                     {"expert", c.expert}, {"eval", c.eval},   {"paths", c.paths}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c.env = j.value("env", EnvConfig{});
  c.train = j.value("train", TrainConfig{});
  c.disc = j.value("disc", DiscriminatorConfig{});
  c.expert = j.value("expert", ExpertRule{});
  c.eval = j.value("eval", EvalConfig{});
  c.paths = j.value("paths", PathsConfig{});
  c.validate();
}

RunConfig load_run_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config unreadable: " + path + ": " + e.what());
  }
  try {
    return j.get<RunConfig>();
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid config " + path + ": " + e.what());
  }
}

}  // namespace ailrs
