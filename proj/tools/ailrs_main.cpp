#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ailrs/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"highway lane-change decision making: expert demos, adversarial "
               "imitation via random search, behavioral cloning, evaluation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string demos_path;
  std::string run_dir;
  std::string ckpt_path;
  std::string algo = "ailrs";
  std::string name_override;
  int episodes = 0;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen-expert", "generate expert demonstrations");
  gen->add_option("--config", config_path, "run config JSON")->required();
  gen->add_option("--episodes", episodes, "number of episodes")->required();
  gen->add_option("--seed", seed, "dataset seed")->required();
  gen->add_option("--out", out_path, "output demos JSONL")->required();

  auto* train = app.add_subcommand("train", "train a policy");
  train->add_option("--algo", algo, "ailrs or bc")->check(CLI::IsMember({"ailrs", "bc"}));
  train->add_option("--config", config_path, "run config JSON")->required();
  train->add_option("--demos", demos_path, "expert demos JSONL")->required();
  train->add_option("--run-dir", run_dir, "output run directory")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint against the expert");
  eval->add_option("--config", config_path, "run config JSON")->required();
  eval->add_option("--ckpt", ckpt_path, "checkpoint JSON")->required();
  eval->add_option("--episodes", episodes, "evaluation episodes")->required();
  eval->add_option("--seed", seed, "evaluation seed")->required();
  eval->add_option("--out", out_path, "output eval_report.csv")->required();
  eval->add_option("--name", name_override, "policy name override in the report");

  auto* report = app.add_subcommand("report", "emit plot-ready CSVs from a run directory");
  report->add_option("--run-dir", run_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ailrs::cmd_gen_expert(ailrs::load_run_config(config_path), episodes, seed, out_path);
    } else if (train->parsed()) {
      ailrs::cmd_train(ailrs::load_run_config(config_path), algo, demos_path, run_dir);
    } else if (eval->parsed()) {
      ailrs::cmd_eval(ailrs::load_run_config(config_path), ckpt_path, episodes, seed, out_path,
                      name_override);
    } else if (report->parsed()) {
      ailrs::cmd_report(run_dir);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
