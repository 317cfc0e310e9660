#pragma once

#include <string>

#include "ailrs/run_config.hpp"

namespace ailrs {

// Command bodies behind the CLI; tests drive these directly.

void cmd_gen_expert(const RunConfig& cfg, int episodes, std::uint64_t seed,
                    const std::string& out_path);

// algo is "ailrs" or "bc". Writes run_dir/train_log.csv (ailrs only),
// periodic run_dir/ckpt_<t>/checkpoint.json, and run_dir/checkpoint_final.json.
void cmd_train(const RunConfig& cfg, const std::string& algo, const std::string& demos_path,
               const std::string& run_dir);

// Evaluates the checkpointed policy and the expert under identical seeds and
// writes one CSV row per policy, the expert first.
void cmd_eval(const RunConfig& cfg, const std::string& ckpt_path, int episodes,
              std::uint64_t seed, const std::string& out_csv,
              const std::string& name_override = "");

// Emits plot-ready CSVs from a run directory: report_ratios.csv from
// eval_report.csv and report_curve.csv from train_log.csv.
void cmd_report(const std::string& run_dir);

inline constexpr const char* kTrainLogHeader =
    "iteration,mean_return,max_return,sigma_r,disc_loss,lane_changes,lane_change_reward,wall_ms";
inline constexpr const char* kEvalReportHeader =
    "policy_name,episodes,lane_changes_mean,lane_change_reward_mean,collision_rate,"
    "count_ratio,reward_ratio,seed";

}  // namespace ailrs
