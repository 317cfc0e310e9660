#include "ailrs/pipeline.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "ailrs/bc.hpp"
#include "ailrs/checkpoint.hpp"
#include "ailrs/evaluation.hpp"
#include "ailrs/util.hpp"

namespace fs = std::filesystem;

namespace ailrs {

namespace {

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

void save_policy_checkpoint(const RunConfig& cfg, const std::string& algo, int iteration,
                            const PolicyParams& policy, const RunningStats& stats,
                            const LsGanDiscriminator* disc, const std::string& path) {
  Checkpoint ckpt;
  ckpt.algo = algo;
  ckpt.iteration = iteration;
  ckpt.policy = policy;
  ckpt.stats = stats;
  if (disc) ckpt.disc = DiscState{disc->params(), disc->adam()};
  ckpt.config_echo = cfg;
  ckpt.master_seed = cfg.train.master_seed;
  save_checkpoint(ckpt, path);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

void cmd_gen_expert(const RunConfig& cfg, int episodes, std::uint64_t seed,
                    const std::string& out_path) {
  const DemoDataset dataset = generate_demos(cfg.env, cfg.expert, episodes, seed);
  save_demos(dataset, out_path);
}

void cmd_train(const RunConfig& cfg, const std::string& algo, const std::string& demos_path,
               const std::string& run_dir) {
  if (!fs::exists(demos_path))
    throw std::runtime_error("demos file not found: " + demos_path);
  const DemoDataset demos = load_demos(demos_path);
  if (demos.n != cfg.env.obs_dim())
    throw std::runtime_error("demos dimension mismatch: file has n=" + std::to_string(demos.n) +
                             ", config expects n=" + std::to_string(cfg.env.obs_dim()));
  fs::create_directories(run_dir);

  if (algo == "bc") {
    const BcResult bc = bc_fit(demos, 1e-6);
    save_policy_checkpoint(cfg, "bc", 0, bc.policy, bc.stats, nullptr,
                           (fs::path(run_dir) / "checkpoint_final.json").string());
    return;
  }
  if (algo != "ailrs") throw std::runtime_error("unknown algo: " + algo + " (use ailrs or bc)");

  const int n = cfg.env.obs_dim();
  const SeedStreams streams = seed_streams(cfg.train.master_seed);
  RngStream init_stream = streams.disc_init;
  auto model = std::make_unique<LsGanDiscriminator>(cfg.disc, n + kActionDim,
                                                    init_stream.next_u64());
  const LsGanDiscriminator* disc = model.get();

  EnvConfig env_cfg = cfg.env;
  Trainer trainer(cfg.train, cfg.disc,
                  [env_cfg]() { return std::make_unique<HighwayEnv>(env_cfg); }, n,
                  pool_pairs(demos), std::move(model));

  std::string log;
  log += kTrainLogHeader;
  log += '\n';
  for (int t = 0; t < cfg.train.iterations; ++t) {
    const IterationRecord rec = trainer.iterate();
    log += csv_row({std::to_string(rec.iteration), fmt_double(rec.mean_return),
                    fmt_double(rec.max_return), fmt_double(rec.sigma_r),
                    fmt_double(rec.disc_loss), fmt_double(rec.lane_changes),
                    fmt_double(rec.lane_change_reward), fmt_double(rec.wall_ms)});
    if (rec.iteration % cfg.train.checkpoint_every == 0 ||
        rec.iteration == cfg.train.iterations) {
      const fs::path dir = fs::path(run_dir) / ("ckpt_" + std::to_string(rec.iteration));
      fs::create_directories(dir);
      save_policy_checkpoint(cfg, "ailrs", rec.iteration, trainer.policy(), trainer.stats(),
                             disc, (dir / "checkpoint.json").string());
    }
  }
  atomic_write_file((fs::path(run_dir) / "train_log.csv").string(), log);
  save_policy_checkpoint(cfg, "ailrs", trainer.iteration(), trainer.policy(), trainer.stats(),
                         disc, (fs::path(run_dir) / "checkpoint_final.json").string());
}

void cmd_eval(const RunConfig& cfg, const std::string& ckpt_path, int episodes,
              std::uint64_t seed, const std::string& out_csv,
              const std::string& name_override) {
  if (!fs::exists(ckpt_path)) throw std::runtime_error("checkpoint not found: " + ckpt_path);
  const Checkpoint ckpt = load_checkpoint(ckpt_path);
  if (ckpt.policy.n() != cfg.env.obs_dim() || ckpt.policy.p() != kActionDim)
    throw std::runtime_error(
        "checkpoint dimensions do not match the environment: checkpoint (p=" +
        std::to_string(ckpt.policy.p()) + ", n=" + std::to_string(ckpt.policy.n()) +
        "), environment expects (p=" + std::to_string(kActionDim) +
        ", n=" + std::to_string(cfg.env.obs_dim()) + ")");

  ExpertDriver expert_driver(cfg.expert, cfg.env);
  const EvalMetrics expert_metrics = run_eval(cfg.env, expert_driver, episodes, seed);
  const NormalizedMetrics expert_ratios = normalize_metrics(expert_metrics, expert_metrics);

  LinearDriver policy_driver(ckpt.policy, ckpt.stats);
  const EvalMetrics policy_metrics = run_eval(cfg.env, policy_driver, episodes, seed);
  const NormalizedMetrics policy_ratios = normalize_metrics(policy_metrics, expert_metrics);

  const std::string name = name_override.empty() ? ckpt.algo : name_override;
  std::string csv;
  csv += kEvalReportHeader;
  csv += '\n';
  auto row = [&](const std::string& policy_name, const EvalMetrics& m,
                 const NormalizedMetrics& r) {
    csv += csv_row({policy_name, std::to_string(m.episodes), fmt_double(m.lane_change_count),
                    fmt_double(m.lane_change_reward), fmt_double(m.collision_rate),
                    fmt_double(r.count_ratio), fmt_double(r.reward_ratio),
                    std::to_string(m.seed)});
  };
  row("expert", expert_metrics, expert_ratios);
  row(name, policy_metrics, policy_ratios);
  atomic_write_file(out_csv, csv);
}

void cmd_report(const std::string& run_dir) {
  const fs::path eval_csv = fs::path(run_dir) / "eval_report.csv";
  const fs::path train_csv = fs::path(run_dir) / "train_log.csv";
  if (!fs::exists(eval_csv) && !fs::exists(train_csv))
    throw std::runtime_error("nothing to report: neither " + eval_csv.string() + " nor " +
                             train_csv.string() + " exists");

  if (fs::exists(eval_csv)) {
    const auto rows = read_csv(eval_csv.string());
    std::string out = "policy_name,count_ratio,reward_ratio\n";
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() < 8) throw std::runtime_error("malformed row in " + eval_csv.string());
      out += csv_row({rows[i][0], rows[i][5], rows[i][6]});
    }
    atomic_write_file((fs::path(run_dir) / "report_ratios.csv").string(), out);
  }
  if (fs::exists(train_csv)) {
    const auto rows = read_csv(train_csv.string());
    std::string out = "iteration,mean_return,lane_changes,lane_change_reward\n";
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() < 8) throw std::runtime_error("malformed row in " + train_csv.string());
      out += csv_row({rows[i][0], rows[i][1], rows[i][5], rows[i][6]});
    }
    atomic_write_file((fs::path(run_dir) / "report_curve.csv").string(), out);
  }
}

}  // namespace ailrs
