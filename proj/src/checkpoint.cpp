#include "ailrs/checkpoint.hpp"

#include <cmath>
#include <stdexcept>

#include "ailrs/rng.hpp"
#include "ailrs/util.hpp"

namespace ailrs {

namespace {

void require_finite(const std::vector<double>& v, const char* field) {
  for (double x : v) {
    if (!std::isfinite(x))
      throw std::runtime_error(std::string("checkpoint: non-finite value in ") + field);
  }
}

std::string checksum_of(const nlohmann::json& payload) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(payload.dump())));
  return std::string(buf);
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  require_finite(ckpt.policy.theta.data, "theta");
  require_finite(ckpt.stats.mean, "mean");
  require_finite(ckpt.stats.var, "var");

  nlohmann::json payload{
      {"kind", "ailrs_checkpoint"},
      {"algo", ckpt.algo},
      {"iteration", ckpt.iteration},
      {"policy", {{"p", ckpt.policy.p()}, {"n", ckpt.policy.n()}, {"theta", ckpt.policy.theta.data}}},
      {"stats", {{"mean", ckpt.stats.mean}, {"var", ckpt.stats.var}, {"count", ckpt.stats.count}}},
      {"config", ckpt.config_echo},
      {"master_seed", ckpt.master_seed},
  };
  if (ckpt.disc) {
    const DiscriminatorParams& p = ckpt.disc->params;
    require_finite(p.w1, "w1");
    require_finite(p.w2, "w2");
    require_finite(p.w3, "w3");
    payload["discriminator"] = nlohmann::json{
        {"input_dim", p.input_dim}, {"h1", p.h1},   {"h2", p.h2},
        {"w1", p.w1},               {"b1", p.b1},   {"w2", p.w2},
        {"b2", p.b2},               {"w3", p.w3},   {"b3", p.b3},
        {"adam_m", ckpt.disc->adam.m},
        {"adam_v", ckpt.disc->adam.v},
        {"adam_t", ckpt.disc->adam.timestep},
    };
  }

  nlohmann::json doc{{"payload", payload}, {"checksum", checksum_of(payload)}};
  atomic_write_file(path, doc.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("checkpoint unreadable: " + path + ": " + e.what());
  }

  try {
    const nlohmann::json& payload = doc.at("payload");
    const std::string stored = doc.at("checksum").get<std::string>();
    if (stored != checksum_of(payload))
      throw std::runtime_error("checksum mismatch (field: checksum)");
    if (payload.value("kind", "") != "ailrs_checkpoint")
      throw std::runtime_error("not a checkpoint (field: kind)");

    Checkpoint ckpt;
    ckpt.algo = payload.at("algo").get<std::string>();
    ckpt.iteration = payload.at("iteration").get<int>();

    const nlohmann::json& pol = payload.at("policy");
    const int p = pol.at("p").get<int>();
    const int n = pol.at("n").get<int>();
    ckpt.policy = PolicyParams(p, n);
    auto theta = pol.at("theta").get<std::vector<double>>();
    if (static_cast<int>(theta.size()) != p * n)
      throw std::runtime_error("theta size inconsistent (field: policy.theta)");
    ckpt.policy.theta.data = std::move(theta);

    const nlohmann::json& st = payload.at("stats");
    ckpt.stats = RunningStats(n);
    ckpt.stats.mean = st.at("mean").get<std::vector<double>>();
    ckpt.stats.var = st.at("var").get<std::vector<double>>();
    ckpt.stats.count = st.at("count").get<std::uint64_t>();
    if (ckpt.stats.dim() != n || static_cast<int>(ckpt.stats.var.size()) != n)
      throw std::runtime_error("stats dimensions inconsistent (field: stats)");

    if (payload.contains("discriminator")) {
      const nlohmann::json& d = payload.at("discriminator");
      DiscState disc;
      disc.params.input_dim = d.at("input_dim").get<int>();
      disc.params.h1 = d.at("h1").get<int>();
      disc.params.h2 = d.at("h2").get<int>();
      disc.params.w1 = d.at("w1").get<std::vector<double>>();
      disc.params.b1 = d.at("b1").get<std::vector<double>>();
      disc.params.w2 = d.at("w2").get<std::vector<double>>();
      disc.params.b2 = d.at("b2").get<std::vector<double>>();
      disc.params.w3 = d.at("w3").get<std::vector<double>>();
      disc.params.b3 = d.at("b3").get<std::vector<double>>();
      const auto expect = DiscriminatorParams::zeros(disc.params.input_dim, disc.params.h1,
                                                     disc.params.h2);
      if (disc.params.w1.size() != expect.w1.size() || disc.params.b1.size() != expect.b1.size() ||
          disc.params.w2.size() != expect.w2.size() || disc.params.b2.size() != expect.b2.size() ||
          disc.params.w3.size() != expect.w3.size() || disc.params.b3.size() != expect.b3.size())
        throw std::runtime_error("discriminator layer sizes inconsistent (field: discriminator)");
      disc.adam.m = d.at("adam_m").get<std::vector<double>>();
      disc.adam.v = d.at("adam_v").get<std::vector<double>>();
      disc.adam.timestep = d.at("adam_t").get<std::int64_t>();
      if (static_cast<int>(disc.adam.m.size()) != disc.params.param_count() ||
          static_cast<int>(disc.adam.v.size()) != disc.params.param_count())
        throw std::runtime_error("adam state sizes inconsistent (field: discriminator.adam_m)");
      ckpt.disc = std::move(disc);
    }

    ckpt.config_echo = payload.value("config", nlohmann::json::object());
    ckpt.master_seed = payload.at("master_seed").get<std::uint64_t>();
    return ckpt;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("checkpoint malformed: " + path + ": " + e.what());
  }
}

}  // namespace ailrs
