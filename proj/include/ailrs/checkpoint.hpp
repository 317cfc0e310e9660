#pragma once

#include <optional>
#include <string>

#include "ailrs/discriminator.hpp"
#include "ailrs/linear_policy.hpp"
#include "ailrs/run_config.hpp"

namespace ailrs {

struct DiscState {
  DiscriminatorParams params;
  AdamState adam;
};

struct Checkpoint {
  std::string algo = "ailrs";
  int iteration = 0;
  PolicyParams policy;
  RunningStats stats;
  std::optional<DiscState> disc;
  nlohmann::json config_echo;
  std::uint64_t master_seed = 0;
};

// JSON with every float in shortest round-trip decimal form, guarded by a
// checksum over the payload; loads reproduce all numeric fields bit-exact.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace ailrs
