#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ailrs {

// Decisions the supervisor can take; the policy's action space.
inline constexpr int kActionDim = 3;

enum class Decision : int { ChangeLeft = 0, Keep = 1, ChangeRight = 2 };

inline int decision_index(Decision d) { return static_cast<int>(d); }

inline std::vector<double> one_hot(int index, int dim = kActionDim) {
  if (index < 0 || index >= dim) throw std::invalid_argument("one_hot: index out of range");
  std::vector<double> v(dim, 0.0);
  v[index] = 1.0;
  return v;
}

enum class Terminal : int { None = 0, Collision = 1, HorizonReached = 2 };

// Per-step event flags. Events are edge-triggered: set only for the step in
// which they occur.
struct StepInfo {
  Terminal terminal = Terminal::None;
  bool clamped = false;
  bool boundary_crossed = false;
  bool midpoint_passed_event = false;
  bool maneuver_completed_event = false;
};

// One episode of (state, action) pairs plus the per-step event stream.
struct Trajectory {
  std::vector<std::vector<double>> states;
  std::vector<int> actions;
  std::vector<StepInfo> infos;

  std::size_t size() const { return states.size(); }
  bool collided() const {
    return !infos.empty() && infos.back().terminal == Terminal::Collision;
  }
};

struct StateAction {
  std::vector<double> state;
  int action = 0;
};

// Minimal row-major matrix.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// Minimal episodic environment surface used by rollouts. Instances are
// confined to one thread each; create one per concurrent rollout.
class EnvInterface {
 public:
  virtual ~EnvInterface() = default;
  virtual int obs_dim() const = 0;
  virtual std::vector<double> reset(std::uint64_t seed) = 0;

  struct Step {
    std::vector<double> obs;
    StepInfo info;
  };
  virtual Step step(Decision d) = 0;
};

using EnvFactory = std::function<std::unique_ptr<EnvInterface>()>;

}  // namespace ailrs
