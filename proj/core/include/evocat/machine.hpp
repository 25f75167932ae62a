#pragma once

// The evolving-categories machine: a state tree plus the evaluator, the
// two execution engines, the template call protocol and devices.

#include "evocat/devices.hpp"
#include "evocat/engine.hpp"
#include "evocat/tree.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace evocat {

namespace detail {
class Interpreter;
class DepthGuard;
}  // namespace detail

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// A function template is a plain set node with `args` (set), `mode`
/// (leaf: 0 sequential, 1 rewrite) and `body` or `rules` children. Such
/// nodes are inert: evaluation copies them without looking inside.
bool is_function_template(const Node& node);

enum class ExecMode { Sequential = 0, Rewrite = 1 };

struct Counters {
  std::uint64_t fuel_used = 0;
  std::uint64_t operation_firings = 0;  // built-in operations and calls
  std::uint64_t formula_firings = 0;
  std::uint64_t instructions = 0;
  std::uint64_t transitions = 0;  // instructions + formula firings
};

class Machine {
 public:
  explicit Machine(StateTree tree = StateTree(), std::uint64_t fuel = kDefaultFuel);
  ~Machine();
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  StateTree& tree() noexcept { return tree_; }
  const StateTree& tree() const noexcept { return tree_; }

  /// Fuel is the budget of subtree replacements left; running out raises
  /// FuelExhausted.
  void set_fuel(std::uint64_t fuel) noexcept { fuel_ = fuel; }
  std::uint64_t fuel_left() const noexcept { return fuel_; }
  const Counters& counters() const noexcept { return counters_; }

  /// One line per transition is written here when set.
  void set_trace(std::ostream* out) noexcept { trace_ = out; }

  /// Installs the device table and adds its mount nodes to the tree.
  void attach_devices(std::shared_ptr<const DeviceTable> devices);
  const DeviceTable* devices() const noexcept { return devices_.get(); }

  // --- evaluator ------------------------------------------------------------

  /// Contents of the node at `at`. Terms found there are evaluated and
  /// replaced by their values in the tree; device mounts are read afresh.
  Node data_of(const Path& at);

  /// Evaluates a detached copy of `term`, resolving references from the
  /// frame at `frame` outward. The tree is only touched where referenced
  /// terms get memoized.
  Node evaluate(const Node& term, const Path& frame = Path());

  // --- execution engines ------------------------------------------------------

  /// Runs an instruction list against the set node at `frame`, keeping the
  /// instruction pointer in the frame's `ip` child.
  void run_sequential(const Node& body, const Path& frame);
  void run_sequential(std::span<const Instruction> body, const Path& frame);

  /// Rewrites the set node at `frame` with a formula list until no formula
  /// matches.
  void run_rewrite(const Node& rules, const Path& frame);
  void run_rewrite(std::span<const Formula> rules, const Path& frame);

  // --- templates and appliances -------------------------------------------

  /// Deep copy of the template at `template_path`.
  Node instantiate(const Path& template_path);

  /// Runs the populated function instance at `instance` and replaces it by
  /// its result, which is also returned.
  Node call(const Path& instance);

  void heap_put(const Path& heap, Node item);
  Node heap_get(const Path& heap);

  // --- devices ------------------------------------------------------------------

  Node read_device(const Path& mount);
  void write_device(const Path& mount, const Node& value);

 private:
  friend class detail::Interpreter;
  friend class detail::DepthGuard;

  StateTree tree_;
  std::uint64_t fuel_;
  Counters counters_;
  std::ostream* trace_ = nullptr;
  std::shared_ptr<const DeviceTable> devices_;
  std::vector<const Node*> in_progress_;
  std::size_t depth_ = 0;
  std::size_t call_depth_ = 0;
};

}  // namespace evocat
