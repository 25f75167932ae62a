#pragma once

// The machine's boundary to the outside world. Devices are mounted at
// reserved paths under `dev`; reads and writes go through an injected
// Environment so whole runs can be scripted.

#include "evocat/tree.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace evocat {

enum class DeviceKind { Clock, StdinLine, Stdout };
enum class Direction { In, Out };

struct DeviceBinding {
  Path mount;
  Direction direction;
  DeviceKind kind;
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual Natural now_ms() = 0;
  // nullopt at end of input.
  virtual std::optional<std::string> read_line() = 0;
  virtual void write_line(const std::string& line) = 0;
};

/// Wall clock and the process's standard streams.
class SystemEnvironment final : public Environment {
 public:
  Natural now_ms() override;
  std::optional<std::string> read_line() override;
  void write_line(const std::string& line) override;
};

/// Deterministic environment for tests and reproducible runs: the clock
/// starts at `clock_start` and advances by `clock_step` per read; input
/// lines come from a script; output is collected.
class ScriptedEnvironment final : public Environment {
 public:
  ScriptedEnvironment(Natural clock_start = 0, Natural clock_step = 1,
                      std::vector<std::string> input = {});

  Natural now_ms() override;
  std::optional<std::string> read_line() override;
  void write_line(const std::string& line) override;

  const std::vector<std::string>& output() const noexcept { return output_; }
  // When set, written lines are also forwarded here.
  void tee(Environment* sink) noexcept { tee_ = sink; }

 private:
  Natural clock_;
  Natural step_;
  std::deque<std::string> input_;
  std::vector<std::string> output_;
  Environment* tee_ = nullptr;
};

/// Immutable after construction.
class DeviceTable {
 public:
  // Mounts dev.clock, dev.stdin and dev.stdout over the given environment.
  explicit DeviceTable(std::shared_ptr<Environment> env);
  DeviceTable(std::shared_ptr<Environment> env, std::vector<DeviceBinding> bindings);

  const std::vector<DeviceBinding>& bindings() const noexcept { return bindings_; }
  const DeviceBinding* find(const Path& mount) const;

  // Throws UnboundDevice for unknown or out-direction mounts; EndOfInput
  // when stdin is exhausted.
  Node read(const Path& mount) const;
  // Throws UnboundDevice for unknown or in-direction mounts; NotEncodable
  // for sets that are not strings.
  void write(const Path& mount, const Node& value) const;

  // Adds empty mount nodes for every binding that is not yet in the tree.
  void mount_into(Node& root) const;

 private:
  std::shared_ptr<Environment> env_;
  std::vector<DeviceBinding> bindings_;
};

}  // namespace evocat
