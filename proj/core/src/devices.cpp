#include "evocat/devices.hpp"

#include "evocat/textio.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>

namespace evocat {

namespace {

std::vector<DeviceBinding> default_bindings() {
  return {
      {Path::parse("dev.clock"), Direction::In, DeviceKind::Clock},
      {Path::parse("dev.stdin"), Direction::In, DeviceKind::StdinLine},
      {Path::parse("dev.stdout"), Direction::Out, DeviceKind::Stdout},
  };
}

bool overlaps(const Path& a, const Path& b) { return a.starts_with(b) || b.starts_with(a); }

}  // namespace

Natural SystemEnvironment::now_ms() {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now().time_since_epoch());
  return Natural(ms.count());
}

std::optional<std::string> SystemEnvironment::read_line() {
  std::string line;
  if (!std::getline(std::cin, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void SystemEnvironment::write_line(const std::string& line) { std::cout << line << '\n'; }

ScriptedEnvironment::ScriptedEnvironment(Natural clock_start, Natural clock_step,
                                         std::vector<std::string> input)
    : clock_(std::move(clock_start)), step_(std::move(clock_step)), input_(input.begin(), input.end()) {}

Natural ScriptedEnvironment::now_ms() {
  Natural t = clock_;
  clock_ += step_;
  return t;
}

std::optional<std::string> ScriptedEnvironment::read_line() {
  if (input_.empty()) return std::nullopt;
  std::string line = std::move(input_.front());
  input_.pop_front();
  return line;
}

void ScriptedEnvironment::write_line(const std::string& line) {
  output_.push_back(line);
  if (tee_) tee_->write_line(line);
}

DeviceTable::DeviceTable(std::shared_ptr<Environment> env)
    : DeviceTable(std::move(env), default_bindings()) {}

DeviceTable::DeviceTable(std::shared_ptr<Environment> env, std::vector<DeviceBinding> bindings)
    : env_(std::move(env)), bindings_(std::move(bindings)) {
  for (std::size_t i = 0; i < bindings_.size(); ++i)
    for (std::size_t j = i + 1; j < bindings_.size(); ++j)
      if (overlaps(bindings_[i].mount, bindings_[j].mount))
        throw Error(ErrorCode::UnboundDevice, "overlapping device mounts '" + bindings_[i].mount.to_string() +
                                                  "' and '" + bindings_[j].mount.to_string() + "'");
}

const DeviceBinding* DeviceTable::find(const Path& mount) const {
  auto it = std::find_if(bindings_.begin(), bindings_.end(),
                         [&](const DeviceBinding& b) { return b.mount == mount; });
  return it == bindings_.end() ? nullptr : &*it;
}

Node DeviceTable::read(const Path& mount) const {
  const DeviceBinding* b = find(mount);
  if (!b || b->direction != Direction::In)
    throw Error(ErrorCode::UnboundDevice, "no input device at '" + mount.to_string() + "'");
  switch (b->kind) {
    case DeviceKind::Clock: return Node::leaf(env_->now_ms());
    case DeviceKind::StdinLine: {
      auto line = env_->read_line();
      if (!line) throw Error(ErrorCode::EndOfInput, "input exhausted at '" + mount.to_string() + "'");
      auto text = textio::decode_utf8(*line);
      if (!text) throw Error(ErrorCode::NotEncodable, "input line is not valid UTF-8");
      return textio::make_string(*text);
    }
    case DeviceKind::Stdout: break;
  }
  throw Error(ErrorCode::UnboundDevice, "device at '" + mount.to_string() + "' cannot be read");
}

void DeviceTable::write(const Path& mount, const Node& value) const {
  const DeviceBinding* b = find(mount);
  if (!b || b->direction != Direction::Out)
    throw Error(ErrorCode::UnboundDevice, "no output device at '" + mount.to_string() + "'");
  if (value.is_leaf()) {
    env_->write_line(value.value().str());
    return;
  }
  if (value.is_set() && !value.has_op() && value.size() == 0) {
    env_->write_line("");
    return;
  }
  auto text = textio::utf8_string_of(value);
  if (!text) throw Error(ErrorCode::NotEncodable, "value written to '" + mount.to_string() + "' is not a string");
  env_->write_line(*text);
}

void DeviceTable::mount_into(Node& root) const {
  for (const auto& b : bindings_) {
    Node* cur = &root;
    for (const auto& seg : b.mount) {
      Node* next = cur->child(seg);
      if (!next) next = &cur->append(Label(seg.name()), Node::set());
      cur = next;
    }
  }
}

}  // namespace evocat
