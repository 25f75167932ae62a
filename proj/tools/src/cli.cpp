#include "evocat/cli.hpp"

#include "evocat/machine.hpp"
#include "evocat/textio.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace evocat::cli {

namespace {

// Console bound to caller-provided streams.
class StreamEnvironment final : public Environment {
 public:
  StreamEnvironment(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  Natural now_ms() override {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::system_clock::now().time_since_epoch());
    return Natural(ms.count());
  }

  std::optional<std::string> read_line() override {
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  void write_line(const std::string& line) override { out_ << line << '\n'; }

 private:
  std::istream& in_;
  std::ostream& out_;
};

struct Failure {
  int status;
  std::string message;
};

struct RunOptions {
  std::vector<std::string> files;
  std::string entry;
  std::vector<std::string> args;
  std::uint64_t fuel = kDefaultFuel;
  std::string dump;
  std::optional<std::uint64_t> clock_start;
  std::uint64_t clock_step = 1;
  std::string input;
};

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::DuplicateSibling:
    case ErrorCode::VariablesOutsideRules: return kLoadError;
    case ErrorCode::MissingArgument:
    case ErrorCode::UnknownArgument:
    case ErrorCode::NotATemplate: return kSetupError;
    default: return kRuntimeError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure{kLoadError, path + ": cannot open"};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

StateTree parse_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return textio::parse(text);
  } catch (const ParseError& e) {
    throw Failure{kLoadError, path + ":" + e.message()};
  }
}

StateTree load(const std::vector<std::string>& files) {
  StateTree tree = parse_file(files.front());
  for (std::size_t i = 1; i < files.size(); ++i) {
    StateTree more = parse_file(files[i]);
    for (auto& c : more.root().children()) {
      if (!c.label.is_positional() && tree.root().find(c.label.name()))
        throw Failure{kLoadError, files[i] + ": top-level label '" + c.label.name() + "' is already defined"};
      tree.root().append(c.label, std::move(c.node));
    }
  }
  return tree;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream ss(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(ss, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_dump(const std::string& target, const StateTree& tree, std::ostream& out) {
  std::string text = textio::print(tree);
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw Failure{kRuntimeError, target + ": cannot write dump"};
  f << text;
}

const Path kEntrySlot = Path::parse("_entry");

int run(const RunOptions& opt, bool trace, std::istream& in, std::ostream& out) {
  StateTree tree = load(opt.files);

  const Path entry_path = [&] {
    try {
      return Path::parse(opt.entry);
    } catch (const Error& e) {
      throw Failure{kSetupError, "--entry: " + e.message()};
    }
  }();
  const Node* tmpl = tree.resolve(entry_path);
  if (!tmpl) throw Failure{kSetupError, "entry '" + opt.entry + "' does not resolve"};
  if (!is_function_template(*tmpl)) throw Failure{kSetupError, "entry '" + opt.entry + "' is not a function template"};

  Node instance = *tmpl;
  Node& slots = *instance.find("args");
  for (const auto& a : opt.args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{kSetupError, "--arg '" + a + "': expected label=literal"};
    const std::string label = a.substr(0, eq);
    Node* slot = slots.find(label);
    if (!slot) throw Failure{kSetupError, "--arg '" + a + "': '" + opt.entry + "' has no argument '" + label + "'"};
    try {
      *slot = textio::parse_value(a.substr(eq + 1));
    } catch (const ParseError& e) {
      throw Failure{kSetupError, "--arg '" + a + "': " + e.message()};
    }
  }
  tree.root().put(kEntrySlot.to_string(), std::move(instance));

  auto console = std::make_shared<StreamEnvironment>(in, out);
  std::shared_ptr<Environment> env = console;
  if (opt.clock_start || !opt.input.empty()) {
    auto scripted = std::make_shared<ScriptedEnvironment>(Natural(opt.clock_start.value_or(0)),
                                                          Natural(opt.clock_step),
                                                          opt.input.empty() ? std::vector<std::string>{}
                                                                            : read_lines(opt.input));
    scripted->tee(console.get());
    env = scripted;
  }

  Machine machine(std::move(tree), opt.fuel);
  machine.attach_devices(std::make_shared<DeviceTable>(env));
  if (trace) machine.set_trace(&out);

  Node result = machine.call(kEntrySlot);
  out << textio::print_value(result) << '\n';
  if (!opt.dump.empty()) write_dump(opt.dump, machine.tree(), out);
  return kOk;
}

void add_run_options(CLI::App& cmd, RunOptions& opt) {
  cmd.add_option("files", opt.files, "State file followed by program files merged under its root")->required();
  cmd.add_option("--entry", opt.entry, "Path of the function template to call")->required();
  cmd.add_option("--arg", opt.args, "Argument binding label=literal (repeatable)");
  cmd.add_option("--fuel", opt.fuel, "Transition budget")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  cmd.add_option("--dump", opt.dump, "Write the final state here ('-' for standard output)");
  cmd.add_option("--clock-start", opt.clock_start, "Use a scripted clock starting at this value");
  cmd.add_option("--clock-step", opt.clock_step, "Scripted clock increment per read");
  cmd.add_option("--input", opt.input, "Scripted input lines for dev.stdin");
}

}  // namespace

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolving-categories virtual machine", "evocat"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Call a function template and print its result");
  add_run_options(*run_cmd, run_opt);
  auto* trace_cmd = app.add_subcommand("trace", "Like run, printing one line per transition");
  add_run_options(*trace_cmd, run_opt);

  std::vector<std::string> fmt_files;
  auto* fmt_cmd = app.add_subcommand("fmt", "Print files in canonical form");
  fmt_cmd->add_option("files", fmt_files)->required();
  std::vector<std::string> check_files;
  auto* check_cmd = app.add_subcommand("check", "Parse files and report errors");
  check_cmd->add_option("files", check_files)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e, out, err);
    return status == 0 ? kOk : kSetupError;
  }

  try {
    if (*run_cmd) return run(run_opt, false, in, out);
    if (*trace_cmd) return run(run_opt, true, in, out);
    if (*fmt_cmd) {
      for (const auto& f : fmt_files) out << textio::print(parse_file(f));
      return kOk;
    }
    for (const auto& f : check_files) parse_file(f);
    return kOk;
  } catch (const Failure& f) {
    err << "evocat: " << f.message << '\n';
    return f.status;
  } catch (const Error& e) {
    err << "evocat: " << e.what() << '\n';
    return status_of(e.code());
  }
}

}  // namespace evocat::cli
