#pragma once

// Command-line driver: evocat {run,trace,fmt,check}.

#include <iosfwd>

namespace evocat::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kLoadError = 1;     // unreadable file, parse error, duplicate top-level label
inline constexpr int kSetupError = 2;    // bad flags, entry or argument problems
inline constexpr int kRuntimeError = 3;  // fuel, arithmetic, evaluation errors

/// Runs the driver with the given streams standing in for the console.
/// `in` feeds dev.stdin unless an input script is given.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace evocat::cli
