#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace evocat {

// Leaf payloads are unbounded naturals.
using Natural = boost::multiprecision::cpp_int;

inline std::string to_string(const Natural& n) { return n.str(); }

}  // namespace evocat
