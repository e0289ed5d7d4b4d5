#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace bfvlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown on malformed user input (model files, expression strings).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on structurally bad configurations (rule sets that do not
// terminate, missing derivation images, generator-set mismatches).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rat& r) { return r.str(); }

}  // namespace bfvlab
