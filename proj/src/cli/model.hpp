#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graded/rational.hpp"

namespace bfvlab::cli {

// One flat model-file format shared by all modules: typed sections, all
// optional, unknown keys rejected. Polynomial and DSL expressions stay
// strings here and are parsed by the owning module.
struct AlgebraSection {
  std::vector<std::pair<std::string, int>> generators;
  std::vector<std::string> annihilate;                       // monomials
  std::vector<std::pair<std::string, std::string>> substitute;
  struct DerivationDecl {
    int degree = 1;
    std::map<std::string, std::string> images;
  };
  std::map<std::string, DerivationDecl> derivations;
};

struct ConstraintSection {
  int pairs = 0;
  std::vector<std::string> H;
  std::vector<std::tuple<int, int, int, std::string>> f;
};

struct FormalSection {
  std::vector<std::string> disable_rules;
};

struct LatticeSection {
  int d = 2;
  std::vector<int> N{8, 16, 32};
  std::uint64_t seed = 42;
  double fd_step = 1e-4;
  int k = 2;
  int states = 20;
};

struct Model {
  std::string name;
  std::string path;
  std::string hash;  // fnv1a-64 of the file bytes, hex
  std::optional<AlgebraSection> algebra;
  std::optional<ConstraintSection> constraints;
  std::optional<FormalSection> formal;
  std::optional<LatticeSection> lattice;
};

Model load_model(const std::string& path);
Model parse_model(const std::string& json_text, const std::string& path);

std::string fnv1a64_hex(const std::string& bytes);

}  // namespace bfvlab::cli
