#pragma once

// Line-oriented text description of a weighted box space.
//
//   format coarse-space 1
//   meta <key> <value...>
//   component <size>
//   generator <name> [args...]
//   weights <w_0> ... <w_{n-1}>
//   pairs <x> <y> [<x> <y> ...]
//
// `generator`, `weights` and `pairs` refer to the most recent component. The
// component relation is the union of the generator relation and the listed
// pairs. Weights default to uniform and are normalized on load. Blank lines and
// lines starting with '#' are ignored.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsebox/boxspace.hpp"

namespace coarsebox {

struct GeneratorSpec {
  std::string name;
  std::vector<std::string> args;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct ComponentSpec {
  Index size = 0;
  std::optional<GeneratorSpec> generator;
  std::optional<std::vector<double>> weights;
  /// Sorted and unique.
  std::vector<Pair> pairs;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

struct SpaceFile {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<ComponentSpec> components;

  friend bool operator==(const SpaceFile&, const SpaceFile&) = default;
};

/// Throws ParseError carrying the 1-based line number.
SpaceFile parse_space_file(std::istream& in);
SpaceFile parse_space_file(const std::string& text);
SpaceFile load_space_file(const std::string& path);

/// Canonical text; weights use the shortest representation that reads back exactly.
std::string serialize(const SpaceFile& file);
void save_space_file(const SpaceFile& file, const std::string& path);

struct WeightedSpace {
  SpacePtr space;
  Relation relation;
  /// One per component, in order.
  std::vector<WeightedComponent> weights;
};

/// Expands generators and validates pairs and weights.
WeightedSpace realize(const SpaceFile& file);

}  // namespace coarsebox
