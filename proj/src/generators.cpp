#include "coarsebox/generators.hpp"

#include <algorithm>
#include <charconv>
#include <random>

namespace coarsebox {

namespace {

Index parse_side(const GeneratorSpec& spec) {
  if (spec.args.size() != 1) throw Error("generator '" + spec.name + "' takes one side length");
  Index side = 0;
  const std::string& a = spec.args[0];
  const auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), side);
  if (ec != std::errc() || ptr != a.data() + a.size()) throw Error("invalid side length '" + a + "'");
  return side;
}

void no_args(const GeneratorSpec& spec) {
  if (!spec.args.empty()) throw Error("generator '" + spec.name + "' takes no arguments");
}

void add_edge(std::vector<Pair>& out, Index a, Index b) {
  out.push_back({a, b});
  out.push_back({b, a});
}

void finish(std::vector<Pair>& out, Index n) {
  for (Index i = 0; i < n; ++i) out.push_back({i, i});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

// Uniform draw in [0, bound) by rejection, independent of the standard library's
// distribution implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::vector<Pair> random_regular_pairs(unsigned degree, Index n, std::mt19937_64& rng) {
  constexpr int kMaxAttempts = 100000;
  std::vector<Index> stubs;
  std::vector<char> adjacent(std::size_t{n} * n);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    stubs.clear();
    for (Index v = 0; v < n; ++v) stubs.insert(stubs.end(), degree, v);
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[draw_below(rng, i)]);
    std::fill(adjacent.begin(), adjacent.end(), 0);
    bool simple = true;
    for (std::size_t i = 0; simple && i < stubs.size(); i += 2) {
      const Index a = stubs[i], b = stubs[i + 1];
      char& seen = adjacent[std::size_t{a} * n + b];
      if (a == b || seen) simple = false;
      seen = 1;
      adjacent[std::size_t{b} * n + a] = 1;
    }
    if (!simple) continue;
    std::vector<Pair> out;
    for (std::size_t i = 0; i < stubs.size(); i += 2) add_edge(out, stubs[i], stubs[i + 1]);
    finish(out, n);
    return out;
  }
  throw Error("no simple " + std::to_string(degree) + "-regular graph on " + std::to_string(n) +
              " points found by the pairing model");
}

}  // namespace

Index generator_size(const GeneratorSpec& spec) {
  if (spec.name == "torus" || spec.name == "margulis") {
    const Index side = parse_side(spec);
    return side * side;
  }
  return 0;
}

std::vector<Pair> generator_pairs(const GeneratorSpec& spec, Index n) {
  std::vector<Pair> out;
  if (spec.name == "cycle") {
    no_args(spec);
    if (n < 3) throw Error("cycle needs at least 3 points");
    for (Index i = 0; i < n; ++i) add_edge(out, i, (i + 1) % n);
  } else if (spec.name == "path") {
    no_args(spec);
    for (Index i = 0; i + 1 < n; ++i) add_edge(out, i, i + 1);
  } else if (spec.name == "complete") {
    no_args(spec);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) out.push_back({a, b});
    }
  } else if (spec.name == "torus") {
    const Index s = parse_side(spec);
    if (s < 3) throw Error("torus needs side at least 3");
    if (s * s != n) throw Error("torus of side " + std::to_string(s) + " needs " + std::to_string(s * s) + " points");
    for (Index i = 0; i < s; ++i) {
      for (Index j = 0; j < s; ++j) {
        const Index p = i * s + j;
        add_edge(out, p, ((i + 1) % s) * s + j);
        add_edge(out, p, i * s + (j + 1) % s);
      }
    }
  } else if (spec.name == "margulis") {
    const Index s = parse_side(spec);
    if (s < 2) throw Error("margulis needs side at least 2");
    if (s * s != n) {
      throw Error("margulis of side " + std::to_string(s) + " needs " + std::to_string(s * s) + " points");
    }
    // Each forward map is paired with its inverse, so adding both orientations of
    // the forward images covers all eight maps.
    for (Index x = 0; x < s; ++x) {
      for (Index y = 0; y < s; ++y) {
        const Index p = x * s + y;
        add_edge(out, p, ((x + 2 * y) % s) * s + y);
        add_edge(out, p, ((x + 2 * y + 1) % s) * s + y);
        add_edge(out, p, x * s + (y + 2 * x) % s);
        add_edge(out, p, x * s + (y + 2 * x + 1) % s);
      }
    }
  } else {
    throw Error("unknown generator '" + spec.name + "'");
  }
  finish(out, n);
  return out;
}

SpaceFile gen_cycles(std::span<const Index> sizes) {
  SpaceFile f;
  f.meta.emplace_back("family", "cycles");
  for (Index n : sizes) {
    if (n < 3) throw Error("cycle sizes must be at least 3");
    f.components.push_back({n, GeneratorSpec{"cycle", {}}, std::nullopt, {}});
  }
  return f;
}

SpaceFile gen_torus(std::span<const Index> sides) {
  SpaceFile f;
  f.meta.emplace_back("family", "torus");
  for (Index s : sides) {
    if (s < 3) throw Error("torus sides must be at least 3");
    f.components.push_back({s * s, GeneratorSpec{"torus", {std::to_string(s)}}, std::nullopt, {}});
  }
  return f;
}

SpaceFile gen_margulis(std::span<const Index> sides) {
  SpaceFile f;
  f.meta.emplace_back("family", "margulis");
  for (Index s : sides) {
    if (s < 2) throw Error("margulis sides must be at least 2");
    f.components.push_back({s * s, GeneratorSpec{"margulis", {std::to_string(s)}}, std::nullopt, {}});
  }
  return f;
}

SpaceFile gen_random_regular(unsigned degree, std::span<const Index> sizes, std::uint64_t seed) {
  SpaceFile f;
  f.meta.emplace_back("family", "random-regular");
  f.meta.emplace_back("degree", std::to_string(degree));
  f.meta.emplace_back("seed", std::to_string(seed));
  std::mt19937_64 rng(seed);
  for (Index n : sizes) {
    if (n < 3) throw Error("random regular sizes must be at least 3");
    if (degree == 0 || degree >= n) throw Error("degree must lie in [1, size)");
    if ((std::uint64_t{degree} * n) % 2 != 0) throw Error("degree times size must be even");
    f.components.push_back({n, std::nullopt, std::nullopt, random_regular_pairs(degree, n, rng)});
  }
  return f;
}

}  // namespace coarsebox
