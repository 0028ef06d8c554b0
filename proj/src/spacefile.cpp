#include "coarsebox/spacefile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coarsebox/generators.hpp"

namespace coarsebox {

namespace {

constexpr const char* kFormatTag = "coarse-space";
constexpr int kFormatVersion = 1;
constexpr std::size_t kPairsPerLine = 8;

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <class T>
T parse_number(const std::string& tok, std::size_t line, const char* what) {
  T value{};
  const char* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string rest_after(const std::string& line, std::size_t words) {
  std::size_t pos = 0;
  for (std::size_t w = 0; w < words; ++w) {
    pos = line.find_first_not_of(" \t", pos);
    pos = line.find_first_of(" \t", pos);
    if (pos == std::string::npos) return {};
  }
  pos = line.find_first_not_of(" \t", pos);
  if (pos == std::string::npos) return {};
  const std::size_t last = line.find_last_not_of(" \t\r");
  return line.substr(pos, last - pos + 1);
}

}  // namespace

SpaceFile parse_space_file(std::istream& in) {
  SpaceFile file;
  bool have_format = false;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::vector<std::string> tok = split(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    const std::string& key = tok[0];

    if (!have_format) {
      if (key != "format" || tok.size() != 3 || tok[1] != kFormatTag) {
        throw ParseError(lineno, std::string("expected 'format ") + kFormatTag + " " +
                                     std::to_string(kFormatVersion) + "'");
      }
      if (parse_number<int>(tok[2], lineno, "format version") != kFormatVersion) {
        throw ParseError(lineno, "unsupported format version " + tok[2]);
      }
      have_format = true;
      continue;
    }

    if (key == "meta") {
      if (tok.size() < 2) throw ParseError(lineno, "meta needs a key");
      file.meta.emplace_back(tok[1], rest_after(line, 2));
      continue;
    }
    if (key == "component") {
      if (tok.size() != 2) throw ParseError(lineno, "component takes exactly one size");
      const Index size = parse_number<Index>(tok[1], lineno, "component size");
      if (size == 0) throw ParseError(lineno, "component size must be positive");
      file.components.push_back(ComponentSpec{size, std::nullopt, std::nullopt, {}});
      continue;
    }
    if (key != "generator" && key != "weights" && key != "pairs") {
      throw ParseError(lineno, "unknown keyword '" + key + "'");
    }
    if (file.components.empty()) throw ParseError(lineno, "'" + key + "' before any component");
    ComponentSpec& comp = file.components.back();

    if (key == "generator") {
      if (tok.size() < 2) throw ParseError(lineno, "generator needs a name");
      if (comp.generator) throw ParseError(lineno, "component already has a generator");
      GeneratorSpec spec{tok[1], {tok.begin() + 2, tok.end()}};
      try {
        const Index need = generator_size(spec);
        if (need != 0 && need != comp.size) {
          throw ParseError(lineno, "generator '" + spec.name + "' needs " + std::to_string(need) +
                                       " points, component has " + std::to_string(comp.size));
        }
        generator_pairs(spec, comp.size);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      comp.generator = std::move(spec);
    } else if (key == "weights") {
      if (comp.weights) throw ParseError(lineno, "component already has weights");
      if (tok.size() - 1 != comp.size) {
        throw ParseError(lineno, "expected " + std::to_string(comp.size) + " weights, got " +
                                     std::to_string(tok.size() - 1));
      }
      std::vector<double> w;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const double v = parse_number<double>(tok[i], lineno, "weight");
        if (!(v > 0.0) || !std::isfinite(v)) throw ParseError(lineno, "weights must be positive and finite");
        w.push_back(v);
      }
      comp.weights = std::move(w);
    } else {
      if ((tok.size() - 1) % 2 != 0) throw ParseError(lineno, "pairs need an even number of indices");
      for (std::size_t i = 1; i < tok.size(); i += 2) {
        const Index x = parse_number<Index>(tok[i], lineno, "point index");
        const Index y = parse_number<Index>(tok[i + 1], lineno, "point index");
        if (x >= comp.size || y >= comp.size) {
          throw ParseError(lineno, "pair (" + tok[i] + ", " + tok[i + 1] + ") outside a component of size " +
                                       std::to_string(comp.size));
        }
        comp.pairs.push_back({x, y});
      }
    }
  }
  if (!have_format) throw ParseError(lineno + 1, "missing format line");
  if (file.components.empty()) throw ParseError(lineno + 1, "no components");
  for (ComponentSpec& comp : file.components) {
    std::sort(comp.pairs.begin(), comp.pairs.end());
    comp.pairs.erase(std::unique(comp.pairs.begin(), comp.pairs.end()), comp.pairs.end());
  }
  return file;
}

SpaceFile parse_space_file(const std::string& text) {
  std::istringstream in(text);
  return parse_space_file(in);
}

SpaceFile load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open space file '" + path + "'");
  return parse_space_file(in);
}

std::string serialize(const SpaceFile& file) {
  std::string out = std::string("format ") + kFormatTag + " " + std::to_string(kFormatVersion) + "\n";
  for (const auto& [key, value] : file.meta) {
    out += "meta " + key;
    if (!value.empty()) out += " " + value;
    out += "\n";
  }
  for (const ComponentSpec& comp : file.components) {
    out += "component " + std::to_string(comp.size) + "\n";
    if (comp.generator) {
      out += "generator " + comp.generator->name;
      for (const std::string& a : comp.generator->args) out += " " + a;
      out += "\n";
    }
    if (comp.weights) {
      out += "weights";
      for (double v : *comp.weights) out += " " + format_double(v);
      out += "\n";
    }
    for (std::size_t i = 0; i < comp.pairs.size(); i += kPairsPerLine) {
      out += "pairs";
      const std::size_t end = std::min(comp.pairs.size(), i + kPairsPerLine);
      for (std::size_t k = i; k < end; ++k) {
        out += " " + std::to_string(comp.pairs[k].x) + " " + std::to_string(comp.pairs[k].y);
      }
      out += "\n";
    }
  }
  return out;
}

void save_space_file(const SpaceFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write space file '" + path + "'");
  out << serialize(file);
  if (!out) throw Error("failed writing space file '" + path + "'");
}

WeightedSpace realize(const SpaceFile& file) {
  std::vector<Index> sizes;
  for (const ComponentSpec& comp : file.components) sizes.push_back(comp.size);
  SpacePtr space = make_space(std::move(sizes));

  std::vector<std::vector<Pair>> pairs(file.components.size());
  std::vector<WeightedComponent> weights;
  for (std::size_t c = 0; c < file.components.size(); ++c) {
    const ComponentSpec& comp = file.components[c];
    if (comp.generator) pairs[c] = generator_pairs(*comp.generator, comp.size);
    pairs[c].insert(pairs[c].end(), comp.pairs.begin(), comp.pairs.end());
    const Index ci = static_cast<Index>(c);
    weights.push_back(comp.weights ? WeightedComponent::normalized(ci, *comp.weights)
                                   : WeightedComponent::uniform(ci, comp.size));
  }
  return {space, Relation(space, std::move(pairs)), std::move(weights)};
}

}  // namespace coarsebox
