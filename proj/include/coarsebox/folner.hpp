#pragma once

// Functions on pair space, the measures w o c_s and w o c^t, label translations,
// the L^1 invariance defect, and Folner sets extracted from level sets.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsebox/boxspace.hpp"
#include "coarsebox/label.hpp"

namespace coarsebox {

struct PairValue {
  Index x = 0;
  Index y = 0;
  double value = 0.0;
};

/// A finitely supported real function on pairs inside components. Entries are
/// sorted by (x, y), unique, and nonzero.
class PairFunction {
 public:
  PairFunction() = default;
  explicit PairFunction(SpacePtr space);
  /// Duplicates are summed, exact zeros dropped; values must be finite.
  PairFunction(SpacePtr space, std::vector<std::vector<PairValue>> entries);

  /// `value` on every pair of `r`.
  static PairFunction indicator(const Relation& r, double value = 1.0);

  const SpacePtr& space() const { return space_; }
  std::size_t num_components() const { return entries_.size(); }
  std::span<const PairValue> entries(std::size_t component) const { return entries_.at(component); }
  double at(std::size_t component, Index x, Index y) const;
  Relation support() const;
  bool is_zero(std::size_t component) const { return entries_.at(component).empty(); }

  friend bool operator==(const PairFunction& a, const PairFunction& b);

 private:
  SpacePtr space_;
  std::vector<std::vector<PairValue>> entries_;
};

/// Pointwise max(a - b, 0).
PairFunction positive_part_of_difference(const PairFunction& a, const PairFunction& b);
PairFunction scale(const PairFunction& f, double factor);

/// Sum over pairs (x, y) in the weight's component of w(y), resp. eta(x, y) w(y).
double measure_cs(const Relation& z, const WeightedComponent& w);
double measure_cs(const PairFunction& eta, const WeightedComponent& w);
/// Sum over pairs (x, y) in the weight's component of w(x), resp. eta(x, y) w(x).
double measure_ct(const Relation& z, const WeightedComponent& w);
double measure_ct(const PairFunction& eta, const WeightedComponent& w);

/// The value at (phi(z), y) is eta(z, y); rows outside the image of phi vanish.
/// Throws unless phi is a partial bijection.
PairFunction translate(const PairFunction& eta, const Relation& phi);

/// translate followed by multiplication with w(phi(z)) / w(z) at (phi(z), y).
/// `weights` has one entry per component of the space, in order.
PairFunction modified_translate(const PairFunction& eta, const Relation& phi,
                                const std::vector<WeightedComponent>& weights);

/// Sum over the non-diagonal classes j of measure_ct((translate(eta, phi_j) - eta)_+, w).
double invariance_defect(const PairFunction& eta, const Label& label, const WeightedComponent& w);

/// Layer-cake integral: sum over the sorted distinct positive values v_i of eta of
/// (v_i - v_{i-1}) * measure_ct((T o F(v_i)) \ F(v_i), w), where F(r) = {eta >= r}
/// and v_0 = 0. Computed from relations alone.
double level_set_boundary_integral(const PairFunction& eta, const Relation& t, const WeightedComponent& w);

/// F(r) = {(x, y) : eta(x, y) >= r}.
Relation level_set(const PairFunction& eta, double r);

struct ComponentFolner {
  std::size_t component = 0;
  /// False when eta vanishes on the component.
  bool scanned = false;
  bool success = false;
  /// The chosen threshold on success; on failure the threshold of the best ratio.
  double threshold = 0.0;
  double mass_f = 0.0;
  double mass_tf = 0.0;
  double ratio() const { return mass_f > 0.0 ? mass_tf / mass_f : 0.0; }
  std::size_t thresholds_scanned = 0;
};

struct FolnerResult {
  /// Union of the chosen level sets over the successful components.
  Relation f;
  double epsilon = 0.0;
  std::vector<ComponentFolner> per_component;

  /// Every scanned component succeeded and at least one was scanned.
  bool certified() const;
};

/// For each component carrying a weight, scans the distinct positive values r of
/// eta and keeps the largest-mass level set F(r) with
/// measure_ct(T o F(r)) < (1 + eps) measure_ct(F(r)). The chosen set is re-verified
/// by composing relations from scratch.
FolnerResult extract_folner(const PairFunction& eta, const Relation& t, double eps,
                            const std::vector<WeightedComponent>& weights);

enum class Kernel { tent, heat };
std::string to_string(Kernel kernel);
Kernel parse_kernel(const std::string& text);

/// eta(x, y) = radius + 1 - dist(x, y) for dist <= radius, where dist is the path
/// distance of T u T^-1.
PairFunction tent_kernel(const Relation& t, std::size_t component, unsigned radius);

/// M^steps applied to the diagonal indicator, with M the average of translation by
/// every signed label class.
PairFunction heat_kernel(const Label& label, std::size_t component, unsigned steps);

struct RadiusAttempt {
  unsigned radius = 0;
  ComponentFolner outcome;
};

struct FolnerSearch {
  std::vector<RadiusAttempt> attempts;
  /// Set to the first radius whose level sets certify.
  std::optional<FolnerResult> certificate;
  unsigned certified_radius = 0;
  /// Smallest ratio over all attempts (for failure reports).
  double best_ratio = 0.0;
};

/// Tries radii min_radius..max_radius in increasing order and stops at the first success.
FolnerSearch folner_search(std::size_t component, const Relation& t, const Label& label, double eps,
                           const WeightedComponent& w, Kernel kernel, unsigned min_radius, unsigned max_radius);

}  // namespace coarsebox
