#pragma once

/**
 * @file measure_space.hpp
 * @brief Discrete weighted measure spaces, self-maps with preimage fibers,
 *        and weight functions.
 *
 * A space is a finite set of atoms {0, ..., n-1} with strictly positive
 * masses m_j. Because every atom carries positive mass, "almost everywhere"
 * means "at every point" and every self-map is automatically non-singular.
 */

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wco {

using Index = std::size_t;

/// Raised for malformed or invalid user input (exit code 1 in the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (exit code 2 in the CLI).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DiscreteMeasureSpace {
 public:
  /// Throws InputError if empty or if any mass is not strictly positive.
  explicit DiscreteMeasureSpace(std::vector<double> masses);

  static DiscreteMeasureSpace unit(Index n);

  Index size() const noexcept { return masses_.size(); }
  double mass(Index j) const { return masses_.at(j); }
  const std::vector<double>& masses() const noexcept { return masses_; }
  double total_mass() const noexcept;

 private:
  std::vector<double> masses_;
};

/// A total self-map phi on {0..n-1} together with its preimage fibers.
class Transformation {
 public:
  /// Throws InputError if any entry is outside 0..n-1.
  explicit Transformation(std::vector<Index> map);

  static Transformation identity(Index n);

  Index size() const noexcept { return map_.size(); }
  Index operator()(Index j) const { return map_.at(j); }
  const std::vector<Index>& map() const noexcept { return map_; }

  /// Preimage phi^{-1}({k}), in increasing index order.
  const std::vector<Index>& fiber(Index k) const { return fibers_.at(k); }
  const std::vector<std::vector<Index>>& fibers() const noexcept {
    return fibers_;
  }

  bool is_permutation() const noexcept;

  /// (this ∘ other)(j) = this(other(j)).
  Transformation after(const Transformation& other) const;

  friend bool operator==(const Transformation& a, const Transformation& b) {
    return a.map_ == b.map_;
  }

 private:
  std::vector<Index> map_;
  std::vector<std::vector<Index>> fibers_;
};

class WeightFunction {
 public:
  /// Throws InputError on negative or non-finite entries.
  explicit WeightFunction(std::vector<double> values);

  static WeightFunction constant(Index n, double c);

  Index size() const noexcept { return values_.size(); }
  double operator()(Index j) const { return values_.at(j); }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Subset of the point set, stored as a membership mask.
class PointSet {
 public:
  explicit PointSet(std::vector<bool> membership)
      : membership_(std::move(membership)) {}
  static PointSet empty(Index n) { return PointSet(std::vector<bool>(n)); }
  static PointSet all(Index n) { return PointSet(std::vector<bool>(n, true)); }

  Index universe_size() const noexcept { return membership_.size(); }
  bool contains(Index j) const { return membership_.at(j); }
  void insert(Index j) { membership_.at(j) = true; }
  bool is_empty() const noexcept;
  Index count() const noexcept;
  std::vector<Index> members() const;
  double measure(const DiscreteMeasureSpace& space) const;

  const std::vector<bool>& membership() const noexcept { return membership_; }

  PointSet united(const PointSet& other) const;
  bool is_subset_of(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet& a, const PointSet& b) {
    return a.membership_ <=> b.membership_;
  }

 private:
  std::vector<bool> membership_;
};

/// The (space, phi, u) triple defining W = M_u C_phi.
struct WeightedSystem {
  DiscreteMeasureSpace space;
  Transformation phi;
  WeightFunction u;
  /// Points flagged by the user as truncation boundary (fibers may extend
  /// past the finite window). Reported, never used in computation.
  std::vector<Index> boundary{};

  WeightedSystem(DiscreteMeasureSpace s, Transformation t, WeightFunction w,
                 std::vector<Index> boundary_points = {});

  Index size() const noexcept { return space.size(); }
};

/// Decimal literal text of every numeric entry, kept so that an exact
/// rational path can reconstruct the inputs without rounding.
struct SystemLiterals {
  std::vector<std::string> masses;
  std::vector<std::string> u;
};

struct LoadedSystem {
  WeightedSystem system;
  SystemLiterals literals;
};

/**
 * Parses {"masses": [...], "phi": [...], "u": [...]} with an optional
 * "boundary": [...] list. Throws InputError with position context on
 * malformed text, and on length mismatch, non-positive mass, phi out of
 * range or negative u.
 */
LoadedSystem load_space(std::string_view document);
LoadedSystem load_space_file(const std::string& path);

/// phi^n; n = 0 gives the identity.
Transformation iterate_map(const Transformation& phi, unsigned n);

/// phi^{-1}(S).
PointSet preimage(const Transformation& phi, const PointSet& s);

bool is_backward_invariant(const Transformation& phi, const PointSet& s);

/// Smallest backward-invariant set containing j: every point whose forward
/// orbit reaches j.
PointSet backward_closure(const Transformation& phi, Index j);

struct BackwardInvariantFamily {
  std::vector<PointSet> sets;  ///< distinct, sorted by (size, mask)
  bool truncated = false;      ///< cap reached before enumeration finished
};

/**
 * Enumerates nonempty sets S with phi^{-1}(S) ⊆ S. Every such set is a
 * union of backward closures of single points, so the family is generated
 * from those closures by repeated union. Stops once `cap` sets are found.
 */
BackwardInvariantFamily backward_invariant_sets(const Transformation& phi,
                                                std::size_t cap = 4096);

}  // namespace wco
