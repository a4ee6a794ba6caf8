#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraxterp/ambient.hpp"
#include "fraxterp/maps.hpp"

namespace fraxterp {

enum class PieceKind { Bounded, Unbounded };

/// Identifies one piece of a partition scheme.  Bounded sorts before
/// unbounded; indices are 1-based within each family.
struct PieceId {
  PieceKind kind = PieceKind::Bounded;
  int index = 1;

  friend bool operator==(const PieceId& a, const PieceId& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  friend bool operator<(const PieceId& a, const PieceId& b) {
    if (a.kind != b.kind) return a.kind == PieceKind::Bounded;
    return a.index < b.index;
  }
  std::string str() const;
};

struct Piece {
  Interval domain;        // where the map's argument lives
  Homeomorphism1D map;    // maps domain onto its image
  const Interval& image() const { return map.codomain(); }
};

struct Violation {
  std::string condition;   // e.g. "cover_gap", "interior_overlap"
  double witness_unit;     // location in unit coordinates
  std::string description;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/**
 * A covering of the ambient domain by homeomorphic images: bounded pieces
 * tile the compact core K, unbounded pieces tile its complement.  When K is
 * empty there are no bounded pieces and the unbounded family tiles the whole
 * space.  All tolerance geometry happens in unit coordinates (1e-9).
 */
class PartitionScheme {
 public:
  static PartitionScheme make(Ambient ambient, bool compactified,
                              std::optional<Interval> core,
                              std::vector<Piece> bounded, std::vector<Piece> unbounded,
                              std::vector<int> permutation = {});

  const Ambient& ambient() const { return ambient_; }
  bool compactified() const { return compactified_; }
  const std::optional<Interval>& core() const { return core_; }
  const std::vector<Piece>& bounded() const { return bounded_; }
  const std::vector<Piece>& unbounded() const { return unbounded_; }
  const std::vector<int>& permutation() const { return pi_; }

  const Piece& piece(const PieceId& id) const;
  int piece_count() const { return static_cast<int>(bounded_.size() + unbounded_.size()); }

  /// Unbounded components of the complement of K, ordered left to right.
  std::vector<Interval> complement_components() const;

 private:
  PartitionScheme(Ambient a, bool c) : ambient_(a), compactified_(c) {}
  Ambient ambient_;
  bool compactified_;
  std::optional<Interval> core_;
  std::vector<Piece> bounded_;
  std::vector<Piece> unbounded_;
  std::vector<int> pi_;
};

/// Probes covering and interior disjointness of the piece images at the
/// given resolution.  Violations found at resolution r stay found at 2r.
ValidationReport validate_partition(const PartitionScheme& scheme, int resolution);

/// The piece whose image contains x; at shared boundaries the lowest
/// (kind, index) among the pieces that contain x wins.  Throws
/// UnlocatableError when x is farther than tolerance from every image.
PieceId locate(const PartitionScheme& scheme, const ExtendedPoint& x);

constexpr double kPartitionTolerance = 1e-9;  // in unit coordinates

}  // namespace fraxterp
