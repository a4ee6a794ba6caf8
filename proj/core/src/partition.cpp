#include "fraxterp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraxterp/errors.hpp"

namespace fraxterp {

namespace {

struct UnitSpan {
  double lo, hi;
};

UnitSpan unit_span_of(const Ambient& amb, const Interval& iv) {
  return {amb.to_unit(iv.lo), amb.to_unit(iv.hi)};
}

double unit_distance(const UnitSpan& s, double u) {
  if (u < s.lo) return s.lo - u;
  if (u > s.hi) return u - s.hi;
  return 0.0;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw StructuralError(msg);
}

}  // namespace

std::string PieceId::str() const {
  std::ostringstream oss;
  oss << (kind == PieceKind::Bounded ? "BOUNDED#" : "UNBOUNDED#") << index;
  return oss.str();
}

PartitionScheme PartitionScheme::make(Ambient ambient, bool compactified,
                                      std::optional<Interval> core, std::vector<Piece> bounded,
                                      std::vector<Piece> unbounded,
                                      std::vector<int> permutation) {
  PartitionScheme s(ambient, compactified);
  s.core_ = std::move(core);
  s.bounded_ = std::move(bounded);
  s.unbounded_ = std::move(unbounded);

  const size_t n = s.unbounded_.size();
  if (permutation.empty())
    for (size_t i = 1; i <= n; ++i) permutation.push_back(static_cast<int>(i));
  require(permutation.size() == n, "scheme: permutation size must match unbounded piece count");
  {
    std::vector<int> sorted = permutation;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < n; ++i)
      require(sorted[i] == static_cast<int>(i) + 1, "scheme: not a permutation of 1..n");
  }
  s.pi_ = std::move(permutation);

  switch (ambient.kind()) {
    case AmbientKind::CompactInterval:
      require(s.core_.has_value() && s.core_->lo == ambient.extent().lo &&
                  s.core_->hi == ambient.extent().hi,
              "scheme: compact ambient requires the core to equal the whole interval");
      require(s.unbounded_.empty(), "scheme: compact ambient admits no unbounded pieces");
      require(!s.bounded_.empty(), "scheme: compact ambient needs bounded pieces");
      break;
    case AmbientKind::HalfLine:
    case AmbientKind::RealLine:
      if (s.core_) {
        require(s.core_->lo.is_finite() && s.core_->hi.is_finite(),
                "scheme: core must be compact");
        if (ambient.kind() == AmbientKind::HalfLine)
          require(s.core_->lo == ambient.extent().lo,
                  "scheme: half-line core must start at 0, or its complement has a bounded part");
        require(!s.bounded_.empty(), "scheme: nonempty core needs bounded pieces");
        require(static_cast<int>(n) == ambient.unbounded_component_count(),
                "scheme: one unbounded piece per unbounded component");
      } else {
        require(s.bounded_.empty(), "scheme: empty core admits no bounded pieces");
        require(!s.unbounded_.empty(), "scheme: empty core needs unbounded pieces");
        for (size_t i = 0; i < n; ++i)
          require(s.pi_[i] == static_cast<int>(i) + 1,
                  "scheme: empty core requires the identity permutation");
      }
      break;
  }

  auto check_piece = [&](const Piece& p, bool is_bounded, size_t idx) {
    std::ostringstream label;
    label << (is_bounded ? "bounded" : "unbounded") << " piece " << (idx + 1);
    require(p.map.domain() == p.domain,
            "scheme: " + label.str() + ": map domain does not equal the declared piece");
    if (is_bounded) {
      require(!p.domain.has_end_marker() && !p.image().has_end_marker(),
              "scheme: " + label.str() + ": bounded pieces must be compact");
    } else {
      require(p.domain.has_end_marker(),
              "scheme: " + label.str() + ": unbounded pieces need an unbounded domain");
    }
    if (!compactified) {
      auto open_at_markers = [](const Interval& iv) {
        return (!iv.lo.is_end_marker() || !iv.closed_lo) &&
               (!iv.hi.is_end_marker() || !iv.closed_hi);
      };
      require(open_at_markers(p.domain) && open_at_markers(p.image()),
              "scheme: " + label.str() +
                  ": end markers may be closed endpoints only in compactified schemes");
    }
  };
  for (size_t i = 0; i < s.bounded_.size(); ++i) check_piece(s.bounded_[i], true, i);
  for (size_t i = 0; i < s.unbounded_.size(); ++i) check_piece(s.unbounded_[i], false, i);

  return s;
}

const Piece& PartitionScheme::piece(const PieceId& id) const {
  const auto& family = id.kind == PieceKind::Bounded ? bounded_ : unbounded_;
  if (id.index < 1 || id.index > static_cast<int>(family.size()))
    throw StructuralError("scheme: no piece " + id.str());
  return family[id.index - 1];
}

std::vector<Interval> PartitionScheme::complement_components() const {
  if (!core_) return {};
  std::vector<Interval> out;
  switch (ambient_.kind()) {
    case AmbientKind::CompactInterval:
      break;
    case AmbientKind::HalfLine:
      out.push_back(Interval::make(core_->hi, ExtendedPoint::plus_inf(), false, true));
      break;
    case AmbientKind::RealLine:
      out.push_back(Interval::make(ExtendedPoint::minus_inf(), core_->lo, true, false));
      out.push_back(Interval::make(core_->hi, ExtendedPoint::plus_inf(), false, true));
      break;
  }
  return out;
}

ValidationReport validate_partition(const PartitionScheme& scheme, int resolution) {
  if (resolution < 2) throw StructuralError("validate_partition: resolution must be >= 2");
  ValidationReport report;
  const Ambient& amb = scheme.ambient();
  auto flag = [&](const std::string& cond, double witness, const std::string& desc) {
    report.ok = false;
    report.violations.push_back({cond, witness, desc});
  };

  // Per-piece map sanity at the requested resolution.
  auto probe_piece = [&](const Piece& p, const std::string& label) {
    MapReport mr = verify_homeomorphism(p.map, resolution);
    for (const MapCheck& c : mr.checks)
      if (!c.ok)
        flag("map_" + c.condition, amb.to_unit(p.domain.lo), label + ": " + c.detail);
  };
  for (size_t i = 0; i < scheme.bounded().size(); ++i) {
    std::ostringstream l;
    l << "bounded piece " << i + 1;
    probe_piece(scheme.bounded()[i], l.str());
  }
  for (size_t i = 0; i < scheme.unbounded().size(); ++i) {
    std::ostringstream l;
    l << "unbounded piece " << i + 1;
    probe_piece(scheme.unbounded()[i], l.str());
  }

  auto family_spans = [&](const std::vector<Piece>& family) {
    std::vector<UnitSpan> spans;
    for (const Piece& p : family) spans.push_back(unit_span_of(amb, p.image()));
    return spans;
  };

  // Probe-based covering of a target span by a family of image spans.
  auto check_cover = [&](const std::vector<UnitSpan>& spans, const UnitSpan& target,
                         const std::string& what) {
    for (int i = 0; i <= resolution; ++i) {
      double u = target.lo + (target.hi - target.lo) * i / resolution;
      double best = 1e300;
      for (const UnitSpan& s : spans) best = std::min(best, unit_distance(s, u));
      if (best > kPartitionTolerance) {
        std::ostringstream oss;
        oss << what << ": point at unit coordinate " << u << " lies " << best
            << " away from every image";
        flag("cover_gap", u, oss.str());
        return;
      }
    }
  };

  // Pairwise interior overlap; independent of resolution.
  auto check_disjoint = [&](const std::vector<UnitSpan>& spans, const std::string& what) {
    for (size_t i = 0; i < spans.size(); ++i)
      for (size_t j = i + 1; j < spans.size(); ++j) {
        double lo = std::max(spans[i].lo, spans[j].lo);
        double hi = std::min(spans[i].hi, spans[j].hi);
        if (hi - lo > kPartitionTolerance) {
          std::ostringstream oss;
          oss << what << ": images " << i + 1 << " and " << j + 1
              << " overlap on a set of unit width " << hi - lo;
          flag("interior_overlap", 0.5 * (lo + hi), oss.str());
        }
      }
  };

  // Containment of an image inside a target span.
  auto check_inside = [&](const UnitSpan& img, const UnitSpan& target, const std::string& what) {
    if (img.lo < target.lo - kPartitionTolerance || img.hi > target.hi + kPartitionTolerance) {
      std::ostringstream oss;
      oss << what << ": image escapes its target region";
      flag("image_escapes_target", img.lo, oss.str());
    }
  };

  const auto& core = scheme.core();
  std::vector<UnitSpan> bspans = family_spans(scheme.bounded());
  std::vector<UnitSpan> uspans = family_spans(scheme.unbounded());

  if (core) {
    UnitSpan core_span = unit_span_of(amb, *core);
    for (size_t i = 0; i < bspans.size(); ++i) {
      std::ostringstream l;
      l << "bounded image " << i + 1;
      check_inside(bspans[i], core_span, l.str());
    }
    check_cover(bspans, core_span, "core cover");
    check_disjoint(bspans, "core tiling");

    std::vector<Interval> comps = scheme.complement_components();
    std::vector<UnitSpan> comp_spans;
    for (const Interval& c : comps) comp_spans.push_back(unit_span_of(amb, c));
    for (size_t i = 0; i < uspans.size(); ++i) {
      int target = scheme.permutation()[i] - 1;
      std::ostringstream l;
      l << "unbounded image " << i + 1 << " vs component " << target + 1;
      check_inside(uspans[i], comp_spans[target], l.str());
    }
    for (size_t c = 0; c < comp_spans.size(); ++c) {
      std::vector<UnitSpan> owners;
      for (size_t i = 0; i < uspans.size(); ++i)
        if (scheme.permutation()[i] - 1 == static_cast<int>(c)) owners.push_back(uspans[i]);
      std::ostringstream l;
      l << "complement component " << c + 1 << " cover";
      check_cover(owners, comp_spans[c], l.str());
    }
    check_disjoint(uspans, "complement tiling");
  } else {
    UnitSpan whole = unit_span_of(amb, amb.extent());
    check_cover(uspans, whole, "domain cover");
    check_disjoint(uspans, "domain tiling");
  }

  // Compactified lengths of all images must sum to the ambient length.
  {
    double total = 0.0;
    for (const UnitSpan& s : bspans) total += s.hi - s.lo;
    for (const UnitSpan& s : uspans) total += s.hi - s.lo;
    double want = amb.unit_span();
    if (std::fabs(total - want) > 1e-9 * (1.0 + std::fabs(want)) &&
        report.ok /* overlap/gap already explains a mismatch */) {
      std::ostringstream oss;
      oss << "image unit lengths sum to " << total << ", ambient has " << want;
      flag("length_mismatch", 0.0, oss.str());
    }
  }

  return report;
}

PieceId locate(const PartitionScheme& scheme, const ExtendedPoint& x) {
  const Ambient& amb = scheme.ambient();
  if (!amb.extent().closure_contains(x)) {
    std::ostringstream oss;
    oss << "locate: " << x << " outside the ambient domain";
    throw UnlocatableError(oss.str());
  }

  // Exact pass honoring the closure flags of each image.
  for (size_t i = 0; i < scheme.bounded().size(); ++i)
    if (scheme.bounded()[i].image().contains(x))
      return {PieceKind::Bounded, static_cast<int>(i) + 1};
  for (size_t i = 0; i < scheme.unbounded().size(); ++i)
    if (scheme.unbounded()[i].image().contains(x))
      return {PieceKind::Unbounded, static_cast<int>(i) + 1};

  // Tolerance pass in unit coordinates.
  double u = amb.to_unit(x);
  for (size_t i = 0; i < scheme.bounded().size(); ++i)
    if (unit_distance(unit_span_of(amb, scheme.bounded()[i].image()), u) <= kPartitionTolerance)
      return {PieceKind::Bounded, static_cast<int>(i) + 1};
  for (size_t i = 0; i < scheme.unbounded().size(); ++i)
    if (unit_distance(unit_span_of(amb, scheme.unbounded()[i].image()), u) <= kPartitionTolerance)
      return {PieceKind::Unbounded, static_cast<int>(i) + 1};

  std::ostringstream oss;
  oss << "locate: " << x << " (unit " << u << ") lies outside every piece image";
  throw UnlocatableError(oss.str());
}

}  // namespace fraxterp
