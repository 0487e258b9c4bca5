#pragma once

// Multiplicativity of chi for fiber bundles over a compact base, checked by
// running the inclusion-exclusion argument on concrete triangulated data:
//
//   chi(E) = sum_J (-1)^{|J|+1} chi( cap_{j in J} p^-1(B_j) )
//          = sum_J (-1)^{|J|+1} chi( p^-1( cap_{j in J} B_j ) )
//          = sum_J (-1)^{|J|+1} chi( (cap B_j) x F )
//          = chi(F) * sum_J (-1)^{|J|+1} chi( cap B_j )
//          = chi(F) * chi(B)
//
// Every line is evaluated independently and recorded in the proof trace.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulercalc/cellset.hpp"
#include "eulercalc/checked.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/constructible.hpp"
#include "eulercalc/error.hpp"
#include "eulercalc/simplicial_map.hpp"

namespace eulercalc {

/// Bundle data: projection p from the total complex onto the base, a finite
/// cover of the base by cell sets, and the fiber's Euler characteristic.
class BundleSpec {
public:
  BundleSpec(SimplicialMap projection, std::vector<CellSet> cover, Count fiber_chi,
             std::optional<CellSet> fiber = std::nullopt)
      : projection_(std::move(projection)), cover_(std::move(cover)), fiber_chi_(fiber_chi),
        fiber_(std::move(fiber)) {
    if (cover_.empty()) throw DomainError("bundle cover must have at least one piece");
    if (cover_.size() > kMaxCoverSize)
      throw DomainError("cover too large for exact inclusion-exclusion");
    CellSet covered = CellSet::none(base());
    for (const auto& piece : cover_) {
      if (!same_complex(piece.ambient(), base()))
        throw DomainError("cover piece is not a cell set of the base complex");
      covered = set_union(covered, piece);
    }
    if (covered.size() != base()->size())
      throw DomainError("cover pieces do not exhaust the base complex");
    if (fiber_ && chi(*fiber_) != fiber_chi_)
      throw DomainError("fiber_chi " + std::to_string(fiber_chi_) +
                        " disagrees with the supplied fiber complex (chi = " +
                        std::to_string(chi(*fiber_)) + ")");
  }

  const ComplexPtr& total() const noexcept { return projection_.source(); }
  const ComplexPtr& base() const noexcept { return projection_.target(); }
  const SimplicialMap& projection() const noexcept { return projection_; }
  const std::vector<CellSet>& cover() const noexcept { return cover_; }
  Count fiber_chi() const noexcept { return fiber_chi_; }
  const std::optional<CellSet>& fiber() const noexcept { return fiber_; }

private:
  SimplicialMap projection_;
  std::vector<CellSet> cover_;
  Count fiber_chi_;
  std::optional<CellSet> fiber_;
};

/// One nonempty intersection of cover pieces. `subset` is 1-based.
struct TrivialityRow {
  std::vector<std::size_t> subset;
  Count chi_base_piece = 0;
  Count chi_preimage = 0;
  Count expected = 0;  ///< chi_base_piece * fiber_chi
  bool pass = false;
};

struct TrivialityReport {
  std::vector<TrivialityRow> rows;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += !r.pass;
    return n;
  }
};

class LocalTrivialityError : public DomainError {
public:
  explicit LocalTrivialityError(TrivialityReport report)
      : DomainError("local triviality fails on " + std::to_string(report.failures()) +
                    " cover intersection(s)"),
        report_(std::move(report)) {}
  const TrivialityReport& report() const noexcept { return report_; }

private:
  TrivialityReport report_;
};

namespace detail {
/// Singletons first, then pairs, and so on; lexicographic within a size.
template <class Row>
void order_by_subset(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
    return a.subset < b.subset;
  });
}
}  // namespace detail

/// chi(p^-1(A)) == chi(A) * chi(F) for every nonempty intersection A of
/// cover pieces. Failures are reported, not thrown.
inline TrivialityReport check_local_triviality_chi(const BundleSpec& spec) {
  TrivialityReport report;
  for_each_cover_intersection(
      std::span<const CellSet>(spec.cover()),
      [&](const std::vector<std::size_t>& subset, const CellSet& piece) {
        TrivialityRow row;
        for (auto j : subset) row.subset.push_back(j + 1);
        row.chi_base_piece = chi(piece);
        row.chi_preimage = chi(preimage(spec.projection(), piece));
        row.expected = checked_mul(row.chi_base_piece, spec.fiber_chi());
        row.pass = row.chi_preimage == row.expected;
        report.rows.push_back(std::move(row));
      });
  detail::order_by_subset(report.rows);
  return report;
}

/// One inclusion-exclusion term of the proof.
struct ProofRow {
  std::vector<std::size_t> subset;  ///< 1-based
  Count sign = 1;
  Count chi_base_piece = 0;          ///< chi(cap B_j)
  Count chi_preimage = 0;            ///< chi(p^-1(cap B_j))
  Count chi_preimage_intersection = 0;  ///< chi(cap p^-1(B_j))
  Count chi_product = 0;             ///< chi((cap B_j) x F)
};

/// One line of the displayed equality chain.
struct ProofStep {
  std::string formula;
  Count value = 0;
};

struct BundleProof {
  Count value = 0;  ///< chi(E) as obtained by inclusion-exclusion
  Count chi_total = 0;
  Count chi_base = 0;
  Count fiber_chi = 0;
  std::vector<ProofRow> rows;
  std::vector<ProofStep> chain;

  /// Alternating sum recomputed from the rows.
  Count recomputed_sum() const {
    Count total = 0;
    for (const auto& r : rows) total = signed_accumulate(total, r.sign, r.chi_preimage);
    return total;
  }
};

/// Replays the proof of chi(E) = chi(B) * chi(F) on the given data.
inline BundleProof bundle_chi_via_inclusion_exclusion(const BundleSpec& spec) {
  if (auto report = check_local_triviality_chi(spec); !report.all_pass())
    throw LocalTrivialityError(std::move(report));

  const auto& p = spec.projection();
  const std::span<const CellSet> cover(spec.cover());
  std::vector<CellSet> preimages;
  for (const auto& piece : cover) preimages.push_back(preimage(p, piece));

  BundleProof proof;
  proof.fiber_chi = spec.fiber_chi();
  proof.chi_total = chi(*spec.total());
  proof.chi_base = chi(*spec.base());

  Count sum_intersections = 0, sum_preimages = 0, sum_products = 0, sum_base = 0;
  for_each_cover_intersection(cover, [&](const std::vector<std::size_t>& subset,
                                         const CellSet& piece) {
    ProofRow row;
    for (auto j : subset) row.subset.push_back(j + 1);
    row.sign = parity_sign(subset.size() + 1);
    row.chi_base_piece = chi(piece);

    const CellSet upstairs = preimage(p, piece);
    CellSet meet = preimages[subset.front()];
    for (std::size_t k = 1; k < subset.size(); ++k) meet = set_intersection(meet, preimages[subset[k]]);
    if (meet != upstairs)
      throw DomainError("preimage of an intersection differs from the intersection of preimages");
    row.chi_preimage = chi(upstairs);
    row.chi_preimage_intersection = chi(meet);
    row.chi_product = spec.fiber() ? product(piece, *spec.fiber()).chi()
                                   : checked_mul(row.chi_base_piece, spec.fiber_chi());

    sum_intersections = signed_accumulate(sum_intersections, row.sign, row.chi_preimage_intersection);
    sum_preimages = signed_accumulate(sum_preimages, row.sign, row.chi_preimage);
    sum_products = signed_accumulate(sum_products, row.sign, row.chi_product);
    sum_base = signed_accumulate(sum_base, row.sign, row.chi_base_piece);
    proof.rows.push_back(std::move(row));
  });

  detail::order_by_subset(proof.rows);
  proof.value = sum_preimages;
  // The first line is the integral of 1_E over E, evaluated cell-wise.
  const Count integral = euler_integral(indicator(CellSet::all(spec.total())));
  proof.chain = {
      {"chi(E) = integral of 1_E dchi", integral},
      {"sum_J (-1)^(|J|+1) chi(cap_J p^-1(B_j))", sum_intersections},
      {"sum_J (-1)^(|J|+1) chi(p^-1(cap_J B_j))", sum_preimages},
      {"sum_J (-1)^(|J|+1) chi((cap_J B_j) x F)", sum_products},
      {"chi(F) * sum_J (-1)^(|J|+1) chi(cap_J B_j)", checked_mul(spec.fiber_chi(), sum_base)},
      {"chi(F) * chi(B)", checked_mul(spec.fiber_chi(), proof.chi_base)},
  };
  for (const auto& step : proof.chain)
    if (step.value != proof.chi_total)
      throw DomainError("inclusion-exclusion disagrees with direct chi at step \"" +
                        step.formula + "\": " + std::to_string(step.value) + " vs chi(E) = " +
                        std::to_string(proof.chi_total));
  return proof;
}

/// Ramified covering data: n sheets, chi of the base surface, and the
/// ramification indices e > 1 of the ramification points upstairs.
struct RamificationData {
  Count sheets = 1;
  Count base_chi = 0;
  std::vector<Count> indices;
};

/// chi(covering surface) = n chi(S) - sum (e - 1).
inline Count riemann_hurwitz(const RamificationData& d) {
  if (d.sheets < 1) throw DomainError("number of sheets must be positive");
  Count total = checked_mul(d.sheets, d.base_chi);
  for (Count e : d.indices) {
    if (e < 2) throw DomainError("trivial ramification index must be omitted");
    if (e > d.sheets)
      throw DomainError("ramification index " + std::to_string(e) + " exceeds the number of sheets");
    total = checked_sub(total, e - 1);
  }
  return total;
}

}  // namespace eulercalc
