#pragma once

#include <vector>

#include "blab/types.hpp"

namespace blab {

enum class Chart { Z, W };

/// Point of the projective line in one of the two affine charts,
/// w = 1/z on the overlap. (W, 0) is the point at infinity.
struct ChartPoint {
    Chart chart = Chart::Z;
    Complex coordinate{0.0, 0.0};
};

/// Hermitian metric weight of one line-bundle summand, given as a pair of
/// chart functions a(z), ã(w) with ã(w) = |w|^{-2d} a(1/w) on the overlap
/// (sections transform as s̃(w) = w^d s(1/w)).
/// FubiniStudyPower is a(z) = (1+|z|²)^{-d}; FsTilted multiplies it by
/// exp(ε (1-|z|²)/(1+|z|²)), still of positive curvature for small ε.
struct MetricWeight {
    enum class Kind { FubiniStudyPower, FsTilted };
    Kind kind = Kind::FubiniStudyPower;
    double tilt = 0.1;  // ε for FsTilted

    double at(Chart chart, Complex coordinate, int degree) const;
};

struct Summand {
    int degree = 1;
    MetricWeight weight;
};

/// Direct sum of line bundles O(d_1) ⊕ … ⊕ O(d_r) over the projective
/// line; sections of O(d) are polynomials of degree ≤ d in the z chart.
class BundleModel {
  public:
    explicit BundleModel(std::vector<Summand> summands);

    int rank() const { return static_cast<int>(summands_.size()); }
    int dim() const { return dim_; }
    const std::vector<Summand>& summands() const { return summands_; }

    /// Column offset of summand a's coefficient block.
    int block_offset(int a) const { return offsets_[a]; }

    /// r × N block evaluation: row a applied to a coefficient vector gives
    /// the a-th component of the section at x, in the chart trivialization.
    Matrix evaluation_row(const ChartPoint& x) const;

    /// Derivative of the chart monomial row along the chart coordinate
    /// (chart W rows are the reversed monomials, differentiated as such).
    Matrix derivative_row(const ChartPoint& x) const;

    /// Per-summand metric weight at x, in the chart trivialization.
    std::vector<double> weight_at(const ChartPoint& x) const;

    void require_line_bundle() const;

  private:
    std::vector<Summand> summands_;
    std::vector<int> offsets_;
    int dim_ = 0;
};

/// First-order jet data at a point (line-bundle case).
struct JetRow {
    RowVector value_row;
    RowVector derivative_row;
};

JetRow jet_row(const BundleModel& model, const ChartPoint& x);

/// Deterministic grid covering both charts: radii a/n_radii (a = 1..n_radii),
/// equally spaced angles, plus the two chart centers; chart-W points on the
/// overlap circle |w| = 1 are dropped.
std::vector<ChartPoint> validation_grid(int n_radii, int n_angles);

}  // namespace blab
