#pragma once

#include <vector>

#include "blab/bundle.hpp"
#include "blab/inner_product.hpp"

namespace blab {

/// Two-point kernel value in the chart trivializations, r×r.
struct KernelValue {
    ChartPoint x;
    ChartPoint y;
    Matrix value;
};

struct KappaSamples {
    std::vector<ChartPoint> points;
    std::vector<double> values;
};

/// K(x,y) = E(x) Q E(y)* with E the block evaluation rows.
KernelValue kernel_at(const BundleModel& model, const DualInnerProduct& q,
                      const ChartPoint& x, const ChartPoint& y,
                      const ToleranceSpec& tol = {});

/// Diagonal restriction k(x) = K(x,x).
Matrix bergman_section(const BundleModel& model, const DualInnerProduct& q,
                       const ChartPoint& x, const ToleranceSpec& tol = {});

/// Bergman function: fiberwise metric trace of the Bergman section.
double kappa_at(const BundleModel& model, const DualInnerProduct& q,
                const ChartPoint& x, const ToleranceSpec& tol = {});

KappaSamples kappa_on_grid(const BundleModel& model, const DualInnerProduct& q,
                           const std::vector<ChartPoint>& points,
                           const ToleranceSpec& tol = {});

/// Residual of the reproducing identity η s(y) = ⟨s, η̄K(·,y)⟩, maximized
/// over the unit covectors η of the r summand directions.
double reproducing_check(const BundleModel& model, const SubspaceWithForm& pair,
                         const Vector& section_coefficients, const ChartPoint& y,
                         const ToleranceSpec& tol = {});

/// Recover Q from kernel samples K(x_i, x_j) at N distinct chart-Z nodes
/// (line bundles): Q = V⁻¹ K V⁻* with V the Vandermonde matrix of the nodes.
DualInnerProduct fit_q_from_kernel(const BundleModel& model,
                                   const std::vector<Complex>& nodes,
                                   const Matrix& kernel_samples,
                                   const ToleranceSpec& tol = {});

/// Chart-Z sample grid the κ moment solve is pinned to: (d+1) radii
/// r_a = a/(d+1) times (2d+1) equally spaced angles.
std::vector<ChartPoint> kappa_fit_grid(int degree);

/// Recover hermitian Q from Bergman-function samples on kappa_fit_grid by
/// solving the moment system κ(z)/a(z) = Σ Q_ij z^i conj(z)^j in least
/// squares; throws NotInRange when the residual shows κ is not of Bergman
/// form.
DualInnerProduct fit_q_from_kappa(const BundleModel& model,
                                  const KappaSamples& samples,
                                  const ToleranceSpec& tol = {});

struct PsdWitness {
    double min_eigenvalue;
    int dimension;
};

struct WitnessPoint {
    ChartPoint x;
    Vector covector;  // length r
};

/// Minimum eigenvalue of the sampled kernel matrix ((ξ_i ⊗ ξ̄_j) K(x_i,x_j));
/// with spanning rows this certifies positive semidefiniteness of Q.
PsdWitness psd_witness(const BundleModel& model, const DualInnerProduct& q,
                       const std::vector<WitnessPoint>& points,
                       const ToleranceSpec& tol = {});

}  // namespace blab
