#pragma once

#include "blab/spectrum.hpp"

namespace blab {

struct GridSpec {
    int n_radii = 8;
    int n_angles = 16;
    /// Threshold for the rather-ample second singular value and for the
    /// curvature minimum.
    double positivity_tol = 1e-8;
};

struct ClassificationReport {
    Inertia inertia;
    double kappa_min_on_grid = 0.0;
    double curvature_min_on_grid = 0.0;
    bool rather_ample = false;
    bool in_delta_HE = false;
    bool in_A_E = false;
    bool in_P_E = false;
    GridSpec grid;
};

struct RatherAmpleResult {
    bool flag;
    double min_second_singular_value;
    ChartPoint argmin;
};

struct CurvatureResult {
    double min_value;
    ChartPoint argmin;
};

struct LogKappaSamples {
    std::vector<ChartPoint> points;
    std::vector<double> values;
};

/// FS map: log of the Bergman function of the dual of a positive definite
/// inner product on the full section space, sampled on the validation grid.
LogKappaSamples fs_map(const BundleModel& model, const Matrix& gram,
                       const GridSpec& grid = {}, const ToleranceSpec& tol = {});

/// Grid test (with one refinement pass around the minimum) that evaluations
/// and first-order vanishing jointly span at every point: the second
/// singular value of the 2×m jet matrix stays above the threshold.
RatherAmpleResult rather_ample_test(const BundleModel& model,
                                    const SubspaceWithForm& pair,
                                    const GridSpec& grid = {},
                                    const ToleranceSpec& tol = {});

/// Minimum over the grid of D = (P P_zz̄ - P_z P_z̄)/P², P(z) = K(z,z);
/// positivity of D certifies that log κ lands in H_ω.
CurvatureResult curvature_check(const BundleModel& model, const DualInnerProduct& q,
                                const GridSpec& grid = {},
                                const ToleranceSpec& tol = {});

ClassificationReport classify(const BundleModel& model, const DualInnerProduct& q,
                              const GridSpec& grid = {},
                              const ToleranceSpec& tol = {});

/// Dual FS map on A_E: log κ grid samples; throws NotInAE outside A_E.
LogKappaSamples phi_map(const BundleModel& model, const DualInnerProduct& q,
                        const GridSpec& grid = {}, const ToleranceSpec& tol = {});

struct PathSpec {
    DualInnerProduct q_start;
    DualInnerProduct q_direction;
    std::vector<double> t_values;  // descending toward 0
};

struct PathStep {
    double t;
    ClassificationReport report;
    double log_kappa_distance_to_limit;
};

struct PathReport {
    std::vector<PathStep> steps;
    ClassificationReport limit_report;
    DualInnerProduct recovered_limit_q;
    double limit_recovery_error;
};

/// Walks Q(t) = Q_start + t Q_direction, classifying each step and
/// measuring sup-norm convergence of log κ_t to the limit; the limit κ is
/// refit through the moment solve to confirm invertibility of the sampling.
PathReport degeneration_path(const BundleModel& model, const PathSpec& path,
                             const GridSpec& grid = {},
                             const ToleranceSpec& tol = {});

// Named built-in instances.

/// O(d) with the Fubini-Study power weight, d ≥ 1.
BundleModel power_bundle(int degree,
                         MetricWeight::Kind kind = MetricWeight::Kind::FubiniStudyPower);

/// Pair with orthonormal basis 1, z, t z², z³, …, z^d (requires d ≥ 4);
/// its dual matrix is diag(1, 1, t², 1, …, 1).
SubspaceWithForm example62_pair(int degree, double t);

/// Dual matrix of the degeneration family, valid down to t = 0:
/// diag(1, 1, t², 1, …, 1).
DualInnerProduct example62_q(int degree, double t);

/// Binomially weighted diagonal: Q = diag(C(d,0), …, C(d,d)), the balanced
/// inner product whose Bergman function is identically 1.
DualInnerProduct balanced_q(int degree);

}  // namespace blab
