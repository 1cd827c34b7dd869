#pragma once

#include <cstdint>

#include "blab/bergman.hpp"

namespace blab {

/// Signed min-max values of the evaluation form against ⟨,⟩ at one point:
/// kappa_l[0..p-1] ≥ 0 ascending, then kappa_l[p..p+q-1] ≤ 0 ascending in
/// magnitude; their sum is the Bergman function value.
struct PointSpectrum {
    ChartPoint x;
    int p = 0;
    int q = 0;
    RealVector kappa_l;
    bool diagonalizable = true;

    /// Pencil eigenvectors in V coordinates (column per kappa_l entry).
    Matrix subspace_vectors;
};

/// h_x in the V basis: M = Σ_a w_a(x) (E_a(x)S)* (E_a(x)S), PSD of rank ≤ r.
Matrix evaluation_form(const BundleModel& model, const SubspaceWithForm& pair,
                       const ChartPoint& x, const ToleranceSpec& tol = {});

PointSpectrum point_spectrum(const BundleModel& model, const SubspaceWithForm& pair,
                             const ChartPoint& x, const ToleranceSpec& tol = {});

struct SumRuleReport {
    double kappa_direct;
    double kappa_sum;
    double discrepancy;
};

/// Cross-checks the trace identity κ(x) = Σ κ_l via two independent routes.
SumRuleReport verify_sum_rule(const BundleModel& model, const SubspaceWithForm& pair,
                              const ChartPoint& x, const ToleranceSpec& tol = {});

/// At a non-diagonalizable pencil point, trace(diag(J) M') still equals κ(x);
/// exposed for the Phillips-regime fallback in reports.
double trace_fallback(const BundleModel& model, const SubspaceWithForm& pair,
                      const ChartPoint& x, const ToleranceSpec& tol = {});

struct OracleResult {
    double bound;                  // best sampled min-max bound
    double achieved_by_eigenbasis; // ratio extremum on the pencil eigenspan
};

/// Randomized verification of the min-max characterization: samples
/// n_samples admissible subspaces (G definite of the right sign on them),
/// computes the inner ratio extremum on each, and compares with the value
/// achieved by the pencil eigenbasis span. l is 1-based.
OracleResult minmax_oracle(const BundleModel& model, const SubspaceWithForm& pair,
                           const ChartPoint& x, int l, int n_samples,
                           std::uint64_t rng_seed, const ToleranceSpec& tol = {});

struct LineBundleKappas {
    double kappa_p;
    double kappa_pq;  // zero slot when the form is definite
};

/// Line-bundle specialization: the only possibly nonzero values are
/// kappa_p and kappa_{p+q}.
LineBundleKappas indefinite_specialization(const BundleModel& model,
                                           const SubspaceWithForm& pair,
                                           const ChartPoint& x,
                                           const ToleranceSpec& tol = {});

}  // namespace blab
