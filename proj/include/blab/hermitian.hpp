#pragma once

#include <vector>

#include "blab/types.hpp"

namespace blab {

/// Eigendecomposition A = U diag(values) U*, values ascending.
struct HermitianEigen {
    RealVector values;
    Matrix vectors;
};

/// Congruence transform to a signed orthonormal basis: T* G T = diag(signs),
/// with the +1 block ordered first.
struct SignedOnb {
    Matrix transform;
    std::vector<int> signs;

    int positives() const;
};

/// Spectrum of the pencil (M, diag(J)) for PSD M: eigenvalues of diag(J)·M
/// together with the sign type of each eigenvector under diag(J).
/// values[l] carries the signed eigenvalue directly (positive-type
/// entries ascending first, then negative-type ascending in magnitude);
/// vectors are the corresponding eigenvectors, column per value.
struct PencilSpectrum {
    RealVector values;
    std::vector<int> types;
    Matrix vectors;
    bool diagonalizable = true;
};

void check_finite(const Matrix& a);

/// Max-norm hermitian defect |A - A*|.
double hermitian_defect(const Matrix& a);

/// Throws NotHermitian when the defect exceeds tol.residual_tol;
/// returns the symmetrized matrix (A + A*)/2 otherwise.
Matrix require_hermitian(const Matrix& a, const ToleranceSpec& tol = {});

HermitianEigen hermitian_eigen(const Matrix& a, const ToleranceSpec& tol = {});

Inertia inertia_of(const Matrix& a, const ToleranceSpec& tol = {});

SignedOnb signed_onb(const Matrix& gram, const ToleranceSpec& tol = {});

PencilSpectrum pencil_spectrum(const Matrix& m, const std::vector<int>& signs,
                               const ToleranceSpec& tol = {});

}  // namespace blab
