#pragma once

#include "blab/hermitian.hpp"
#include "blab/types.hpp"

namespace blab {

/// Inner product on the dual section space, stored as the hermitian N×N
/// matrix Q in dual-monomial coordinates, normalized so that the kernel in
/// trivialization is K(x,y) = m(x) Q m(y)*.
struct DualInnerProduct {
    Matrix q;

    int dim() const { return static_cast<int>(q.rows()); }
};

/// Pair (V, ⟨,⟩): columns of `basis` span V inside the coefficient space;
/// `gram` is the nondegenerate hermitian Gram matrix of that basis, with the
/// convention ⟨S α, S β⟩ = β* G α.
struct SubspaceWithForm {
    Matrix basis;
    Matrix gram;

    int ambient_dim() const { return static_cast<int>(basis.rows()); }
    int subspace_dim() const { return static_cast<int>(basis.cols()); }
};

void validate_pair(const SubspaceWithForm& pair, const ToleranceSpec& tol = {});

/// Duality map: Q = S G⁻¹ S*.
DualInnerProduct delta(const SubspaceWithForm& pair, const ToleranceSpec& tol = {});

/// Inverse duality: keep the eigenpairs of Q above the rank threshold;
/// V = their span, G = inverse of the kept eigenvalues.
SubspaceWithForm delta_inverse(const DualInnerProduct& q, const ToleranceSpec& tol = {});

Inertia classify_inertia(const DualInnerProduct& q, const ToleranceSpec& tol = {});

}  // namespace blab
