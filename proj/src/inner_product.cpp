#include "blab/inner_product.hpp"

namespace blab {

void validate_pair(const SubspaceWithForm& pair, const ToleranceSpec& tol) {
    check_finite(pair.basis);
    int m = pair.subspace_dim();
    if (m == 0 || pair.ambient_dim() < m)
        throw RankDeficient("subspace basis must have 1..N full-rank columns");
    Eigen::JacobiSVD<Matrix> svd(pair.basis);
    double smax = svd.singularValues()[0];
    if (svd.singularValues()[m - 1] <= tol.threshold(smax))
        throw RankDeficient("subspace basis is not full column rank");
    Matrix g = require_hermitian(pair.gram, tol);
    if (g.rows() != m)
        throw RankMismatch("gram dimension does not match basis column count");
    if (inertia_of(g, tol).z > 0)
        throw DegenerateForm("gram matrix is degenerate");
}

DualInnerProduct delta(const SubspaceWithForm& pair, const ToleranceSpec& tol) {
    validate_pair(pair, tol);
    Matrix g = (pair.gram + pair.gram.adjoint()) / 2.0;
    Matrix q = pair.basis * g.ldlt().solve(pair.basis.adjoint());
    return {(q + q.adjoint()) / 2.0};
}

SubspaceWithForm delta_inverse(const DualInnerProduct& q, const ToleranceSpec& tol) {
    HermitianEigen eig = hermitian_eigen(q.q, tol);
    int n = static_cast<int>(eig.values.size());
    double radius = n > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    double tau = tol.threshold(radius);

    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (std::abs(eig.values[i]) > tau) kept.push_back(i);

    SubspaceWithForm pair;
    pair.basis = Matrix(n, static_cast<int>(kept.size()));
    pair.gram = Matrix::Zero(static_cast<int>(kept.size()),
                             static_cast<int>(kept.size()));
    for (size_t c = 0; c < kept.size(); ++c) {
        pair.basis.col(static_cast<int>(c)) = eig.vectors.col(kept[c]);
        pair.gram(static_cast<int>(c), static_cast<int>(c)) =
            Complex(1.0 / eig.values[kept[c]], 0.0);
    }
    return pair;
}

Inertia classify_inertia(const DualInnerProduct& q, const ToleranceSpec& tol) {
    return inertia_of(q.q, tol);
}

}  // namespace blab
