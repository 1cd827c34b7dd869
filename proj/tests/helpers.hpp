#pragma once

#include <random>

#include "blab/types.hpp"

namespace blab::testing {

inline Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
    Matrix a = random_complex(n, n, rng);
    return (a + a.adjoint()) / 2.0;
}

/// Random hermitian with prescribed numbers of positive/negative/zero
/// eigenvalues, via congruence by a well-conditioned random basis.
inline Matrix random_with_inertia(int p, int q, int z, std::mt19937_64& rng) {
    int n = p + q + z;
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < p; ++i) d(i, i) = Complex(mag(rng), 0.0);
    for (int i = p; i < p + q; ++i) d(i, i) = Complex(-mag(rng), 0.0);
    Matrix t = random_complex(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(t);
    Matrix unitary = Matrix(qr.householderQ());
    Matrix scale = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i) scale(i, i) = Complex(mag(rng), 0.0);
    Matrix basis = unitary * scale;
    Matrix a = basis * d * basis.adjoint();
    return (a + a.adjoint()) / 2.0;
}

inline Matrix random_psd(int n, int rank, std::mt19937_64& rng) {
    Matrix c = random_complex(n, rank, rng);
    Matrix a = c * c.adjoint();
    return (a + a.adjoint()) / 2.0;
}

}  // namespace blab::testing
