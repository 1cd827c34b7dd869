#include "blab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blab {

namespace {

// Deterministic phase fix: rotate so the largest-magnitude entry is real
// positive. Used only for tie-breaking and reproducible output.
Vector phase_fixed(const Vector& v) {
    int idx = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > best + 1e-14) {
            best = std::abs(v[i]);
            idx = i;
        }
    }
    if (best <= 0.0) return v;
    Complex phase = v[idx] / std::abs(v[idx]);
    return v / phase;
}

bool lex_less(const Vector& a, const Vector& b) {
    for (int i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

Matrix sign_diagonal(const std::vector<int>& signs) {
    Matrix j = Matrix::Zero(static_cast<int>(signs.size()),
                            static_cast<int>(signs.size()));
    for (int i = 0; i < j.rows(); ++i) j(i, i) = Complex(signs[i], 0.0);
    return j;
}

struct PencilEntry {
    double value;
    int type;
    Vector vector;
};

}  // namespace

int SignedOnb::positives() const {
    return static_cast<int>(std::count(signs.begin(), signs.end(), 1));
}

void check_finite(const Matrix& a) {
    if (!a.allFinite()) throw NotFinite("matrix has NaN or Inf entries");
}

double hermitian_defect(const Matrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Matrix require_hermitian(const Matrix& a, const ToleranceSpec& tol) {
    check_finite(a);
    if (a.rows() != a.cols())
        throw NotHermitian("matrix is not square");
    if (a.rows() > 0 && hermitian_defect(a) > tol.residual_tol)
        throw NotHermitian("symmetry defect exceeds residual_tol");
    return (a + a.adjoint()) / 2.0;
}

HermitianEigen hermitian_eigen(const Matrix& a, const ToleranceSpec& tol) {
    Matrix h = require_hermitian(a, tol);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw MathError("EigenFailure", "self-adjoint eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Inertia inertia_of(const Matrix& a, const ToleranceSpec& tol) {
    HermitianEigen eig = hermitian_eigen(a, tol);
    double radius = eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    double tau = tol.threshold(radius);
    Inertia inertia;
    for (int i = 0; i < eig.values.size(); ++i) {
        if (eig.values[i] > tau)
            ++inertia.p;
        else if (eig.values[i] < -tau)
            ++inertia.q;
        else
            ++inertia.z;
    }
    return inertia;
}

SignedOnb signed_onb(const Matrix& gram, const ToleranceSpec& tol) {
    HermitianEigen eig = hermitian_eigen(gram, tol);
    int n = static_cast<int>(eig.values.size());
    double radius = n > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    double tau = tol.threshold(radius);

    std::vector<int> order;
    for (int i = n - 1; i >= 0; --i)  // positives, descending index = ascending value reversed
        if (eig.values[i] > tau) order.push_back(i);
    std::reverse(order.begin(), order.end());  // positives ascending
    size_t positives = order.size();
    for (int i = 0; i < n; ++i) {
        if (std::abs(eig.values[i]) <= tau)
            throw DegenerateForm("gram matrix has a numerically zero eigenvalue");
    }
    for (int i = n - 1; i >= 0; --i)  // negatives, |value| ascending
        if (eig.values[i] < -tau) order.push_back(i);

    SignedOnb result;
    result.transform = Matrix(n, n);
    result.signs.resize(n);
    for (int c = 0; c < n; ++c) {
        int i = order[c];
        result.transform.col(c) = eig.vectors.col(i) / std::sqrt(std::abs(eig.values[i]));
        result.signs[c] = c < static_cast<int>(positives) ? 1 : -1;
    }
    return result;
}

PencilSpectrum pencil_spectrum(const Matrix& m, const std::vector<int>& signs,
                               const ToleranceSpec& tol) {
    int n = static_cast<int>(signs.size());
    if (m.rows() != n || m.cols() != n)
        throw RankMismatch("sign sequence length does not match matrix dimension");

    HermitianEigen eig = hermitian_eigen(m, tol);
    double radius = n > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    double tau = tol.threshold(radius);
    if (n > 0 && eig.values[0] < -tau)
        throw NotPsd("pencil matrix is not positive semidefinite");

    Matrix j = sign_diagonal(signs);

    std::vector<int> kept, dropped;
    for (int i = 0; i < n; ++i)
        (eig.values[i] > tau ? kept : dropped).push_back(i);
    int k = static_cast<int>(kept.size());

    // Nonzero spectrum of diag(J)·M equals the spectrum of the hermitian
    // matrix C* J C, where M = C C*. A zero eigenvalue there means a
    // J-neutral direction inside range(M): the pencil is not
    // simultaneously diagonalizable.
    Matrix c(n, k);
    for (int i = 0; i < k; ++i)
        c.col(i) = eig.vectors.col(kept[i]) * std::sqrt(eig.values[kept[i]]);

    std::vector<PencilEntry> entries;
    entries.reserve(n);

    if (k > 0) {
        Matrix h = (c.adjoint() * j * c).eval();
        HermitianEigen heig = hermitian_eigen((h + h.adjoint()) / 2.0, tol);
        double hradius = heig.values.cwiseAbs().maxCoeff();
        double htau = tol.threshold(hradius);
        for (int i = 0; i < k; ++i) {
            double mu = heig.values[i];
            if (std::abs(mu) <= htau)
                throw PencilDegenerate(
                    "J-neutral eigenvector in range(M); pencil not diagonalizable");
            Vector v = (j * c * heig.vectors.col(i)).eval();
            v.normalize();
            entries.push_back({mu, mu > 0 ? 1 : -1, phase_fixed(v)});
        }
    }

    if (!dropped.empty()) {
        int z = static_cast<int>(dropped.size());
        Matrix zbasis(n, z);
        for (int i = 0; i < z; ++i) zbasis.col(i) = eig.vectors.col(dropped[i]);
        Matrix f = (zbasis.adjoint() * j * zbasis).eval();
        HermitianEigen feig = hermitian_eigen((f + f.adjoint()) / 2.0, tol);
        double ftau = tol.threshold(feig.values.cwiseAbs().maxCoeff());
        for (int i = 0; i < z; ++i) {
            double nu = feig.values[i];
            if (std::abs(nu) <= ftau)
                throw PencilDegenerate("J-neutral direction in ker(M)");
            Vector v = (zbasis * feig.vectors.col(i)).eval();
            v.normalize();
            entries.push_back({0.0, nu > 0 ? 1 : -1, phase_fixed(v)});
        }
    }

    // Positive-type ascending first, then negative-type ascending in |value|.
    auto less = [&](const PencilEntry& a, const PencilEntry& b) {
        if (a.type != b.type) return a.type > b.type;
        double ka = std::abs(a.value), kb = std::abs(b.value);
        if (std::abs(ka - kb) > tau) return ka < kb;
        return lex_less(a.vector, b.vector);
    };
    std::stable_sort(entries.begin(), entries.end(), less);

    int expected_p = static_cast<int>(std::count(signs.begin(), signs.end(), 1));
    int got_p = static_cast<int>(
        std::count_if(entries.begin(), entries.end(),
                      [](const PencilEntry& e) { return e.type == 1; }));
    if (got_p != expected_p)
        throw PencilDegenerate("eigenvector type counts disagree with signature");

    PencilSpectrum result;
    result.values = RealVector(n);
    result.types.resize(n);
    result.vectors = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        result.values[i] = entries[i].type == 1 ? std::abs(entries[i].value)
                                                : -std::abs(entries[i].value);
        result.types[i] = entries[i].type;
        result.vectors.col(i) = entries[i].vector;
    }
    result.diagonalizable = true;
    return result;
}

}  // namespace blab
