#include <doctest.h>

#include "blab/hermitian.hpp"
#include "helpers.hpp"

using namespace blab;
using blab::testing::random_complex;
using blab::testing::random_psd;
using blab::testing::random_with_inertia;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Matrix sign_matrix(const std::vector<int>& signs) {
    Matrix j = Matrix::Zero((int)signs.size(), (int)signs.size());
    for (size_t i = 0; i < signs.size(); ++i) j((int)i, (int)i) = signs[i];
    return j;
}

}  // namespace

TEST_CASE("hermitian_eigen on small fixed matrices") {
    SUBCASE("identity") {
        HermitianEigen eig = hermitian_eigen(Matrix::Identity(2, 2));
        CHECK(eig.values[0] == doctest::Approx(1.0));
        CHECK(eig.values[1] == doctest::Approx(1.0));
        CHECK((eig.vectors * eig.vectors.adjoint() - Matrix::Identity(2, 2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }
    SUBCASE("diag(1,-1) is already diagonal") {
        HermitianEigen eig = hermitian_eigen(diag2(1, -1));
        CHECK(eig.values[0] == doctest::Approx(-1.0));
        CHECK(eig.values[1] == doctest::Approx(1.0));
    }
    SUBCASE("off-diagonal flip") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 1) = 1;
        a(1, 0) = 1;
        HermitianEigen eig = hermitian_eigen(a);
        CHECK(eig.values[0] == doctest::Approx(-1.0));
        CHECK(eig.values[1] == doctest::Approx(1.0));
        // eigenvectors (1, ∓1)/sqrt(2) up to phase
        for (int c = 0; c < 2; ++c)
            CHECK(std::abs(eig.vectors(0, c)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    SUBCASE("rejects non-hermitian input") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 1) = 1;
        CHECK_THROWS_AS(hermitian_eigen(a), NotHermitian);
    }
    SUBCASE("rejects NaN") {
        Matrix a = Matrix::Identity(2, 2);
        a(0, 0) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(hermitian_eigen(a), NotFinite);
    }
}

TEST_CASE("inertia_of") {
    Matrix d = Matrix::Zero(5, 5);
    d(0, 0) = d(1, 1) = d(3, 3) = d(4, 4) = 1;
    Inertia in = inertia_of(d);
    CHECK(in.p == 4);
    CHECK(in.q == 0);
    CHECK(in.z == 1);

    in = inertia_of(Matrix::Zero(3, 3));
    CHECK(in.p == 0);
    CHECK(in.q == 0);
    CHECK(in.z == 3);

    in = inertia_of(diag2(1, -1));
    CHECK(in.p == 1);
    CHECK(in.q == 1);
    CHECK(in.z == 0);
}

TEST_CASE("inertia is congruence invariant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int p = trial % 4, q = (trial / 4) % 3, z = trial % 2;
        if (p + q + z == 0) continue;
        int n = p + q + z;
        Matrix g = random_with_inertia(p, q, z, rng);
        Matrix t;
        do {
            t = random_complex(n, n, rng);
        } while (std::abs(t.determinant()) < 1e-3);
        Inertia before = inertia_of(g);
        Inertia after = inertia_of(((t.adjoint() * g * t).eval() +
                                    (t.adjoint() * g * t).eval().adjoint()) /
                                   2.0);
        CHECK(before.p == after.p);
        CHECK(before.q == after.q);
        CHECK(before.z == after.z);
    }
}

TEST_CASE("signed_onb") {
    ToleranceSpec tol;
    SUBCASE("identity") {
        SignedOnb onb = signed_onb(Matrix::Identity(3, 3));
        CHECK(onb.positives() == 3);
        CHECK((onb.transform - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("diag(4,-9) rescales to diag(1,-1)") {
        Matrix g = diag2(4, -9);
        SignedOnb onb = signed_onb(g);
        CHECK(onb.signs == std::vector<int>{1, -1});
        Matrix res = onb.transform.adjoint() * g * onb.transform - sign_matrix(onb.signs);
        CHECK(res.cwiseAbs().maxCoeff() < tol.residual_tol);
        CHECK(std::abs(onb.transform(0, 0)) == doctest::Approx(0.5));
        CHECK(std::abs(onb.transform(1, 1)) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("hyperbolic form") {
        Matrix g = Matrix::Zero(2, 2);
        g(0, 1) = 1;
        g(1, 0) = 1;
        SignedOnb onb = signed_onb(g);
        CHECK(onb.signs == std::vector<int>{1, -1});
        Matrix res = onb.transform.adjoint() * g * onb.transform - sign_matrix(onb.signs);
        CHECK(res.cwiseAbs().maxCoeff() < tol.residual_tol);
    }
    SUBCASE("degenerate form is rejected") {
        CHECK_THROWS_AS(signed_onb(diag2(1, 0)), DegenerateForm);
    }
    SUBCASE("congruence residual on random nondegenerate forms") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            int p = 1 + trial % 3, q = trial % 4;
            Matrix g = random_with_inertia(p, q, 0, rng);
            SignedOnb onb = signed_onb(g);
            Matrix res =
                onb.transform.adjoint() * g * onb.transform - sign_matrix(onb.signs);
            CHECK(res.cwiseAbs().maxCoeff() < tol.residual_tol);
            CHECK(onb.positives() == p);
        }
    }
}

TEST_CASE("pencil_spectrum fixed cases") {
    SUBCASE("rank-one against mixed signature") {
        Matrix m = diag2(1, 0);
        PencilSpectrum ps = pencil_spectrum(m, {1, -1});
        REQUIRE(ps.values.size() == 2);
        CHECK(ps.types == std::vector<int>{1, -1});
        CHECK(ps.values[0] == doctest::Approx(1.0));
        CHECK(ps.values[1] == doctest::Approx(0.0));
        CHECK(ps.diagonalizable);
    }
    SUBCASE("nilpotent pencil is flagged") {
        Matrix m(2, 2);
        m << 0.5, 0.5, 0.5, 0.5;
        CHECK_THROWS_AS(pencil_spectrum(m, {1, -1}), PencilDegenerate);
    }
    SUBCASE("definite signature reduces to plain eigenvalues") {
        PencilSpectrum ps = pencil_spectrum(Matrix::Identity(2, 2), {1, 1});
        CHECK(ps.values[0] == doctest::Approx(1.0));
        CHECK(ps.values[1] == doctest::Approx(1.0));
        CHECK(ps.types == std::vector<int>{1, 1});
    }
    SUBCASE("rejects non-PSD M") {
        CHECK_THROWS_AS(pencil_spectrum(diag2(1, -1), {1, 1}), NotPsd);
    }
}

TEST_CASE("pencil sign rule and trace identity") {
    std::mt19937_64 rng(23);
    ToleranceSpec tol;
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 5;
        int p = 1 + trial % n;
        std::vector<int> signs(n, -1);
        for (int i = 0; i < p; ++i) signs[i] = 1;
        Matrix m = random_psd(n, 1 + trial % n, rng);

        PencilSpectrum ps;
        try {
            ps = pencil_spectrum(m, signs, tol);
        } catch (const PencilDegenerate&) {
            continue;  // legitimately outside the diagonalizable regime
        }
        ++checked;
        double tau = tol.threshold(m.cwiseAbs().maxCoeff());
        double signed_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            if (ps.types[i] == 1)
                CHECK(ps.values[i] >= -tau);
            else
                CHECK(ps.values[i] <= tau);
            signed_sum += ps.types[i] * std::abs(ps.values[i]);
        }
        double trace = (sign_matrix(signs) * m).trace().real();
        CHECK(signed_sum == doctest::Approx(trace).epsilon(1e-9));
        // eigen-equation check in the original coordinates
        Matrix jm = sign_matrix(signs) * m;
        for (int i = 0; i < n; ++i) {
            Vector v = ps.vectors.col(i);
            CHECK((jm * v - ps.values[i] * v).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
    CHECK(checked > 100);
}
