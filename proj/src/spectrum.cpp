#include "blab/spectrum.hpp"

#include <limits>
#include <random>

namespace blab {

namespace {

Matrix sign_diagonal(const std::vector<int>& signs) {
    Matrix j = Matrix::Zero(static_cast<int>(signs.size()),
                            static_cast<int>(signs.size()));
    for (int i = 0; i < j.rows(); ++i) j(i, i) = Complex(signs[i], 0.0);
    return j;
}

/// Largest (want_max) or smallest ratio v*Mv / v*Gv over a subspace with
/// definite G restriction; basis columns in V coordinates.
double ratio_extremum(const Matrix& m, const Matrix& g, const Matrix& basis,
                      bool negative_side) {
    Matrix mw = (basis.adjoint() * m * basis).eval();
    Matrix gw = (basis.adjoint() * g * basis).eval();
    mw = (mw + mw.adjoint()) / 2.0;
    gw = (gw + gw.adjoint()) / 2.0;
    if (negative_side) gw = -gw;
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(mw, gw);
    if (solver.info() != Eigen::Success)
        throw MathError("EigenFailure", "generalized eigensolver did not converge");
    double extreme = solver.eigenvalues()[solver.eigenvalues().size() - 1];
    // Negative side: ratios against G are the negatives of the -G ones.
    return negative_side ? -extreme : extreme;
}

}  // namespace

Matrix evaluation_form(const BundleModel& model, const SubspaceWithForm& pair,
                       const ChartPoint& x, const ToleranceSpec& tol) {
    validate_pair(pair, tol);
    if (pair.ambient_dim() != model.dim())
        throw RankMismatch("pair ambient dimension does not match model");
    int m = pair.subspace_dim();
    Matrix form = Matrix::Zero(m, m);
    Matrix rows = model.evaluation_row(x);
    std::vector<double> w = model.weight_at(x);
    for (int a = 0; a < model.rank(); ++a) {
        RowVector row = rows.row(a) * pair.basis;
        form += w[a] * row.adjoint() * row;
    }
    return (form + form.adjoint()) / 2.0;
}

PointSpectrum point_spectrum(const BundleModel& model, const SubspaceWithForm& pair,
                             const ChartPoint& x, const ToleranceSpec& tol) {
    Matrix m = evaluation_form(model, pair, x, tol);
    SignedOnb onb = signed_onb(pair.gram, tol);
    Matrix mprime = (onb.transform.adjoint() * m * onb.transform).eval();
    PencilSpectrum pencil = pencil_spectrum(mprime, onb.signs, tol);

    PointSpectrum spectrum;
    spectrum.x = x;
    spectrum.p = onb.positives();
    spectrum.q = static_cast<int>(onb.signs.size()) - spectrum.p;
    spectrum.kappa_l = pencil.values;
    spectrum.diagonalizable = pencil.diagonalizable;
    spectrum.subspace_vectors = onb.transform * pencil.vectors;
    return spectrum;
}

SumRuleReport verify_sum_rule(const BundleModel& model, const SubspaceWithForm& pair,
                              const ChartPoint& x, const ToleranceSpec& tol) {
    PointSpectrum spectrum = point_spectrum(model, pair, x, tol);
    double direct = kappa_at(model, delta(pair, tol), x, tol);
    double sum = spectrum.kappa_l.sum();
    return {direct, sum, std::abs(direct - sum)};
}

double trace_fallback(const BundleModel& model, const SubspaceWithForm& pair,
                      const ChartPoint& x, const ToleranceSpec& tol) {
    Matrix m = evaluation_form(model, pair, x, tol);
    SignedOnb onb = signed_onb(pair.gram, tol);
    Matrix mprime = onb.transform.adjoint() * m * onb.transform;
    return (sign_diagonal(onb.signs) * mprime).trace().real();
}

OracleResult minmax_oracle(const BundleModel& model, const SubspaceWithForm& pair,
                           const ChartPoint& x, int l, int n_samples,
                           std::uint64_t rng_seed, const ToleranceSpec& tol) {
    PointSpectrum spectrum = point_spectrum(model, pair, x, tol);
    int p = spectrum.p;
    int q = spectrum.q;
    if (l < 1 || l > p + q)
        throw ValidationError("BadIndex", "l must be within 1..p+q");

    bool negative_side = l > p;
    int dim = negative_side ? l - p : l;
    int m = pair.subspace_dim();

    Matrix form = evaluation_form(model, pair, x, tol);
    Matrix gram = (pair.gram + pair.gram.adjoint()) / 2.0;

    // The eigenbasis span from the pencil: first l positive-type vectors,
    // or the first l-p negative-type ones.
    int start = negative_side ? p : 0;
    Matrix eigenbasis = spectrum.subspace_vectors.block(0, start, m, dim);
    double achieved = ratio_extremum(form, gram, eigenbasis, negative_side);

    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool any_admissible = false;
    double best = negative_side ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
    for (int sample = 0; sample < n_samples; ++sample) {
        Matrix basis(m, dim);
        for (int c = 0; c < dim; ++c)
            for (int r = 0; r < m; ++r)
                basis(r, c) = Complex(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<Matrix> qr(basis);
        basis = Matrix(qr.householderQ()).leftCols(dim);

        Matrix gw = (basis.adjoint() * gram * basis).eval();
        Inertia inertia = inertia_of((gw + gw.adjoint()) / 2.0, tol);
        bool admissible = negative_side ? (inertia.q == dim && inertia.z == 0)
                                        : (inertia.p == dim && inertia.z == 0);
        if (!admissible) continue;
        any_admissible = true;
        double extremum = ratio_extremum(form, gram, basis, negative_side);
        best = negative_side ? std::max(best, extremum) : std::min(best, extremum);
    }
    if (!any_admissible)
        throw NoAdmissibleSubspace("no definite subspace found in n_samples draws");
    return {best, achieved};
}

LineBundleKappas indefinite_specialization(const BundleModel& model,
                                           const SubspaceWithForm& pair,
                                           const ChartPoint& x,
                                           const ToleranceSpec& tol) {
    model.require_line_bundle();
    PointSpectrum spectrum = point_spectrum(model, pair, x, tol);
    LineBundleKappas result{0.0, 0.0};
    if (spectrum.p > 0) result.kappa_p = spectrum.kappa_l[spectrum.p - 1];
    if (spectrum.q > 0)
        result.kappa_pq = spectrum.kappa_l[spectrum.p + spectrum.q - 1];
    return result;
}

}  // namespace blab
