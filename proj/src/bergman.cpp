#include "blab/bergman.hpp"

#include <cmath>
#include <limits>

namespace blab {

namespace {

void check_dims(const BundleModel& model, const DualInnerProduct& q) {
    if (q.dim() != model.dim())
        throw RankMismatch("inner product dimension does not match bundle model");
}

}  // namespace

KernelValue kernel_at(const BundleModel& model, const DualInnerProduct& q,
                      const ChartPoint& x, const ChartPoint& y,
                      const ToleranceSpec& tol) {
    check_dims(model, q);
    Matrix qh = require_hermitian(q.q, tol);
    Matrix ex = model.evaluation_row(x);
    Matrix ey = model.evaluation_row(y);
    return {x, y, ex * qh * ey.adjoint()};
}

Matrix bergman_section(const BundleModel& model, const DualInnerProduct& q,
                       const ChartPoint& x, const ToleranceSpec& tol) {
    Matrix k = kernel_at(model, q, x, x, tol).value;
    return (k + k.adjoint()) / 2.0;
}

double kappa_at(const BundleModel& model, const DualInnerProduct& q,
                const ChartPoint& x, const ToleranceSpec& tol) {
    Matrix k = bergman_section(model, q, x, tol);
    std::vector<double> w = model.weight_at(x);
    double kappa = 0.0;
    for (int a = 0; a < model.rank(); ++a) kappa += w[a] * k(a, a).real();
    return kappa;
}

KappaSamples kappa_on_grid(const BundleModel& model, const DualInnerProduct& q,
                           const std::vector<ChartPoint>& points,
                           const ToleranceSpec& tol) {
    KappaSamples samples;
    samples.points = points;
    samples.values.reserve(points.size());
    Matrix qh = require_hermitian(q.q, tol);
    DualInnerProduct qsym{qh};
    for (const ChartPoint& x : points)
        samples.values.push_back(kappa_at(model, qsym, x, tol));
    return samples;
}

double reproducing_check(const BundleModel& model, const SubspaceWithForm& pair,
                         const Vector& section_coefficients, const ChartPoint& y,
                         const ToleranceSpec& tol) {
    validate_pair(pair, tol);
    if (section_coefficients.size() != model.dim())
        throw RankMismatch("section coefficient length does not match model");

    // Coordinates of s in the V basis; membership gate first.
    Vector alpha = pair.basis.colPivHouseholderQr().solve(section_coefficients);
    double scale = std::max(1.0, section_coefficients.cwiseAbs().maxCoeff());
    if ((pair.basis * alpha - section_coefficients).cwiseAbs().maxCoeff() >
        tol.residual_tol * scale)
        throw NotInSubspace("section is not in the span of the subspace basis");

    Matrix g = (pair.gram + pair.gram.adjoint()) / 2.0;
    Matrix ey = model.evaluation_row(y);
    double worst = 0.0;
    for (int a = 0; a < model.rank(); ++a) {
        RowVector row = ey.row(a);
        Complex lhs = row * section_coefficients;
        // η̄K(·,y) in V coordinates: β = G⁻¹ S* E_a(y)*.
        Vector beta = g.ldlt().solve(pair.basis.adjoint() * row.adjoint());
        Complex rhs = beta.adjoint() * g * alpha;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

DualInnerProduct fit_q_from_kernel(const BundleModel& model,
                                   const std::vector<Complex>& nodes,
                                   const Matrix& kernel_samples,
                                   const ToleranceSpec& tol) {
    model.require_line_bundle();
    int n = model.dim();
    if (static_cast<int>(nodes.size()) != n)
        throw SingularNodes("need exactly N distinct nodes");
    if (kernel_samples.rows() != n || kernel_samples.cols() != n)
        throw RankMismatch("kernel sample matrix must be N x N");

    Matrix vander(n, n);
    for (int i = 0; i < n; ++i)
        vander.row(i) = model.evaluation_row({Chart::Z, nodes[i]}).row(0);

    Eigen::JacobiSVD<Matrix> svd(vander, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()[0];
    double smin = svd.singularValues()[n - 1];
    if (smin <= 1e-12 * std::max(smax, 1.0))
        throw SingularNodes("Vandermonde matrix of nodes is numerically singular");

    Matrix k = require_hermitian(kernel_samples, tol);
    Matrix left = svd.solve(k);                       // V⁻¹ K
    Matrix q = svd.solve(left.adjoint()).adjoint();   // (V⁻¹ (V⁻¹K)*)* = V⁻¹ K V⁻*
    return {(q + q.adjoint()) / 2.0};
}

std::vector<ChartPoint> kappa_fit_grid(int degree) {
    int n_radii = degree + 1;
    int n_angles = 2 * degree + 1;
    std::vector<ChartPoint> points;
    points.reserve(static_cast<size_t>(n_radii) * n_angles);
    for (int a = 1; a <= n_radii; ++a) {
        double r = static_cast<double>(a) / n_radii;
        for (int k = 0; k < n_angles; ++k) {
            double theta = 2.0 * M_PI * k / n_angles;
            points.push_back({Chart::Z, std::polar(r, theta)});
        }
    }
    return points;
}

DualInnerProduct fit_q_from_kappa(const BundleModel& model,
                                  const KappaSamples& samples,
                                  const ToleranceSpec& tol) {
    model.require_line_bundle();
    int n = model.dim();
    int unknowns = n * n;  // real parameters of a hermitian N x N matrix
    int rows = static_cast<int>(samples.points.size());
    if (rows < unknowns)
        throw SingularNodes("not enough kappa samples for the moment system");

    Eigen::MatrixXd a(rows, unknowns);
    Eigen::VectorXd b(rows);
    for (int row = 0; row < rows; ++row) {
        const ChartPoint& x = samples.points[row];
        double weight = model.weight_at(x)[0];
        if (!(weight > 0.0))
            throw SingularNodes("metric weight must be positive at sample points");
        b[row] = samples.values[row] / weight;

        RowVector m = model.evaluation_row(x).row(0);
        int col = 0;
        for (int i = 0; i < n; ++i) a(row, col++) = std::norm(m[i]);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                Complex cross = m[i] * std::conj(m[j]);
                a(row, col++) = 2.0 * cross.real();
                a(row, col++) = -2.0 * cross.imag();
            }
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < unknowns)
        throw SingularNodes("moment system is rank deficient on this grid");
    Eigen::VectorXd x = qr.solve(b);

    double bscale = std::max(1.0, b.cwiseAbs().maxCoeff());
    double residual = (a * x - b).cwiseAbs().maxCoeff();
    if (residual > tol.residual_tol * bscale)
        throw NotInRange("kappa samples are not of Bergman form on this model");

    Matrix q = Matrix::Zero(n, n);
    int col = 0;
    for (int i = 0; i < n; ++i) q(i, i) = Complex(x[col++], 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double re = x[col++];
            double im = x[col++];
            q(i, j) = Complex(re, im);
            q(j, i) = Complex(re, -im);
        }
    }
    return {q};
}

PsdWitness psd_witness(const BundleModel& model, const DualInnerProduct& q,
                       const std::vector<WitnessPoint>& points,
                       const ToleranceSpec& tol) {
    check_dims(model, q);
    Matrix qh = require_hermitian(q.q, tol);
    if (points.empty())
        return {std::numeric_limits<double>::infinity(), 0};

    int k = static_cast<int>(points.size());
    Matrix rows(k, model.dim());
    for (int i = 0; i < k; ++i) {
        const WitnessPoint& wp = points[i];
        if (wp.covector.size() != model.rank())
            throw RankMismatch("covector length must equal bundle rank");
        rows.row(i) = wp.covector.transpose() * model.evaluation_row(wp.x);
    }
    Matrix witness = rows * qh * rows.adjoint();
    HermitianEigen eig = hermitian_eigen((witness + witness.adjoint()) / 2.0, tol);
    return {eig.values[0], k};
}

}  // namespace blab
