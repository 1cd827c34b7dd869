#include "blab/fubini_study.hpp"

#include <cmath>
#include <functional>

namespace blab {

namespace {

/// Minimizes a pointwise quantity over the validation grid, then runs one
/// refinement pass on a local disk around the argmin.
template <typename F>
std::pair<double, ChartPoint> grid_minimum(const GridSpec& grid, F&& value_at) {
    std::vector<ChartPoint> points = validation_grid(grid.n_radii, grid.n_angles);
    double best = std::numeric_limits<double>::infinity();
    ChartPoint argmin = points.front();
    for (const ChartPoint& x : points) {
        double v = value_at(x);
        if (v < best) {
            best = v;
            argmin = x;
        }
    }
    double delta = 1.0 / grid.n_radii;
    for (int ring = 1; ring <= 3; ++ring) {
        double r = delta * ring / 3.0;
        for (int k = 0; k < 8; ++k) {
            double theta = 2.0 * M_PI * k / 8.0;
            ChartPoint x{argmin.chart, argmin.coordinate + std::polar(r, theta)};
            best = std::min(best, value_at(x));
        }
    }
    return {best, argmin};
}

double second_singular_value(const Matrix& jet) {
    Eigen::JacobiSVD<Matrix> svd(jet);
    return svd.singularValues().size() < 2 ? 0.0 : svd.singularValues()[1];
}

}  // namespace

LogKappaSamples fs_map(const BundleModel& model, const Matrix& gram,
                       const GridSpec& grid, const ToleranceSpec& tol) {
    model.require_line_bundle();
    Matrix g = require_hermitian(gram, tol);
    if (g.rows() != model.dim())
        throw RankMismatch("gram must act on the full section space");
    if (!inertia_of(g, tol).positive_definite())
        throw NotPositiveDefinite("FS map needs a positive definite inner product");

    SubspaceWithForm pair{Matrix::Identity(model.dim(), model.dim()), g};
    DualInnerProduct q = delta(pair, tol);

    LogKappaSamples samples;
    samples.points = validation_grid(grid.n_radii, grid.n_angles);
    samples.values.reserve(samples.points.size());
    for (const ChartPoint& x : samples.points)
        samples.values.push_back(std::log(kappa_at(model, q, x, tol)));
    return samples;
}

RatherAmpleResult rather_ample_test(const BundleModel& model,
                                    const SubspaceWithForm& pair,
                                    const GridSpec& grid,
                                    const ToleranceSpec& tol) {
    model.require_line_bundle();
    if (pair.subspace_dim() == 0)
        return {false, 0.0, {Chart::Z, {0.0, 0.0}}};
    validate_pair(pair, tol);

    auto sigma2 = [&](const ChartPoint& x) {
        Matrix jet(2, pair.subspace_dim());
        jet.row(0) = model.evaluation_row(x).row(0) * pair.basis;
        jet.row(1) = model.derivative_row(x).row(0) * pair.basis;
        return second_singular_value(jet);
    };
    auto [min_sigma, argmin] = grid_minimum(grid, sigma2);
    return {min_sigma > grid.positivity_tol, min_sigma, argmin};
}

CurvatureResult curvature_check(const BundleModel& model, const DualInnerProduct& q,
                                const GridSpec& grid, const ToleranceSpec& tol) {
    model.require_line_bundle();
    Matrix qh = require_hermitian(q.q, tol);

    auto d_value = [&](const ChartPoint& x) {
        RowVector m = model.evaluation_row(x).row(0);
        RowVector dm = model.derivative_row(x).row(0);
        double p = (m * qh * m.adjoint())(0).real();
        if (!(p > 0.0))
            throw NonpositiveKappa("K(x,x) <= 0 at a grid point");
        Complex pz = (dm * qh * m.adjoint())(0);
        double pzz = (dm * qh * dm.adjoint())(0).real();
        return (p * pzz - std::norm(pz)) / (p * p);
    };
    auto [min_d, argmin] = grid_minimum(grid, d_value);
    return {min_d, argmin};
}

ClassificationReport classify(const BundleModel& model, const DualInnerProduct& q,
                              const GridSpec& grid, const ToleranceSpec& tol) {
    model.require_line_bundle();
    ClassificationReport report;
    report.grid = grid;
    report.inertia = classify_inertia(q, tol);

    std::vector<ChartPoint> points = validation_grid(grid.n_radii, grid.n_angles);
    double kappa_min = std::numeric_limits<double>::infinity();
    for (const ChartPoint& x : points)
        kappa_min = std::min(kappa_min, kappa_at(model, q, x, tol));
    report.kappa_min_on_grid = kappa_min;

    SubspaceWithForm pair = delta_inverse(q, tol);
    RatherAmpleResult ample{false, 0.0, {Chart::Z, {0.0, 0.0}}};
    if (pair.subspace_dim() > 0) ample = rather_ample_test(model, pair, grid, tol);
    report.rather_ample = ample.flag;

    bool curvature_positive = false;
    if (kappa_min > 0.0) {
        CurvatureResult curv = curvature_check(model, q, grid, tol);
        report.curvature_min_on_grid = curv.min_value;
        curvature_positive = curv.min_value > grid.positivity_tol;
    } else {
        report.curvature_min_on_grid = -std::numeric_limits<double>::infinity();
    }

    report.in_delta_HE = report.inertia.positive_definite();
    report.in_A_E = report.inertia.positive_semidefinite() && report.rather_ample;
    report.in_P_E = kappa_min > 0.0 && curvature_positive;

    // Cross-check: for a PSD form with positive kappa, rather
    // ampleness and curvature positivity must agree.
    if (report.inertia.positive_semidefinite() && kappa_min > 0.0 &&
        report.rather_ample != curvature_positive)
        throw ConsistencyViolation(
            "rather-ample and curvature-positivity disagree; check tolerances");
    return report;
}

LogKappaSamples phi_map(const BundleModel& model, const DualInnerProduct& q,
                        const GridSpec& grid, const ToleranceSpec& tol) {
    ClassificationReport report = classify(model, q, grid, tol);
    if (!report.in_A_E)
        throw NotInAE("inner product is not positive semidefinite with rather-ample support");

    LogKappaSamples samples;
    samples.points = validation_grid(grid.n_radii, grid.n_angles);
    samples.values.reserve(samples.points.size());
    for (const ChartPoint& x : samples.points)
        samples.values.push_back(std::log(kappa_at(model, q, x, tol)));
    return samples;
}

PathReport degeneration_path(const BundleModel& model, const PathSpec& path,
                             const GridSpec& grid, const ToleranceSpec& tol) {
    model.require_line_bundle();
    Matrix q0 = require_hermitian(path.q_start.q, tol);
    Matrix dq = require_hermitian(path.q_direction.q, tol);
    if (q0.rows() != dq.rows())
        throw RankMismatch("path matrices must share dimensions");

    std::vector<ChartPoint> points = validation_grid(grid.n_radii, grid.n_angles);
    std::vector<double> limit_log;
    limit_log.reserve(points.size());
    for (const ChartPoint& x : points)
        limit_log.push_back(std::log(kappa_at(model, path.q_start, x, tol)));

    PathReport report;
    for (double t : path.t_values) {
        DualInnerProduct qt{q0 + t * dq};
        PathStep step;
        step.t = t;
        step.report = classify(model, qt, grid, tol);
        double dist = 0.0;
        for (size_t i = 0; i < points.size(); ++i) {
            double logk = std::log(kappa_at(model, qt, points[i], tol));
            dist = std::max(dist, std::abs(logk - limit_log[i]));
        }
        step.log_kappa_distance_to_limit = dist;
        report.steps.push_back(step);
    }

    report.limit_report = classify(model, path.q_start, grid, tol);
    KappaSamples limit_samples =
        kappa_on_grid(model, path.q_start, kappa_fit_grid(model.summands()[0].degree), tol);
    report.recovered_limit_q = fit_q_from_kappa(model, limit_samples, tol);
    report.limit_recovery_error =
        (report.recovered_limit_q.q - q0).cwiseAbs().maxCoeff();
    return report;
}

BundleModel power_bundle(int degree, MetricWeight::Kind kind) {
    MetricWeight weight;
    weight.kind = kind;
    return BundleModel({Summand{degree, weight}});
}

SubspaceWithForm example62_pair(int degree, double t) {
    if (degree < 4)
        throw ValidationError("BadDegree", "the degeneration example needs d >= 4");
    if (!(t > 0.0))
        throw ValidationError("BadParameter", "basis scaling t must be positive");
    int n = degree + 1;
    Matrix basis = Matrix::Identity(n, n);
    basis(2, 2) = Complex(t, 0.0);
    return {basis, Matrix::Identity(n, n)};
}

DualInnerProduct example62_q(int degree, double t) {
    if (degree < 4)
        throw ValidationError("BadDegree", "the degeneration example needs d >= 4");
    Matrix q = Matrix::Identity(degree + 1, degree + 1);
    q(2, 2) = Complex(t * t, 0.0);
    return {q};
}

DualInnerProduct balanced_q(int degree) {
    Matrix q = Matrix::Zero(degree + 1, degree + 1);
    double binom = 1.0;
    for (int i = 0; i <= degree; ++i) {
        q(i, i) = Complex(binom, 0.0);
        binom = binom * (degree - i) / (i + 1);
    }
    return {q};
}

}  // namespace blab
