#include "blab/bundle.hpp"

#include <cmath>

namespace blab {

double MetricWeight::at(Chart chart, Complex coordinate, int degree) const {
    double s = std::norm(coordinate);
    double fs = std::pow(1.0 + s, -degree);
    switch (kind) {
        case Kind::FubiniStudyPower:
            return fs;
        case Kind::FsTilted: {
            double m = (1.0 - s) / (1.0 + s);
            if (chart == Chart::W) m = -m;
            return fs * std::exp(tilt * m);
        }
    }
    throw UnsupportedWeight("unknown weight kind");
}

BundleModel::BundleModel(std::vector<Summand> summands)
    : summands_(std::move(summands)) {
    if (summands_.empty())
        throw ValidationError("EmptyBundle", "bundle needs at least one summand");
    for (const Summand& s : summands_) {
        if (s.degree < 0)
            throw ValidationError("NegativeDegree", "summand degree must be >= 0");
        offsets_.push_back(dim_);
        dim_ += s.degree + 1;
    }
}

Matrix BundleModel::evaluation_row(const ChartPoint& x) const {
    Matrix rows = Matrix::Zero(rank(), dim_);
    for (int a = 0; a < rank(); ++a) {
        int d = summands_[a].degree;
        Complex power(1.0, 0.0);
        for (int j = 0; j <= d; ++j) {
            // z chart: m_j = z^j; w chart: reversed, m̃_j = w^{d-j}.
            int col = offsets_[a] + (x.chart == Chart::Z ? j : d - j);
            rows(a, col) = power;
            power *= x.coordinate;
        }
    }
    return rows;
}

Matrix BundleModel::derivative_row(const ChartPoint& x) const {
    Matrix rows = Matrix::Zero(rank(), dim_);
    for (int a = 0; a < rank(); ++a) {
        int d = summands_[a].degree;
        Complex power(1.0, 0.0);
        for (int j = 1; j <= d; ++j) {
            int col = offsets_[a] + (x.chart == Chart::Z ? j : d - j);
            rows(a, col) = static_cast<double>(j) * power;
            power *= x.coordinate;
        }
    }
    return rows;
}

std::vector<double> BundleModel::weight_at(const ChartPoint& x) const {
    std::vector<double> w;
    w.reserve(summands_.size());
    for (const Summand& s : summands_)
        w.push_back(s.weight.at(x.chart, x.coordinate, s.degree));
    return w;
}

void BundleModel::require_line_bundle() const {
    if (rank() != 1)
        throw RankMismatch("operation requires a line bundle (rank 1)");
}

JetRow jet_row(const BundleModel& model, const ChartPoint& x) {
    model.require_line_bundle();
    return {model.evaluation_row(x).row(0), model.derivative_row(x).row(0)};
}

std::vector<ChartPoint> validation_grid(int n_radii, int n_angles) {
    if (n_radii < 1 || n_angles < 1)
        throw ValidationError("BadGrid", "grid needs n_radii, n_angles >= 1");
    std::vector<ChartPoint> points;
    points.push_back({Chart::Z, {0.0, 0.0}});
    points.push_back({Chart::W, {0.0, 0.0}});
    for (Chart chart : {Chart::Z, Chart::W}) {
        for (int a = 1; a <= n_radii; ++a) {
            double r = static_cast<double>(a) / n_radii;
            if (chart == Chart::W && std::abs(r - 1.0) < 1e-15)
                continue;  // overlap circle already covered by chart Z
            for (int k = 0; k < n_angles; ++k) {
                double theta = 2.0 * M_PI * k / n_angles;
                points.push_back({chart, std::polar(r, theta)});
            }
        }
    }
    return points;
}

}  // namespace blab
