#include "blab/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace blab {

namespace fs = std::filesystem;

Complex parse_complex(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("BadComplex", "complex scalars must be [re, im]");
    double re = j[0].get<double>();
    double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw ValidationError("BadComplex", "complex entries must be finite");
    return {re, im};
}

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Matrix parse_complex_matrix(const Json& j) {
    if (!j.is_array() || j.empty())
        throw ValidationError("BadMatrix", "matrix must be a nonempty array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols)
            throw ValidationError("BadMatrix", "matrix rows have unequal lengths");
        for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

namespace {

MetricWeight parse_weight(const Json& j) {
    MetricWeight weight;
    if (j.is_string() && j.get<std::string>() == "fubini-study") {
        weight.kind = MetricWeight::Kind::FubiniStudyPower;
        return weight;
    }
    if (j.is_object() && j.contains("custom")) {
        std::string name = j["custom"].get<std::string>();
        if (name == "fs-tilted") {
            weight.kind = MetricWeight::Kind::FsTilted;
            if (j.contains("tilt")) weight.tilt = j["tilt"].get<double>();
            return weight;
        }
        throw UnsupportedWeight("unknown custom weight '" + name + "'");
    }
    throw UnsupportedWeight("weight must be \"fubini-study\" or {\"custom\": …}");
}

}  // namespace

BundleModel parse_bundle(const Json& j) {
    if (!j.is_object() || !j.contains("summands"))
        throw ValidationError("BadBundle", "bundle needs a 'summands' array");
    std::vector<Summand> summands;
    for (const Json& s : j["summands"]) {
        Summand summand;
        summand.degree = s.at("degree").get<int>();
        if (s.contains("weight")) summand.weight = parse_weight(s["weight"]);
        summands.push_back(summand);
    }
    return BundleModel(std::move(summands));
}

DualInnerProduct parse_inner_product(const Json& j, const BundleModel& model,
                                     const ToleranceSpec& tol) {
    bool has_q = j.contains("Q");
    bool has_pair = j.contains("V_basis") || j.contains("gram");
    if (has_q == has_pair)
        throw ValidationError("BadInnerProduct",
                              "give exactly one of 'Q' or 'V_basis'+'gram'");
    if (has_q) {
        Matrix q = parse_complex_matrix(j["Q"]);
        if (q.rows() != model.dim())
            throw RankMismatch("Q dimension does not match bundle model");
        return {require_hermitian(q, tol)};
    }
    Matrix gram = parse_complex_matrix(j.at("gram"));
    Matrix basis = j.contains("V_basis")
                       ? parse_complex_matrix(j["V_basis"])
                       : Matrix(Matrix::Identity(model.dim(), model.dim()));
    if (basis.rows() != model.dim())
        throw RankMismatch("V_basis row count does not match bundle model");
    return delta({basis, gram}, tol);
}

ChartPoint parse_chart_point(const Json& j) {
    ChartPoint x;
    std::string chart = j.at("chart").get<std::string>();
    if (chart == "Z")
        x.chart = Chart::Z;
    else if (chart == "W")
        x.chart = Chart::W;
    else
        throw ValidationError("BadChart", "chart must be \"Z\" or \"W\"");
    x.coordinate = parse_complex(j.at("coordinate"));
    return x;
}

Json chart_point_to_json(const ChartPoint& x) {
    return Json{{"chart", x.chart == Chart::Z ? "Z" : "W"},
                {"coordinate", complex_to_json(x.coordinate)}};
}

GridSpec parse_grid(const Json& j) {
    GridSpec grid;
    if (j.contains("n_radii")) grid.n_radii = j["n_radii"].get<int>();
    if (j.contains("n_angles")) grid.n_angles = j["n_angles"].get<int>();
    if (j.contains("positivity_tol"))
        grid.positivity_tol = j["positivity_tol"].get<double>();
    return grid;
}

Json classification_to_json(const ClassificationReport& report) {
    return Json{
        {"inertia",
         {{"p", report.inertia.p}, {"q", report.inertia.q}, {"z", report.inertia.z}}},
        {"kappa_min_on_grid", report.kappa_min_on_grid},
        {"curvature_min_on_grid", report.curvature_min_on_grid},
        {"rather_ample", report.rather_ample},
        {"in_delta_HE", report.in_delta_HE},
        {"in_A_E", report.in_A_E},
        {"in_P_E", report.in_P_E},
        {"grid",
         {{"n_radii", report.grid.n_radii},
          {"n_angles", report.grid.n_angles},
          {"positivity_tol", report.grid.positivity_tol}}}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void atomic_write(const fs::path& file, const std::string& content) {
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, file);
}

void write_report(const fs::path& out_dir, const Json& report) {
    atomic_write(out_dir / "report.json", report.dump(2) + "\n");
}

}  // namespace

void emit_grid_csv(const fs::path& file, const std::vector<ChartPoint>& points,
                   const std::vector<std::vector<double>>& value_columns,
                   const std::vector<std::string>& value_headers) {
    if (points.empty()) throw IoError("refusing to write an empty sample grid");
    if (value_columns.size() != value_headers.size())
        throw IoError("value column/header count mismatch");
    for (const auto& col : value_columns)
        if (col.size() != points.size())
            throw IoError("value column length does not match point count");

    std::ostringstream out;
    out << "chart,re_coord,im_coord";
    for (const std::string& h : value_headers) out << ',' << h;
    out << '\n';
    for (size_t i = 0; i < points.size(); ++i) {
        out << (points[i].chart == Chart::Z ? 'Z' : 'W') << ','
            << format_double(points[i].coordinate.real()) << ','
            << format_double(points[i].coordinate.imag());
        for (const auto& col : value_columns) out << ',' << format_double(col[i]);
        out << '\n';
    }
    atomic_write(file, out.str());
}

KappaSamples read_kappa_csv(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv " + file.string());

    KappaSamples samples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string chart, re, im, value;
        if (!std::getline(row, chart, ',') || !std::getline(row, re, ',') ||
            !std::getline(row, im, ',') || !std::getline(row, value, ','))
            throw IoError("malformed csv row: " + line);
        ChartPoint x;
        if (chart == "Z")
            x.chart = Chart::Z;
        else if (chart == "W")
            x.chart = Chart::W;
        else
            throw IoError("unknown chart in csv: " + chart);
        x.coordinate = Complex(std::stod(re), std::stod(im));
        samples.points.push_back(x);
        samples.values.push_back(std::stod(value));
    }
    return samples;
}

namespace {

Json example62_report(int degree, const std::vector<double>& t_values) {
    Json report;
    report["task"] = "example62";
    report["d"] = degree;

    BundleModel model = power_bundle(degree);
    int n = degree + 1;
    Matrix direction = Matrix::Zero(n, n);
    direction(2, 2) = Complex(1.0, 0.0);

    PathSpec path;
    path.q_start = example62_q(degree, 0.0);
    path.q_direction = {direction};
    for (double t : t_values)
        if (t > 0.0) path.t_values.push_back(t * t);  // Q_t = Q_0 + t² e₂e₂*

    GridSpec grid;
    PathReport path_report = degeneration_path(model, path, grid, {});
    Json steps = Json::array();
    size_t step_idx = 0;
    for (double t : t_values) {
        if (!(t > 0.0)) continue;
        const PathStep& step = path_report.steps[step_idx++];
        steps.push_back({{"t", t},
                         {"classification", classification_to_json(step.report)},
                         {"log_kappa_distance_to_limit",
                          step.log_kappa_distance_to_limit}});
    }
    report["steps"] = steps;
    report["limit"] = classification_to_json(path_report.limit_report);
    report["limit_recovered_Q"] = matrix_to_json(path_report.recovered_limit_q.q);
    report["limit_recovery_error"] = path_report.limit_recovery_error;
    report["limit_in_A_E"] = path_report.limit_report.in_A_E;
    report["limit_in_delta_HE"] = path_report.limit_report.in_delta_HE;
    return report;
}

std::vector<std::string> complex_matrix_headers(const std::string& stem, int r) {
    std::vector<std::string> headers;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::string suffix =
                r == 1 ? "" : "_" + std::to_string(i) + std::to_string(j);
            headers.push_back("re_" + stem + suffix);
            headers.push_back("im_" + stem + suffix);
        }
    return headers;
}

void run_task(const Json& scenario, const fs::path& out_dir, Json& report) {
    ToleranceSpec tol;
    if (scenario.contains("tolerances")) {
        const Json& t = scenario["tolerances"];
        if (t.contains("rank_tol")) tol.rank_tol = t["rank_tol"].get<double>();
        if (t.contains("residual_tol"))
            tol.residual_tol = t["residual_tol"].get<double>();
    }
    std::string task = scenario.at("task").get<std::string>();
    report["task"] = task;

    if (task == "example62") {
        int degree = scenario.at("d").get<int>();
        std::vector<double> ts = scenario.at("t_values").get<std::vector<double>>();
        report.update(example62_report(degree, ts));
        return;
    }

    BundleModel model = parse_bundle(scenario.at("bundle"));
    GridSpec grid = scenario.contains("grid") ? parse_grid(scenario["grid"])
                                              : GridSpec{};

    if (task == "fit") {
        KappaSamples samples =
            read_kappa_csv(fs::path(scenario.at("input_csv").get<std::string>()));
        DualInnerProduct q = fit_q_from_kappa(model, samples, tol);
        report["Q"] = matrix_to_json(q.q);
        Inertia inertia = classify_inertia(q, tol);
        report["inertia"] = {{"p", inertia.p}, {"q", inertia.q}, {"z", inertia.z}};
        return;
    }

    DualInnerProduct q = parse_inner_product(scenario.at("inner_product"), model, tol);

    if (task == "kernel" || task == "section") {
        std::vector<ChartPoint> points = validation_grid(grid.n_radii, grid.n_angles);
        int r = model.rank();
        std::vector<std::vector<double>> columns(2 * r * r);
        for (const ChartPoint& x : points) {
            Matrix k = bergman_section(model, q, x, tol);
            int col = 0;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    columns[col++].push_back(k(i, j).real());
                    columns[col++].push_back(k(i, j).imag());
                }
        }
        std::string stem = task == "kernel" ? "K" : "k";
        emit_grid_csv(out_dir / (task + ".csv"), points, columns,
                      complex_matrix_headers(stem, r));
        report["csv"] = task + ".csv";
        if (task == "kernel" && scenario.contains("nodes")) {
            // Two-point kernel matrix over explicit chart-Z nodes.
            std::vector<Complex> nodes;
            for (const Json& nj : scenario["nodes"]) nodes.push_back(parse_complex(nj));
            int n = static_cast<int>(nodes.size());
            Matrix kmat(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    kmat(i, j) = kernel_at(model, q, {Chart::Z, nodes[i]},
                                           {Chart::Z, nodes[j]}, tol)
                                     .value(0, 0);
            report["kernel_matrix"] = matrix_to_json(kmat);
        }
        return;
    }

    if (task == "kappa") {
        model.require_line_bundle();
        KappaSamples samples =
            kappa_on_grid(model, q, kappa_fit_grid(model.summands()[0].degree), tol);
        emit_grid_csv(out_dir / "kappa.csv", samples.points, {samples.values},
                      {"kappa"});
        report["csv"] = "kappa.csv";
        return;
    }

    if (task == "spectrum") {
        ChartPoint x = parse_chart_point(scenario.at("point"));
        SubspaceWithForm pair = delta_inverse(q, tol);
        try {
            PointSpectrum spectrum = point_spectrum(model, pair, x, tol);
            SumRuleReport sums = verify_sum_rule(model, pair, x, tol);
            report["x"] = chart_point_to_json(x);
            report["p"] = spectrum.p;
            report["q"] = spectrum.q;
            Json kl = Json::array();
            for (int i = 0; i < spectrum.kappa_l.size(); ++i)
                kl.push_back(spectrum.kappa_l[i]);
            report["kappa_l"] = kl;
            report["diagonalizable"] = spectrum.diagonalizable;
            report["kappa_direct"] = sums.kappa_direct;
            report["kappa_sum"] = sums.kappa_sum;
        } catch (const PencilDegenerate&) {
            report["x"] = chart_point_to_json(x);
            report["diagonalizable"] = false;
            report["trace_fallback"] = trace_fallback(model, pair, x, tol);
            throw;
        }
        return;
    }

    if (task == "classify") {
        report["classification"] = classification_to_json(classify(model, q, grid, tol));
        return;
    }

    if (task == "fs" || task == "phi") {
        LogKappaSamples samples;
        if (task == "fs") {
            const Json& ip = scenario.at("inner_product");
            if (!ip.contains("gram") || ip.contains("V_basis"))
                throw ValidationError("BadInnerProduct",
                                      "fs needs a full-space 'gram' inner product");
            samples = fs_map(model, parse_complex_matrix(ip["gram"]), grid, tol);
        } else {
            samples = phi_map(model, q, grid, tol);
        }
        emit_grid_csv(out_dir / "logkappa.csv", samples.points, {samples.values},
                      {"log_kappa"});
        report["csv"] = "logkappa.csv";
        return;
    }

    if (task == "path") {
        PathSpec path;
        path.q_start = q;
        path.q_direction = parse_inner_product(scenario.at("direction"), model, tol);
        path.t_values = scenario.at("t_values").get<std::vector<double>>();
        PathReport path_report = degeneration_path(model, path, grid, tol);
        Json steps = Json::array();
        for (const PathStep& step : path_report.steps)
            steps.push_back({{"t", step.t},
                             {"classification", classification_to_json(step.report)},
                             {"log_kappa_distance_to_limit",
                              step.log_kappa_distance_to_limit}});
        report["steps"] = steps;
        report["limit"] = classification_to_json(path_report.limit_report);
        report["limit_recovered_Q"] = matrix_to_json(path_report.recovered_limit_q.q);
        report["limit_recovery_error"] = path_report.limit_recovery_error;
        return;
    }

    throw ValidationError("UnknownTask", "unrecognized task '" + task + "'");
}

}  // namespace

int run_scenario(const fs::path& scenario_file, const fs::path& out_dir) {
    Json report;
    report["scenario"] = scenario_file.string();
    try {
        std::ifstream in(scenario_file);
        if (!in) throw IoError("cannot open scenario " + scenario_file.string());
        Json scenario;
        try {
            in >> scenario;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("BadJson", e.what());
        }
        if (!scenario.contains("seed") || !scenario["seed"].is_number_integer())
            throw ValidationError("MissingSeed", "scenario needs an integer 'seed'");
        report["seed"] = scenario["seed"];

        fs::create_directories(out_dir);
        try {
            run_task(scenario, out_dir, report);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("BadSchema", e.what());
        }
        report["status"] = "ok";
        write_report(out_dir, report);
        return 0;
    } catch (const MathError& e) {
        report["status"] = "math-error";
        report["error"] = e.name();
        report["message"] = e.what();
        fs::create_directories(out_dir);
        write_report(out_dir, report);
        return 3;
    } catch (const Error& e) {
        report["status"] = "validation-error";
        report["error"] = e.name();
        report["message"] = e.what();
        fs::create_directories(out_dir);
        write_report(out_dir, report);
        return 2;
    }
}

int run_example62(int degree, const std::vector<double>& t_values,
                  const fs::path& out_dir) {
    fs::create_directories(out_dir);
    Json report;
    report["task"] = "example62";
    report["d"] = degree;
    try {
        report = example62_report(degree, t_values);
        report["status"] = "ok";
        write_report(out_dir, report);
        return 0;
    } catch (const MathError& e) {
        report["status"] = "math-error";
        report["error"] = e.name();
        report["message"] = e.what();
        write_report(out_dir, report);
        return 3;
    } catch (const Error& e) {
        report["status"] = "validation-error";
        report["error"] = e.name();
        report["message"] = e.what();
        write_report(out_dir, report);
        return 2;
    }
}

}  // namespace blab
