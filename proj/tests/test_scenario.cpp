#include <doctest.h>

#include <fstream>

#include "blab/scenario.hpp"

using namespace blab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("blab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_scenario(const fs::path& dir, const Json& scenario) {
    fs::path file = dir / "scenario.json";
    std::ofstream out(file);
    out << scenario.dump(2);
    return file;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json read_report(const fs::path& dir) {
    return Json::parse(slurp(dir / "report.json"));
}

Json identity_q(int n) {
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < n; ++j)
            row.push_back(Json::array({i == j ? 1.0 : 0.0, 0.0}));
        rows.push_back(row);
    }
    return rows;
}

Json line_bundle_json(int d) {
    return Json{{"summands", Json::array({Json{{"degree", d}}})}};
}

}  // namespace

TEST_CASE("complex and matrix json") {
    CHECK(parse_complex(Json::array({1.5, -2.0})) == Complex(1.5, -2.0));
    CHECK_THROWS_AS(parse_complex(Json::array({1.0})), ValidationError);
    CHECK_THROWS_AS(parse_complex(Json("1")), ValidationError);

    Matrix m(2, 2);
    m << Complex(1, 2), Complex(0, 0), Complex(3, -1), Complex(0.5, 0);
    Matrix back = parse_complex_matrix(matrix_to_json(m));
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(parse_complex_matrix(Json::array()), ValidationError);
}

TEST_CASE("bundle and inner product parsing") {
    SUBCASE("summands and weights") {
        Json j{{"summands",
                Json::array({Json{{"degree", 2}, {"weight", "fubini-study"}},
                             Json{{"degree", 3},
                                  {"weight", Json{{"custom", "fs-tilted"},
                                                  {"tilt", 0.05}}}}})}};
        BundleModel model = parse_bundle(j);
        CHECK(model.rank() == 2);
        CHECK(model.dim() == 7);
        CHECK(model.summands()[1].weight.kind == MetricWeight::Kind::FsTilted);
        CHECK(model.summands()[1].weight.tilt == 0.05);
    }
    SUBCASE("unknown weights are rejected") {
        Json j{{"summands",
                Json::array({Json{{"degree", 1},
                                  {"weight", Json{{"custom", "flat"}}}}})}};
        CHECK_THROWS_AS(parse_bundle(j), UnsupportedWeight);
    }
    SUBCASE("Q and pair routes agree through duality") {
        BundleModel model = parse_bundle(line_bundle_json(1));
        DualInnerProduct via_q =
            parse_inner_product(Json{{"Q", identity_q(2)}}, model);
        DualInnerProduct via_pair =
            parse_inner_product(Json{{"gram", identity_q(2)}}, model);
        CHECK((via_q.q - via_pair.q).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("exactly one inner-product form") {
        BundleModel model = parse_bundle(line_bundle_json(1));
        CHECK_THROWS_AS(parse_inner_product(Json::object(), model), ValidationError);
        CHECK_THROWS_AS(parse_inner_product(
                            Json{{"Q", identity_q(2)}, {"gram", identity_q(2)}}, model),
                        ValidationError);
    }
    SUBCASE("chart points") {
        ChartPoint x = parse_chart_point(
            Json{{"chart", "W"}, {"coordinate", Json::array({0.5, -0.5})}});
        CHECK(x.chart == Chart::W);
        CHECK(x.coordinate == Complex(0.5, -0.5));
        CHECK_THROWS_AS(parse_chart_point(Json{{"chart", "X"},
                                               {"coordinate", Json::array({0, 0})}}),
                        ValidationError);
    }
}

TEST_CASE("csv round trip and determinism") {
    fs::path dir = fresh_dir("csv");
    std::vector<ChartPoint> points = validation_grid(2, 3);
    std::vector<double> values;
    for (size_t i = 0; i < points.size(); ++i)
        values.push_back(0.1 * double(i) + 1.0 / 3.0);

    emit_grid_csv(dir / "a.csv", points, {values}, {"kappa"});
    emit_grid_csv(dir / "b.csv", points, {values}, {"kappa"});
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv").rfind("chart,re_coord,im_coord,kappa\n", 0) == 0);

    KappaSamples back = read_kappa_csv(dir / "a.csv");
    REQUIRE(back.points.size() == points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        CHECK(back.points[i].chart == points[i].chart);
        CHECK(back.points[i].coordinate == points[i].coordinate);
        CHECK(back.values[i] == values[i]);  // 17 digits survive the round trip
    }
}

TEST_CASE("run_scenario exit codes") {
    SUBCASE("missing seed") {
        fs::path dir = fresh_dir("noseed");
        Json scenario{{"task", "classify"},
                      {"bundle", line_bundle_json(1)},
                      {"inner_product", Json{{"Q", identity_q(2)}}}};
        CHECK(run_scenario(write_scenario(dir, scenario), dir / "out") == 2);
        Json report = read_report(dir / "out");
        CHECK(report["status"] == "validation-error");
        CHECK(report["error"] == "MissingSeed");
    }
    SUBCASE("non-hermitian Q") {
        fs::path dir = fresh_dir("nonherm");
        Json q = identity_q(2);
        q[0][1] = Json::array({1.0, 0.0});  // upper entry without its mirror
        Json scenario{{"seed", 1},
                      {"task", "classify"},
                      {"bundle", line_bundle_json(1)},
                      {"inner_product", Json{{"Q", q}}}};
        CHECK(run_scenario(write_scenario(dir, scenario), dir / "out") == 2);
        CHECK(read_report(dir / "out")["status"] == "validation-error");
    }
    SUBCASE("degenerate pencil reports the trace fallback") {
        fs::path dir = fresh_dir("pencil");
        Json q = identity_q(2);
        q[1][1] = Json::array({-1.0, 0.0});
        Json scenario{{"seed", 7},
                      {"task", "spectrum"},
                      {"bundle", line_bundle_json(1)},
                      {"inner_product", Json{{"Q", q}}},
                      {"point", Json{{"chart", "Z"},
                                     {"coordinate", Json::array({1.0, 0.0})}}}};
        CHECK(run_scenario(write_scenario(dir, scenario), dir / "out") == 3);
        Json report = read_report(dir / "out");
        CHECK(report["status"] == "math-error");
        CHECK(report["error"] == "PencilDegenerate");
        CHECK(report["diagonalizable"] == false);
        CHECK(std::abs(report["trace_fallback"].get<double>()) < 1e-12);
    }
    SUBCASE("unknown task") {
        fs::path dir = fresh_dir("unknown");
        Json scenario{{"seed", 1},
                      {"task", "frobnicate"},
                      {"bundle", line_bundle_json(1)},
                      {"inner_product", Json{{"Q", identity_q(2)}}}};
        CHECK(run_scenario(write_scenario(dir, scenario), dir / "out") == 2);
    }
}

TEST_CASE("successful tasks") {
    SUBCASE("spectrum at the origin") {
        fs::path dir = fresh_dir("spectrum");
        Json scenario{{"seed", 3},
                      {"task", "spectrum"},
                      {"bundle", line_bundle_json(1)},
                      {"inner_product", Json{{"Q", identity_q(2)}}},
                      {"point", Json{{"chart", "Z"},
                                     {"coordinate", Json::array({0.0, 0.0})}}}};
        REQUIRE(run_scenario(write_scenario(dir, scenario), dir / "out") == 0);
        Json report = read_report(dir / "out");
        CHECK(report["p"] == 2);
        CHECK(report["q"] == 0);
        CHECK(report["kappa_l"][0].get<double>() == doctest::Approx(0.0));
        CHECK(report["kappa_l"][1].get<double>() == doctest::Approx(1.0));
        CHECK(report["kappa_direct"].get<double>() == doctest::Approx(1.0));
    }
    SUBCASE("classify identity") {
        fs::path dir = fresh_dir("classify");
        Json scenario{{"seed", 5},
                      {"task", "classify"},
                      {"bundle", line_bundle_json(4)},
                      {"grid", Json{{"n_radii", 4}, {"n_angles", 8}}},
                      {"inner_product", Json{{"Q", identity_q(5)}}}};
        REQUIRE(run_scenario(write_scenario(dir, scenario), dir / "out") == 0);
        Json c = read_report(dir / "out")["classification"];
        CHECK(c["in_delta_HE"] == true);
        CHECK(c["in_A_E"] == true);
        CHECK(c["in_P_E"] == true);
    }
    SUBCASE("kappa csv feeds the fit task and recovers Q") {
        fs::path dir = fresh_dir("roundtrip");
        Json q = identity_q(5);
        q[2][2] = Json::array({0.0625, 0.0});  // t = 1/4
        Json kappa{{"seed", 11},
                   {"task", "kappa"},
                   {"bundle", line_bundle_json(4)},
                   {"inner_product", Json{{"Q", q}}}};
        REQUIRE(run_scenario(write_scenario(dir, kappa), dir / "out1") == 0);

        Json fit{{"seed", 12},
                 {"task", "fit"},
                 {"bundle", line_bundle_json(4)},
                 {"input_csv", (dir / "out1" / "kappa.csv").string()}};
        fs::path fit_file = dir / "fit.json";
        {
            std::ofstream out(fit_file);
            out << fit.dump(2);
        }
        REQUIRE(run_scenario(fit_file, dir / "out2") == 0);
        Matrix recovered =
            parse_complex_matrix(read_report(dir / "out2")["Q"]);
        Matrix expected = parse_complex_matrix(q);
        CHECK((recovered - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("byte-identical reruns") {
        fs::path dir = fresh_dir("determinism");
        Json scenario{{"seed", 42},
                      {"task", "phi"},
                      {"bundle", line_bundle_json(3)},
                      {"grid", Json{{"n_radii", 3}, {"n_angles", 6}}},
                      {"inner_product", Json{{"Q", identity_q(4)}}}};
        fs::path file = write_scenario(dir, scenario);
        REQUIRE(run_scenario(file, dir / "out1") == 0);
        REQUIRE(run_scenario(file, dir / "out2") == 0);
        CHECK(slurp(dir / "out1" / "logkappa.csv") ==
              slurp(dir / "out2" / "logkappa.csv"));
        CHECK(slurp(dir / "out1" / "report.json") ==
              slurp(dir / "out2" / "report.json"));
    }
}

TEST_CASE("built-in degeneration scenario") {
    fs::path dir = fresh_dir("example62");
    REQUIRE(run_example62(4, {1.0, 0.5, 0.25, 0.125}, dir) == 0);
    Json report = read_report(dir);
    CHECK(report["status"] == "ok");
    CHECK(report["limit_in_A_E"] == true);
    CHECK(report["limit_in_delta_HE"] == false);
    CHECK(report["limit_recovery_error"].get<double>() < 1e-8);
    REQUIRE(report["steps"].size() == 4);
    double previous = std::numeric_limits<double>::infinity();
    for (const Json& step : report["steps"]) {
        CHECK(step["classification"]["in_delta_HE"] == true);
        double dist = step["log_kappa_distance_to_limit"].get<double>();
        CHECK(dist < previous);
        previous = dist;
    }
    SUBCASE("degree below four is a validation error") {
        fs::path bad = fresh_dir("example62_bad");
        CHECK(run_example62(3, {1.0}, bad) == 2);
        CHECK(read_report(bad)["status"] == "validation-error");
    }
}
