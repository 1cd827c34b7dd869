#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "blab/fubini_study.hpp"

namespace blab {

using Json = nlohmann::ordered_json;

// JSON <-> domain conversions. Complex scalars are [re, im] pairs.

Complex parse_complex(const Json& j);
Json complex_to_json(const Complex& c);
Matrix parse_complex_matrix(const Json& j);
Json matrix_to_json(const Matrix& m);

BundleModel parse_bundle(const Json& j);
DualInnerProduct parse_inner_product(const Json& j, const BundleModel& model,
                                     const ToleranceSpec& tol = {});
ChartPoint parse_chart_point(const Json& j);
Json chart_point_to_json(const ChartPoint& x);
GridSpec parse_grid(const Json& j);
Json classification_to_json(const ClassificationReport& report);

/// Deterministic float text: 17 significant digits, '.' decimal.
std::string format_double(double v);

/// Writes chart, re(coord), im(coord), value columns; byte-identical for
/// identical inputs, atomic via temp-file rename.
void emit_grid_csv(const std::filesystem::path& file,
                   const std::vector<ChartPoint>& points,
                   const std::vector<std::vector<double>>& value_columns,
                   const std::vector<std::string>& value_headers);

KappaSamples read_kappa_csv(const std::filesystem::path& file);

/// Runs one scenario file, writing report.json (and task CSVs) under out_dir.
/// Returns the process exit code: 0 success, 2 validation error,
/// 3 mathematical degeneracy.
int run_scenario(const std::filesystem::path& scenario_file,
                 const std::filesystem::path& out_dir);

/// The built-in degeneration scenario: classify the family
/// diag(1, 1, t², 1, …, 1) for each t and analyze the t → 0 limit.
int run_example62(int degree, const std::vector<double>& t_values,
                  const std::filesystem::path& out_dir);

}  // namespace blab
