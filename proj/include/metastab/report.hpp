#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "metastab/catalog.hpp"
#include "metastab/spectra.hpp"
#include "metastab/validator.hpp"

namespace metastab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "metastab/1";

// Deterministic text: insertion-ordered keys, doubles as %.17g, infinities
// as the strings "inf" / "-inf".
std::string dump_json(const Json& j, int indent = 2);

Json number(double v);
Json matrix_json(const Eigen::MatrixXd& m);

Json analysis_json(const Analysis& an, const std::vector<double>& h_list);
Json validation_json(const ValidationReport& vr);
Json example_json(const Example& ex, const Analysis& an, const std::vector<double>& h_list,
                  const std::optional<ValidationReport>& vr);
Json error_json(const std::string& kind, const std::string& message);

// Rows h,index,predicted,numeric; index 0 is the zero mode.
std::string plots_csv(const ValidationReport& vr);

// x,phi rows on [a, b] with the given spacing.
std::string samples_csv(const Landscape1D& l, double step);

}  // namespace metastab
