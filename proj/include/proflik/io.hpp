#pragma once

#include <string>

#include "proflik/samples.hpp"

namespace proflik {

// CSV ingestion. All readers require a header row; numbers use `.` decimals.
// Column conventions: scalar data `y`; vector data `y1..yd`; regression data
// `x1..xq,y`. Violations report InvalidInput.
ScalarSample read_scalar_csv(const std::string& path);
VectorSample read_vector_csv(const std::string& path);
RegressionSample read_regression_csv(const std::string& path);

std::string scalar_to_csv(const ScalarSample& sample);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace proflik
