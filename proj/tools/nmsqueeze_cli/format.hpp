#pragma once

#include <string>

#include <json.hpp>

#include "nmsqueeze/circulant.hpp"

namespace nmsqueeze::cli {

using Json = nlohmann::ordered_json;

/// Shortest representation that round-trips to the same double.
std::string format_double(double value);

/// Row-major nested array.
Json matrix_json(const Matrix& m);

/// "# name" followed by one CSV line per row.
std::string matrix_csv_block(const std::string& name, const Matrix& m);

}  // namespace nmsqueeze::cli
