#pragma once

#include "gksvm/solvers.hpp"
#include "gksvm/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace gksvm {

/// %.17g: enough digits to round-trip any double.
std::string format_double(double v);

/// CSV with header `x1,...,xd,y`. A trailing `y` column is read as the label; every other column
/// is a feature. Unlabeled point clouds (no `y` column) leave Dataset::y empty.
Dataset read_csv(const std::filesystem::path& path);
Dataset parse_csv(std::istream& in, const std::string& source_name);
void write_csv(const std::filesystem::path& path, const Dataset& data);

nlohmann::json model_to_json(const FittedModel& model);
FittedModel model_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gksvm
