#pragma once

#include <filesystem>
#include <string>
#include <vector>
#include <nlohmann/json.hpp>

namespace holosim {

using ordered_json = nlohmann::ordered_json;

/// 12 significant digits, locale-independent.
std::string format_double(double v);

/// Comma-separated, header row, LF endings, UTF-8, doubles at 12 significant
/// digits. Creates parent directories.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::filesystem::path& path, const std::string& body);

/// Stable field ordering (insertion order), 2-space indent, trailing newline.
void write_json(const std::filesystem::path& path, const ordered_json& j);

std::string read_file(const std::filesystem::path& path);

}  // namespace holosim
