#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sigfuse {

using json = nlohmann::json;

// Calls fn(line, line_number) for every non-empty line. Throws ParseError
// if the file cannot be opened.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(const std::string&, std::size_t)>& fn);

std::vector<json> read_jsonl(const std::filesystem::path& path);

// One compact JSON object per line.
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sigfuse
