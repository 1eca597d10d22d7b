// Copyright 2026 The topicdrift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topicdrift::textio {

// Shortest decimal text that round-trips.
std::string format_double(double value);

// Exact hexadecimal float text ("0x1.5555555555555p-5").
std::string format_hex(double value);

// Accepts decimal or hexadecimal (with "0x" prefix) text.
std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_u64(std::string_view text);
std::optional<std::int64_t> parse_i64(std::string_view text);

std::string read_file(const std::filesystem::path& path);

// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

// RFC 4180: quote fields containing a comma, quote or line break.
std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace topicdrift::textio
