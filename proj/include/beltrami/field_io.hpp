#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "beltrami/field.hpp"

namespace beltrami {

/// CF1: "CF1\0", u32 LE n, f64 LE L, then n*n (re, im) f64 LE pairs.
void write_cf1(const std::filesystem::path& path, const ComplexField& f);
ComplexField read_cf1(const std::filesystem::path& path);

/// RM1: same header with magic "RM1\0", then n*n bytes of 0/1.
void write_rm1(const std::filesystem::path& path, const RegionMask& mask);
RegionMask read_rm1(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace beltrami
