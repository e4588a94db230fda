#pragma once

#include <filesystem>
#include <map>

#include "heatba/circle.hpp"

namespace heatba::io {

/// Two-column (x,value) or three-column (x,re,im) CSV with one header line.
SampledFunction load_sampled_csv(const std::filesystem::path& path,
                                 Extension policy = Extension::ConstantExtend);
void save_sampled_csv(const std::filesystem::path& path, const SampledFunction& u);

/// Field rows are "x,y,re,im" after a content-tag comment line; `meta` goes
/// into the comment verbatim (config hash, grid).
void save_field_csv(const std::filesystem::path& path, const HalfPlaneField& field,
                    const std::string& meta = {});

void save_disk_csv(const std::filesystem::path& path, const circle::DiskField& disk,
                   const std::string& meta = {});

void save_report_txt(const std::filesystem::path& path, const DiagnosticsReport& r,
                     const std::string& meta = {});
void save_report_csv(const std::filesystem::path& path, const DiagnosticsReport& r,
                     const std::string& meta = {});
void save_keyvalue_txt(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& kv,
                       const std::string& meta = {});
void save_keyvalue_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& kv,
                       const std::string& meta = {});

void save_profile_csv(const std::filesystem::path& path,
                      std::span<const VanishingEntry> profile,
                      const std::string& meta = {});
void save_carleson_csv(const std::filesystem::path& path, const CarlesonProfile& prof,
                       const std::string& meta = {});
void save_gateaux_csv(const std::filesystem::path& path,
                      std::span<const GateauxRow> rows, const std::string& meta = {});

/// (x, re, im) sweeps of the five kernels for documentation plots.
void save_kernel_sweep(const std::filesystem::path& path, double x_max = 8.0,
                       std::size_t n = 2001);

/// Flat key=value config text; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// FNV-1a over the canonical (sorted key=value) form.
std::uint64_t config_hash(const std::map<std::string, std::string>& kv);

}  // namespace heatba::io
