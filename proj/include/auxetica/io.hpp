#pragma once

// Framework and path files (JSON), Gram-trace CSV.

#include <map>
#include <string>
#include <vector>

#include "auxetica/path.hpp"

namespace auxetica {

inline constexpr int kFormatVersion = 1;

struct FrameworkFile {
  PeriodicFramework framework;
  std::map<std::string, std::string> metadata;
};

struct LoadOptions {
  /// Unknown fields are errors instead of warnings.
  bool strict = false;
};

/// Parses a framework file. Syntax and schema errors throw ParseError with
/// the line and column of the offending value, a wrong format_version throws
/// VersionMismatch and a framework failing validate throws InvalidInput
/// listing the violations. Edge lengths, when absent, are measured on the
/// placement. Warnings for ignored fields are appended to `warnings`.
FrameworkFile parse_framework(const std::string& text, const LoadOptions& options = {},
                              std::vector<std::string>* warnings = nullptr);

/// Deterministic text with 17 significant digits, so that
/// save(load(save(f))) == save(f) byte for byte.
std::string format_framework(const FrameworkFile& file);
std::string format_framework(const PeriodicFramework& f);

/// A path file holds the initial framework and the samples
/// {tau, positions (one list per vertex), lattice (columns), gram_velocity?}.
DeformationPath parse_path(const std::string& text, const LoadOptions& options = {},
                           std::vector<std::string>* warnings = nullptr);
std::string format_path(const DeformationPath& p);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

FrameworkFile load_framework(const std::string& path, const LoadOptions& options = {},
                             std::vector<std::string>* warnings = nullptr);
void save_framework(const std::string& path, const FrameworkFile& file);
DeformationPath load_path(const std::string& path, const LoadOptions& options = {},
                          std::vector<std::string>* warnings = nullptr);
void save_path(const std::string& path, const DeformationPath& p);

struct GramTraceRow {
  double tau = 0.0;
  SymMatrixd omega;
  double det = 0.0;
  double min_eig_velocity = 0.0;
};

std::vector<GramTraceRow> gram_trace(const DeformationPath& p);

/// Columns tau, w11, w12, ..., wdd (upper triangle, row-major), det,
/// min_eig_dw; fixed 12 decimals.
std::string format_gram_trace_csv(const std::vector<GramTraceRow>& rows);
std::vector<GramTraceRow> parse_gram_trace_csv(const std::string& text);

/// Path PSD verdict from the min_eig_dw column.
PsdCheck check_trace_psd(const std::vector<GramTraceRow>& rows, double tol = kDefaultConeTol);

}  // namespace auxetica
