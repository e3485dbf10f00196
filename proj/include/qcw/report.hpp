#pragma once

// Result emission and caching for the CLI: CSV tables (RFC-4180 quoting,
// UTF-8, LF line endings), deterministic number formatting, and a file-based
// cache keyed by a canonical hash of the resolved experiment configuration.

#include <optional>
#include <string>
#include <vector>

#include "qcw/arith.hpp"

namespace qcw {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kLibraryVersion = "0.1.0";

std::string csv_escape(const std::string& field);
std::string format_double(double v);  // shortest round-trip-safe decimal

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    std::string to_string() const;  // header then rows, each line LF-terminated
    size_t rows() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Canonical cache key: FNV-1a over "k=v" pairs in the given order.
/// Output-path-like settings must not be passed in.
std::string cache_key(const std::vector<std::pair<std::string, std::string>>& fields);

class ResultCache {
  public:
    ResultCache() = default;  // disabled
    explicit ResultCache(std::string directory);

    bool enabled() const { return enabled_; }
    const std::string& warning() const { return warning_; }

    std::optional<std::string> get(const std::string& key) const;
    /// Atomic: writes a temp file, then renames into place.
    void put(const std::string& key, const std::string& payload) const;

  private:
    std::string dir_;
    bool enabled_ = false;
    std::string warning_;
};

}  // namespace qcw
