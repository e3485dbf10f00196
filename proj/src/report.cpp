#include "qcw/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace qcw {

std::string csv_escape(const std::string& field) {
    bool needs_quote = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[64];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = 0;
        std::sscanf(probe, "%lf", &back);
        if (back == v) return probe;
    }
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("CsvTable: row width does not match header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(cells[i]);
        }
        out += '\n';
    };
    emit(header_);
    for (auto& r : rows_) emit(r);
    return out;
}

std::string cache_key(const std::vector<std::pair<std::string, std::string>>& fields) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (auto& [k, v] : fields) {
        mix(k);
        mix("=");
        mix(v);
        mix(";");
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ResultCache::ResultCache(std::string directory) : dir_(std::move(directory)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    // probe writability; on failure the cache silently turns itself off
    fs::path probe = fs::path(dir_) / ".probe";
    std::ofstream f(probe, std::ios::binary);
    if (f.good()) {
        f.close();
        fs::remove(probe, ec);
        enabled_ = true;
    } else {
        warning_ = "cache directory not writable, caching disabled: " + dir_;
    }
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    std::ifstream f(fs::path(dir_) / (key + ".rec"), std::ios::binary);
    if (!f.good()) return std::nullopt;
    std::string payload((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return payload;
}

void ResultCache::put(const std::string& key, const std::string& payload) const {
    if (!enabled_) return;
    fs::path final_path = fs::path(dir_) / (key + ".rec");
    fs::path tmp_path = fs::path(dir_) / (key + ".tmp");
    {
        std::ofstream f(tmp_path, std::ios::binary | std::ios::trunc);
        f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!f.good()) return;
    }
    std::error_code ec;
    fs::rename(tmp_path, final_path, ec);
}

}  // namespace qcw
