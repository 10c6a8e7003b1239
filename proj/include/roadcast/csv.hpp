#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace roadcast::csv {

/// Minimal RFC-4180-ish CSV: fields containing commas, quotes or newlines are
/// quoted on write; quoted fields are unescaped on read.
std::vector<std::vector<std::string>> read_file(const std::string& path);

/// Reads a CSV file and checks that the first row equals `header`; returns the
/// remaining rows. Throws with the offending column on mismatch.
std::vector<std::vector<std::string>> read_with_header(const std::string& path,
                                                       const std::vector<std::string>& header);

class Writer {
public:
    explicit Writer(const std::string& path);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void row(const std::vector<std::string>& fields);
    void close();

private:
    void* file_ = nullptr;
    std::string path_;
};

std::string format_double(double v);   // round-trip exact ("%.17g")
double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

std::string slurp(const std::string& path);
void spit(const std::string& path, const std::string& content);

/// FNV-1a 64-bit over a file's bytes, as 16 hex digits.
std::string file_hash_hex(const std::string& path);
uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 1469598103934665603ULL);

}  // namespace roadcast::csv
