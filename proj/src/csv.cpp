#include "roadcast/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace roadcast::csv {

namespace {

void parse_line(const std::string& text, size_t& pos, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool quoted = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                } else {
                    quoted = false;
                    ++pos;
                }
            } else {
                field += c;
                ++pos;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
            ++pos;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
            ++pos;
        } else if (c == '\n' || c == '\r') {
            while (pos < text.size() && (text[pos] == '\n' || text[pos] == '\r')) ++pos;
            break;
        } else {
            field += c;
            ++pos;
        }
    }
    out.push_back(std::move(field));
}

bool needs_quoting(const std::string& f) {
    return f.find_first_of(",\"\n\r") != std::string::npos;
}

}  // namespace

std::vector<std::vector<std::string>> read_file(const std::string& path) {
    std::string text = slurp(path);
    std::vector<std::vector<std::string>> rows;
    size_t pos = 0;
    std::vector<std::string> row;
    while (pos < text.size()) {
        parse_line(text, pos, row);
        if (row.size() == 1 && row[0].empty()) continue;  // blank line
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::vector<std::string>> read_with_header(const std::string& path,
                                                       const std::vector<std::string>& header) {
    auto rows = read_file(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file, expected header row");
    const auto& got = rows.front();
    if (got.size() != header.size())
        throw std::runtime_error(path + ": expected " + std::to_string(header.size()) +
                                 " columns, got " + std::to_string(got.size()));
    for (size_t i = 0; i < header.size(); ++i)
        if (got[i] != header[i])
            throw std::runtime_error(path + ": header column " + std::to_string(i) + " is '" +
                                     got[i] + "', expected '" + header[i] + "'");
    rows.erase(rows.begin());
    return rows;
}

Writer::Writer(const std::string& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "wb");
    if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
}

Writer::~Writer() { close(); }

void Writer::close() {
    if (file_) {
        std::fclose(static_cast<FILE*>(file_));
        file_ = nullptr;
    }
}

void Writer::row(const std::vector<std::string>& fields) {
    FILE* f = static_cast<FILE*>(file_);
    if (!f) throw std::runtime_error("write on closed CSV writer: " + path_);
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) std::fputc(',', f);
        const std::string& v = fields[i];
        if (needs_quoting(v)) {
            std::fputc('"', f);
            for (char c : v) {
                if (c == '"') std::fputc('"', f);
                std::fputc(c, f);
            }
            std::fputc('"', f);
        } else {
            std::fwrite(v.data(), 1, v.size(), f);
        }
    }
    std::fputc('\n', f);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error(context + ": not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& context) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error(context + ": not an integer: '" + s + "'");
    return v;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

uint64_t fnv1a64(const void* data, size_t n, uint64_t h) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string file_hash_hex(const std::string& path) {
    std::string bytes = slurp(path);
    uint64_t h = fnv1a64(bytes.data(), bytes.size());
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace roadcast::csv
