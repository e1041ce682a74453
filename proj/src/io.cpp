#include "vlim/core/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "vlim/core/errors.hpp"

namespace vlim {

const unsigned char kFieldMagic[16] = {'V', 'L', 'I', 'M', '-', 'F', '2', 'D',
                                       0,   0,   0,   0,   0,   0,   0,   1};

namespace {

void put_u32(std::FILE* f, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    if (std::fwrite(b, 1, 4, f) != 4) throw Error("short write");
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

void put_f64le(std::FILE* f, const double* data, std::size_t count) {
    // this toolchain is little-endian IEEE754; write directly
    if (std::fwrite(data, sizeof(double), count, f) != count) throw Error("short write");
}

} // namespace

void write_field_file(const std::string& path, const std::vector<const ArrayRXd*>& components) {
    if (components.empty()) throw ValidationError("field file needs at least one component");
    const int n = int(components[0]->rows());
    for (const auto* c : components)
        if (c->rows() != n || c->cols() != n)
            throw ValidationError("field file components must share one square shape");
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open for write: " + path);
    try {
        if (std::fwrite(kFieldMagic, 1, 16, f) != 16) throw Error("short write");
        put_u32(f, std::uint32_t(n));
        put_u32(f, std::uint32_t(components.size()));
        for (const auto* c : components) put_f64le(f, c->data(), std::size_t(n) * n);
    } catch (...) {
        std::fclose(f);
        throw;
    }
    std::fclose(f);
}

FieldFile read_field_file(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_bytes(path);
    if (bytes.size() < 24 || std::memcmp(bytes.data(), kFieldMagic, 16) != 0)
        throw Error("not a field file: " + path);
    FieldFile out;
    out.n = int(get_u32(bytes.data() + 16));
    const std::uint32_t ncomp = get_u32(bytes.data() + 20);
    const std::size_t per = std::size_t(out.n) * out.n;
    if (bytes.size() != 24 + 8 * per * ncomp) throw Error("truncated field file: " + path);
    const std::uint8_t* p = bytes.data() + 24;
    for (std::uint32_t c = 0; c < ncomp; ++c) {
        ArrayRXd a(out.n, out.n);
        std::memcpy(a.data(), p, 8 * per);
        p += 8 * per;
        out.components.push_back(std::move(a));
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : file_(nullptr), width_(header.size()) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open for write: " + path);
    file_ = f;
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) line += ',';
        line += header[i];
    }
    line += '\n';
    std::fwrite(line.data(), 1, line.size(), f);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(static_cast<std::FILE*>(file_));
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row_mixed(cells);
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw ValidationError("csv row width mismatch");
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    std::fwrite(line.data(), 1, line.size(), static_cast<std::FILE*>(file_));
}

void write_manifest(const std::string& path, const KeyValues& entries) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open for write: " + path);
    for (const auto& [k, v] : entries) {
        const std::string line = k + "=" + v + "\n";
        std::fwrite(line.data(), 1, line.size(), f);
    }
    std::fclose(f);
}

KeyValues read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    KeyValues out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key=value in " + path);
        out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

const std::string* manifest_find(const KeyValues& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return &v;
    return nullptr;
}

std::uint64_t fnv1a_file(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_bytes(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    in.seekg(0, std::ios::end);
    const std::streamoff len = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len));
    if (len > 0) in.read(reinterpret_cast<char*>(bytes.data()), len);
    if (!in) throw Error("read failed: " + path);
    return bytes;
}

} // namespace vlim
