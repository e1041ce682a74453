#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vlim/core/fft.hpp"

namespace vlim {

// Binary field container: 16-byte magic, u32 grid size, u32 component count,
// then each component as n*n little-endian float64 in row-major order.
extern const unsigned char kFieldMagic[16];

void write_field_file(const std::string& path, const std::vector<const ArrayRXd*>& components);

struct FieldFile {
    int n = 0;
    std::vector<ArrayRXd> components;
};
FieldFile read_field_file(const std::string& path);

// Minimal CSV emitter; numbers are written with %.17g so a value round-trips
// exactly and identical runs produce identical bytes.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);

private:
    void* file_;
    std::size_t width_;
};

std::string format_double(double v);

// Ordered key=value text block ('#' starts a comment line).
using KeyValues = std::vector<std::pair<std::string, std::string>>;
void write_manifest(const std::string& path, const KeyValues& entries);
KeyValues read_manifest(const std::string& path);
const std::string* manifest_find(const KeyValues& kv, const std::string& key);

// FNV-1a over a file's bytes; used for manifest checksums and reproducibility checks.
std::uint64_t fnv1a_file(const std::string& path);

std::vector<std::uint8_t> read_bytes(const std::string& path);

} // namespace vlim
