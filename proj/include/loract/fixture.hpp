// SPDX-License-Identifier: Apache-2.0
//
// Matrix fixture I/O. Binary format: magic "LRMX", version u8 = 1,
// dtype u8 (0 = f64, 1 = f32), u32 rows, u32 cols (little-endian), then the
// row-major payload. Small fixtures may also come from headerless CSV.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "loract/matrix.hpp"

namespace loract {

static_assert(std::endian::native == std::endian::little, "fixture I/O assumes a little-endian host");

namespace detail {
inline constexpr char kFixtureMagic[4] = {'L', 'R', 'M', 'X'};
}

template <class T>
void save_fixture(const Matrix<T>& a, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("save_fixture: cannot open " + path);
    f.write(detail::kFixtureMagic, 4);
    const std::uint8_t version = 1;
    const std::uint8_t dtype = std::is_same_v<T, double> ? 0 : 1;
    f.write(reinterpret_cast<const char*>(&version), 1);
    f.write(reinterpret_cast<const char*>(&dtype), 1);
    const std::uint32_t rows = static_cast<std::uint32_t>(a.rows);
    const std::uint32_t cols = static_cast<std::uint32_t>(a.cols);
    f.write(reinterpret_cast<const char*>(&rows), 4);
    f.write(reinterpret_cast<const char*>(&cols), 4);
    f.write(reinterpret_cast<const char*>(a.data.data()),
            static_cast<std::streamsize>(a.data.size() * sizeof(T)));
    if (!f) throw IoError("save_fixture: write failed for " + path);
}

template <class T>
Matrix<T> load_fixture(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("load_fixture: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, detail::kFixtureMagic, 4) != 0)
        throw IoError("load_fixture: bad magic in " + path);
    std::uint8_t version = 0, dtype = 0;
    f.read(reinterpret_cast<char*>(&version), 1);
    f.read(reinterpret_cast<char*>(&dtype), 1);
    if (version != 1) throw IoError("load_fixture: unsupported version in " + path);
    if (dtype > 1) throw IoError("load_fixture: unknown dtype in " + path);
    std::uint32_t rows = 0, cols = 0;
    f.read(reinterpret_cast<char*>(&rows), 4);
    f.read(reinterpret_cast<char*>(&cols), 4);
    if (!f) throw IoError("load_fixture: truncated header in " + path);
    const size_t count = static_cast<size_t>(rows) * cols;

    auto read_payload = [&](auto tag) {
        using S = decltype(tag);
        std::vector<S> buf(count);
        f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count * sizeof(S)));
        if (!f) throw IoError("load_fixture: truncated payload in " + path);
        Matrix<T> out(static_cast<index_t>(rows), static_cast<index_t>(cols));
        for (size_t i = 0; i < count; ++i) out.data[i] = static_cast<T>(buf[i]);
        return out;
    };
    return dtype == 0 ? read_payload(double{}) : read_payload(float{});
}

template <class T>
Matrix<T> load_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("load_csv: cannot open " + path);
    std::vector<std::vector<T>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<T> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(static_cast<T>(std::stod(cell)));
            } catch (const std::exception&) {
                throw IoError("load_csv: bad number '" + cell + "' in " + path);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError("load_csv: ragged rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("load_csv: no data in " + path);
    Matrix<T> out(static_cast<index_t>(rows.size()), static_cast<index_t>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) out(static_cast<index_t>(i), static_cast<index_t>(j)) = rows[i][j];
    return out;
}

}  // namespace loract
