#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace awenc::io {

/// Little-endian binary buffer writer for the artifact file formats.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v);
    void str(const std::string& s);
    void raw(const char* data, std::size_t n);
    void magic(const char tag[5]) { raw(tag, 4); }

    const std::vector<std::uint8_t>& buffer() const { return buf_; }
    void write_file(const std::string& path) const;

private:
    std::vector<std::uint8_t> buf_;
};

/// Strict reader: any out-of-bounds read or leftover bytes is an error, so
/// truncated or padded files never yield partial data.
class ByteReader {
public:
    explicit ByteReader(std::vector<std::uint8_t> data) : data_(std::move(data)) {}
    static ByteReader from_file(const std::string& path);

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    double f64();
    std::string str();
    void expect_magic(const char tag[5], const std::string& what);
    void expect_end(const std::string& what);

private:
    void need(std::size_t n);
    std::vector<std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::string fingerprint_hex(std::uint64_t h);
std::uint64_t file_fingerprint(const std::string& path);

}  // namespace awenc::io
