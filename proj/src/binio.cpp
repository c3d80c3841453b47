#include "awenc/binio.hpp"

#include <bit>
#include <cstdio>
#include <cstring>

#include "awenc/errors.hpp"

namespace awenc::io {

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::str(const std::string& s) {
    u64(s.size());
    raw(s.data(), s.size());
}

void ByteWriter::raw(const char* data, std::size_t n) {
    buf_.insert(buf_.end(), reinterpret_cast<const std::uint8_t*>(data), reinterpret_cast<const std::uint8_t*>(data) + n);
}

void ByteWriter::write_file(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw ConfigError("cannot open for writing: " + path);
    std::size_t n = std::fwrite(buf_.data(), 1, buf_.size(), f);
    std::fclose(f);
    if (n != buf_.size()) throw ConfigError("short write: " + path);
}

ByteReader ByteReader::from_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw ConfigError("cannot open: " + path);
    std::fseek(f, 0, SEEK_END);
    long size = std::ftell(f);
    std::fseek(f, 0, SEEK_SET);
    std::vector<std::uint8_t> data(static_cast<std::size_t>(size));
    std::size_t n = std::fread(data.data(), 1, data.size(), f);
    std::fclose(f);
    if (n != data.size()) throw ConfigError("short read: " + path);
    return ByteReader(std::move(data));
}

void ByteReader::need(std::size_t n) {
    if (pos_ + n > data_.size()) throw ConfigError("truncated input: wanted " + std::to_string(n) + " bytes at offset " +
                                                   std::to_string(pos_));
}

std::uint8_t ByteReader::u8() {
    need(1);
    return data_[pos_++];
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::string ByteReader::str() {
    std::uint64_t n = u64();
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
}

void ByteReader::expect_magic(const char tag[5], const std::string& what) {
    need(4);
    if (std::memcmp(data_.data() + pos_, tag, 4) != 0)
        throw ConfigError(what + ": bad magic, expected \"" + std::string(tag, 4) + "\"");
    pos_ += 4;
}

void ByteReader::expect_end(const std::string& what) {
    if (pos_ != data_.size())
        throw ConfigError(what + ": " + std::to_string(data_.size() - pos_) + " trailing bytes");
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fingerprint_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

std::uint64_t file_fingerprint(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw ConfigError("cannot open: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    std::uint8_t buf[65536];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0)
        for (std::size_t i = 0; i < n; ++i) {
            h ^= buf[i];
            h *= 0x100000001b3ULL;
        }
    std::fclose(f);
    return h;
}

}  // namespace awenc::io
