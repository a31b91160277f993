#pragma once

// Little-endian encoding helpers shared by the plan checksum and the file
// formats.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gft/error.hpp"

namespace gft::binary {

/// 64-bit FNV-1a.
class Fnv1a {
 public:
  void write(const std::uint8_t* data, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) {
      hash_ ^= data[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

class ByteCounter {
 public:
  void write(const std::uint8_t*, std::size_t size) { count_ += size; }
  std::uint64_t value() const { return count_; }

 private:
  std::uint64_t count_ = 0;
};

class ByteBuffer {
 public:
  void write(const std::uint8_t* data, std::size_t size) { bytes_.insert(bytes_.end(), data, data + size); }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Forwards every byte to two sinks.
template <typename A, typename B>
class Tee {
 public:
  Tee(A& a, B& b) : a_(a), b_(b) {}
  void write(const std::uint8_t* data, std::size_t size) {
    a_.write(data, size);
    b_.write(data, size);
  }

 private:
  A& a_;
  B& b_;
};

template <typename Sink>
void put_u8(Sink& sink, std::uint8_t v) {
  sink.write(&v, 1);
}

template <typename Sink>
void put_u32(Sink& sink, std::uint32_t v) {
  std::array<std::uint8_t, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
  sink.write(b.data(), b.size());
}

template <typename Sink>
void put_u64(Sink& sink, std::uint64_t v) {
  std::array<std::uint8_t, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
  sink.write(b.data(), b.size());
}

template <typename Sink>
void put_f64(Sink& sink, double v) {
  put_u64(sink, std::bit_cast<std::uint64_t>(v));
}

template <typename Sink>
void put_bytes(Sink& sink, std::string_view s) {
  sink.write(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

/// Bounds-checked little-endian reader; throws FormatError on truncation.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return need(1)[0]; }
  std::uint32_t u32() {
    const auto* p = need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{p[i]} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const auto* p = need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{p[i]} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::span<const std::uint8_t> bytes(std::size_t n) { return {need(n), n}; }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  const std::uint8_t* need(std::size_t n) {
    if (data_.size() - pos_ < n) throw FormatError("truncated input at byte " + std::to_string(pos_));
    const auto* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace gft::binary
