#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gft/transform.hpp"

namespace gft {

inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::string_view kPlanMagic = "GFTP";
inline constexpr std::string_view kCompressedMagic = "GFTZ";

// Plan file, little-endian throughout:
//   "GFTP" | u8 version | body | u64 FNV-1a(body)
// body:
//   u64 n | u64 level count (J + 1)
//   per level: u64 n_j | u64 aggregate count | u32 size[count]
//              | u32 members[n_j] (1-based, position order) | f64 row-major bases
//   u64 tail sizes m_0 .. m_{J+1} | u64 seed
std::vector<std::uint8_t> encode_plan(const TransformPlan& plan);
/// Throws FormatError (magic, version, truncation, inconsistent body) or
/// ChecksumError (body does not hash to the stored checksum).
TransformPlan decode_plan(std::span<const std::uint8_t> bytes);
void save_plan(const TransformPlan& plan, const std::string& path);
TransformPlan load_plan(const std::string& path);

enum class CompressionMode : std::uint8_t { standard = 0, adaptive = 1 };

/// k retained coefficients of one signal.
///
/// Layout: "GFTZ" | u8 version | u64 n | u64 k | u8 mode | u64 plan checksum
/// | u64 selection bit count | selection bits packed LSB first
/// | u64 index[k] (strictly ascending) | f64 value[k].
struct CompressedSignal {
  std::uint64_t n = 0;
  CompressionMode mode = CompressionMode::standard;
  std::uint64_t plan_checksum = 0;
  std::vector<std::uint64_t> indices;
  std::vector<double> values;
  std::vector<bool> selection_bits;  // adaptive only

  std::uint64_t k() const { return indices.size(); }
  bool operator==(const CompressedSignal&) const = default;
};

inline constexpr std::uint64_t kCompressedHeaderBytes = 4 + 1 + 8 + 8 + 1 + 8 + 8;

/// Exact encoded size: header + 16 k + ceil(bits / 8).
std::uint64_t compressed_size(std::uint64_t k, std::uint64_t selection_bits);

std::vector<std::uint8_t> encode_compressed(const CompressedSignal& cs);
CompressedSignal decode_compressed(std::span<const std::uint8_t> bytes);
void save_compressed(const CompressedSignal& cs, const std::string& path);
CompressedSignal load_compressed(const std::string& path);

/// One value per line; blank lines and '#' comments ignored.
Signal parse_signal(std::string_view text);
Signal read_signal_file(const std::string& path);
/// Round-trip exact (%.17g); each comment line is prefixed with "# ".
std::string format_signal(const Signal& u, const std::vector<std::string>& comments = {});
void write_text_file(const std::string& path, std::string_view text);

std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes);

/// Coefficient file: a signal file whose "# plan_checksum=<hex>" comment
/// binds it to a plan.
std::string format_frequency_vector(const FrequencyVector& f);
FrequencyVector parse_frequency_vector(std::string_view text);

}  // namespace gft
