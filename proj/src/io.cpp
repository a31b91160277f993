#include "gft/io.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "gft/binary.hpp"
#include "gft/error.hpp"
#include "gft/plan_codec.hpp"

namespace gft {

namespace {

void expect_magic(binary::Reader& in, std::string_view magic, const char* what) {
  const auto got = in.bytes(magic.size());
  if (!std::equal(got.begin(), got.end(), magic.begin())) {
    throw FormatError(std::string(what) + ": bad magic (expected '" + std::string(magic) + "')");
  }
}

void expect_version(binary::Reader& in, const char* what) {
  const auto version = in.u8();
  if (version != kFormatVersion) {
    throw FormatError(std::string(what) + ": unsupported format version " + std::to_string(version) +
                      " (this build reads version " + std::to_string(kFormatVersion) + ")");
  }
}

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    fn(trim(line), ++line_no);
  }
}

}  // namespace

std::vector<std::uint8_t> encode_plan(const TransformPlan& plan) {
  binary::ByteBuffer out;
  binary::put_bytes(out, kPlanMagic);
  binary::put_u8(out, kFormatVersion);
  binary::Fnv1a hash;
  binary::Tee tee(out, hash);
  detail::encode_plan_body(tee, plan);
  binary::put_u64(out, hash.value());
  return out.take();
}

TransformPlan decode_plan(std::span<const std::uint8_t> bytes) {
  binary::Reader in(bytes);
  expect_magic(in, kPlanMagic, "plan");
  expect_version(in, "plan");
  const std::size_t body_start = in.position();

  const std::uint64_t n = in.u64();
  const std::uint64_t level_count = in.u64();
  if (n < 1 || n > static_cast<std::uint64_t>(std::numeric_limits<Vertex>::max())) {
    throw FormatError("plan: invalid size " + std::to_string(n));
  }
  if (level_count > 64) throw FormatError("plan: invalid level count " + std::to_string(level_count));

  std::vector<LevelTransform> levels;
  for (std::uint64_t j = 0; j < level_count; ++j) {
    const std::uint64_t nj = in.u64();
    const std::uint64_t count = in.u64();
    if (nj < 2 || nj > n || count < 1 || 2 * count > nj) {
      throw FormatError("plan: inconsistent sizes at level " + std::to_string(j));
    }
    std::vector<std::int64_t> offsets{0};
    offsets.reserve(count + 1);
    std::uint64_t basis_entries = 0;
    for (std::uint64_t a = 0; a < count; ++a) {
      const std::uint32_t m = in.u32();
      if (m < 2 || m > nj) throw FormatError("plan: invalid aggregate size at level " + std::to_string(j));
      offsets.push_back(offsets.back() + m);
      basis_entries += std::uint64_t{m} * m;
    }
    if (static_cast<std::uint64_t>(offsets.back()) != nj) {
      throw FormatError("plan: aggregate sizes do not sum to the level size at level " + std::to_string(j));
    }
    std::vector<Vertex> members(nj);
    for (auto& v : members) v = static_cast<Vertex>(static_cast<std::int64_t>(in.u32()) - 1);
    if (in.remaining() / 8 < basis_entries) throw FormatError("truncated input in level " + std::to_string(j));
    std::vector<double> bases(basis_entries);
    for (auto& x : bases) x = in.f64();
    try {
      levels.emplace_back(static_cast<int>(j),
                          Aggregation::from_flat(static_cast<Vertex>(nj), std::move(offsets), std::move(members)),
                          std::move(bases));
    } catch (const std::invalid_argument& e) {
      throw FormatError("plan: level " + std::to_string(j) + ": " + e.what());
    }
  }
  std::vector<std::int64_t> tails(level_count + 1);
  for (auto& m : tails) m = static_cast<std::int64_t>(in.u64());
  const std::uint64_t seed = in.u64();
  const std::size_t body_end = in.position();
  const std::uint64_t stored = in.u64();
  if (in.remaining() != 0) throw FormatError("plan: " + std::to_string(in.remaining()) + " trailing bytes");

  binary::Fnv1a hash;
  hash.write(bytes.data() + body_start, body_end - body_start);
  if (hash.value() != stored) {
    throw ChecksumError("plan: stored checksum " + hex(stored) + " does not match content " + hex(hash.value()));
  }

  TransformPlan plan;
  try {
    plan = TransformPlan(static_cast<Eigen::Index>(n), seed, std::move(levels));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("plan: ") + e.what());
  }
  if (plan.tail_sizes() != tails) throw FormatError("plan: tail bookkeeping is inconsistent");
  if (plan.checksum() != stored) throw ChecksumError("plan: checksum mismatch after decoding");
  return plan;
}

void save_plan(const TransformPlan& plan, const std::string& path) { write_binary_file(path, encode_plan(plan)); }

TransformPlan load_plan(const std::string& path) { return decode_plan(read_binary_file(path)); }

std::uint64_t compressed_size(std::uint64_t k, std::uint64_t selection_bits) {
  return kCompressedHeaderBytes + 16 * k + (selection_bits + 7) / 8;
}

std::vector<std::uint8_t> encode_compressed(const CompressedSignal& cs) {
  if (cs.indices.size() != cs.values.size()) throw std::invalid_argument("compressed signal: index/value count differ");
  if (cs.mode == CompressionMode::standard && !cs.selection_bits.empty()) {
    throw std::invalid_argument("compressed signal: standard mode carries no selection bits");
  }
  binary::ByteBuffer out;
  binary::put_bytes(out, kCompressedMagic);
  binary::put_u8(out, kFormatVersion);
  binary::put_u64(out, cs.n);
  binary::put_u64(out, cs.k());
  binary::put_u8(out, static_cast<std::uint8_t>(cs.mode));
  binary::put_u64(out, cs.plan_checksum);
  binary::put_u64(out, cs.selection_bits.size());
  for (std::size_t i = 0; i < cs.selection_bits.size(); i += 8) {
    std::uint8_t byte = 0;
    for (std::size_t b = 0; b < 8 && i + b < cs.selection_bits.size(); ++b) {
      if (cs.selection_bits[i + b]) byte |= static_cast<std::uint8_t>(1u << b);
    }
    binary::put_u8(out, byte);
  }
  for (auto i : cs.indices) binary::put_u64(out, i);
  for (double v : cs.values) binary::put_f64(out, v);
  return out.take();
}

CompressedSignal decode_compressed(std::span<const std::uint8_t> bytes) {
  binary::Reader in(bytes);
  expect_magic(in, kCompressedMagic, "payload");
  expect_version(in, "payload");
  CompressedSignal cs;
  cs.n = in.u64();
  const std::uint64_t k = in.u64();
  const std::uint8_t mode = in.u8();
  if (mode > 1) throw FormatError("payload: unknown mode " + std::to_string(mode));
  cs.mode = static_cast<CompressionMode>(mode);
  cs.plan_checksum = in.u64();
  const std::uint64_t bits = in.u64();
  if (k > cs.n) throw FormatError("payload: k exceeds n");
  if (cs.mode == CompressionMode::standard && bits != 0) throw FormatError("payload: standard mode with selection bits");
  if (bits > 8 * in.remaining()) throw FormatError("truncated input in selection bits");
  const auto packed = in.bytes((bits + 7) / 8);
  cs.selection_bits.resize(bits);
  for (std::uint64_t i = 0; i < bits; ++i) cs.selection_bits[i] = (packed[i / 8] >> (i % 8)) & 1u;
  if (in.remaining() != 16 * k) {
    if (in.remaining() < 16 * k) throw FormatError("truncated input in coefficient block");
    throw FormatError("payload: " + std::to_string(in.remaining() - 16 * k) + " trailing bytes");
  }
  cs.indices.resize(k);
  for (auto& i : cs.indices) i = in.u64();
  cs.values.resize(k);
  for (auto& v : cs.values) v = in.f64();
  for (std::uint64_t i = 0; i < k; ++i) {
    if (cs.indices[i] >= cs.n) throw FormatError("payload: coefficient index out of range");
    if (i > 0 && cs.indices[i] <= cs.indices[i - 1]) throw FormatError("payload: indices are not strictly ascending");
  }
  return cs;
}

void save_compressed(const CompressedSignal& cs, const std::string& path) {
  write_binary_file(path, encode_compressed(cs));
}

CompressedSignal load_compressed(const std::string& path) { return decode_compressed(read_binary_file(path)); }

Signal parse_signal(std::string_view text) {
  std::vector<double> values;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty() || line.front() == '#') return;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw FormatError("signal line " + std::to_string(line_no) + ": expected a number, got '" + std::string(line) + "'");
    }
    if (!std::isfinite(v)) throw FormatError("signal line " + std::to_string(line_no) + ": value is not finite");
    values.push_back(v);
  });
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Signal read_signal_file(const std::string& path) {
  const auto bytes = read_binary_file(path);
  return parse_signal({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

std::string format_signal(const Signal& u, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", u(i));
    out += buf;
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view text) {
  write_binary_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string format_frequency_vector(const FrequencyVector& f) {
  return format_signal(f.coefficients, {"plan_checksum=" + hex(f.plan_checksum)});
}

FrequencyVector parse_frequency_vector(std::string_view text) {
  FrequencyVector f;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    constexpr std::string_view key = "# plan_checksum=";
    if (line.substr(0, key.size()) == key) {
      const auto value = line.substr(key.size());
      std::from_chars(value.data(), value.data() + value.size(), f.plan_checksum, 16);
    }
  });
  f.coefficients = parse_signal(text);
  return f;
}

}  // namespace gft
