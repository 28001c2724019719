#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netprune/core/errors.hpp"

namespace netprune {

enum class PacketType : std::uint8_t { Data = 0x01, Ack = 0x02, Fin = 0x04 };

const char* to_string(PacketType t) noexcept;

/// Wire record: fid(2) seq(4) flags(1) n(1) values(8n), big-endian.
struct Packet {
  std::uint16_t fid = 0;
  std::uint32_t seq = 0;
  PacketType type = PacketType::Data;
  std::vector<std::uint64_t> values;

  static Packet data(std::uint16_t fid, std::uint32_t seq, std::vector<std::uint64_t> values) {
    return {fid, seq, PacketType::Data, std::move(values)};
  }
  static Packet ack(std::uint16_t fid, std::uint32_t seq) { return {fid, seq, PacketType::Ack, {}}; }
  static Packet fin(std::uint16_t fid, std::uint32_t seq) { return {fid, seq, PacketType::Fin, {}}; }

  friend bool operator==(const Packet&, const Packet&) = default;
};

inline constexpr std::size_t kPacketHeaderBytes = 8;
inline constexpr std::size_t kMaxPacketValues = 255;

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Throws std::invalid_argument when a DATA packet has no values or more than
/// 255, or an ACK/FIN carries values.
std::vector<std::uint8_t> encode_packet(const Packet& p);

/// Throws DecodeError for a buffer shorter than the header, an unknown flags
/// byte, or a length other than 8 + 8n.
Packet decode_packet(std::span<const std::uint8_t> bytes);

/// One-line text form, e.g. "DATA fid=1 seq=7 n=2".
std::string describe(const Packet& p);

}  // namespace netprune
