#include "netprune/transport/packet.hpp"

#include <boost/endian/conversion.hpp>
#include <stdexcept>

namespace netprune {

const char* to_string(PacketType t) noexcept {
  switch (t) {
    case PacketType::Data: return "DATA";
    case PacketType::Ack: return "ACK";
    case PacketType::Fin: return "FIN";
  }
  return "?";
}

std::vector<std::uint8_t> encode_packet(const Packet& p) {
  const std::size_t n = p.values.size();
  if (p.type == PacketType::Data && (n == 0 || n > kMaxPacketValues)) {
    throw std::invalid_argument("DATA packets carry 1 to 255 values");
  }
  if (p.type != PacketType::Data && n != 0) throw std::invalid_argument("ACK and FIN packets carry no values");
  std::vector<std::uint8_t> out(kPacketHeaderBytes + 8 * n);
  boost::endian::store_big_u16(out.data(), p.fid);
  boost::endian::store_big_u32(out.data() + 2, p.seq);
  out[6] = static_cast<std::uint8_t>(p.type);
  out[7] = static_cast<std::uint8_t>(n);
  for (std::size_t i = 0; i < n; ++i) boost::endian::store_big_u64(out.data() + kPacketHeaderBytes + 8 * i, p.values[i]);
  return out;
}

Packet decode_packet(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kPacketHeaderBytes) {
    throw DecodeError("packet of " + std::to_string(bytes.size()) + " bytes is shorter than the header");
  }
  Packet p;
  p.fid = boost::endian::load_big_u16(bytes.data());
  p.seq = boost::endian::load_big_u32(bytes.data() + 2);
  const std::uint8_t flags = bytes[6];
  if (flags != 0x01 && flags != 0x02 && flags != 0x04) throw DecodeError("unknown flags byte " + std::to_string(flags));
  p.type = static_cast<PacketType>(flags);
  const std::size_t n = bytes[7];
  if (bytes.size() != kPacketHeaderBytes + 8 * n) {
    throw DecodeError("n = " + std::to_string(n) + " does not match " + std::to_string(bytes.size()) + " bytes");
  }
  if ((p.type == PacketType::Data) != (n > 0)) throw DecodeError("value count does not fit the packet type");
  p.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.values[i] = boost::endian::load_big_u64(bytes.data() + kPacketHeaderBytes + 8 * i);
  return p;
}

std::string describe(const Packet& p) {
  std::string s = std::string(to_string(p.type)) + " fid=" + std::to_string(p.fid) + " seq=" + std::to_string(p.seq);
  if (!p.values.empty()) s += " n=" + std::to_string(p.values.size());
  return s;
}

}  // namespace netprune
