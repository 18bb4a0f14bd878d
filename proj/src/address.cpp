#include "proxy6/address.hpp"

#include <cstdio>
#include <vector>

namespace proxy6::addr {

NetworkPrefix default_prefix() {
  return NetworkPrefix{{0xce, 0xdf, 0x0c, 0xb8, 0x8b, 0xa3, 0x8a, 0x2e}};
}

std::array<uint8_t, 16> Ipv6Address::bytes() const {
  std::array<uint8_t, 16> out{};
  for (int i = 0; i < 8; ++i) out[i] = prefix.bytes[i];
  for (int i = 0; i < 8; ++i) out[8 + i] = id.bytes[i];
  return out;
}

Ipv6Address Ipv6Address::from_bytes(const std::array<uint8_t, 16>& b) {
  Ipv6Address a;
  for (int i = 0; i < 8; ++i) a.prefix.bytes[i] = b[i];
  for (int i = 0; i < 8; ++i) a.id.bytes[i] = b[8 + i];
  return a;
}

int fill_position(const DeviceIdentifier& id) {
  for (int k = 7; k >= 1; --k)
    if (id.octet(k) == 0) return k;
  return 0;
}

bool is_reserved(const DeviceIdentifier& id, int octet_max) {
  for (int k = 0; k < 8; ++k)
    if (id.bytes[k] != octet_max) return false;
  return true;
}

bool is_local_controller(const DeviceIdentifier& id) {
  return id == DeviceIdentifier::local_controller();
}

bool is_assignable(const DeviceIdentifier& id, int octet_max) {
  if (id.octet(0) < 1) return false;
  if (is_reserved(id, octet_max)) return false;
  for (int k = 0; k < 8; ++k)
    if (id.bytes[k] > octet_max) return false;
  // Nonzero octets among positions 7..1 must form one run starting at 7.
  bool zero_seen = false;
  for (int k = 7; k >= 1; --k) {
    if (id.octet(k) == 0) {
      zero_seen = true;
    } else if (zero_seen) {
      return false;
    }
  }
  return true;
}

// --- hex form ----------------------------------------------------------------

std::string format_hex(const Ipv6Address& a) {
  const auto by = a.bytes();
  std::array<unsigned, 8> g{};
  for (int i = 0; i < 8; ++i)
    g[i] = static_cast<unsigned>(by[2 * i]) << 8 | by[2 * i + 1];

  int best_start = -1, best_len = 0;
  for (int i = 0; i < 8;) {
    if (g[i] != 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j < 8 && g[j] == 0) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_start = i;
    }
    i = j;
  }

  std::string out;
  char buf[8];
  for (int i = 0; i < 8;) {
    if (i == best_start && best_len > 0) {
      out += "::";
      i += best_len;
      continue;
    }
    if (!out.empty() && out.back() != ':') out += ':';
    std::snprintf(buf, sizeof buf, "%x", g[i]);
    out += buf;
    ++i;
  }
  if (out.empty()) out = "::";  // not reachable: best_len==8 handled in loop
  return out;
}

namespace {

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void parse_groups(std::string_view part, std::vector<unsigned>& out) {
  size_t pos = 0;
  while (true) {
    size_t colon = part.find(':', pos);
    std::string_view tok = part.substr(
        pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos);
    if (tok.empty()) throw MalformedAddress("empty group");
    if (tok.size() > 4) throw MalformedAddress("group longer than 4 digits");
    unsigned v = 0;
    for (char c : tok) {
      int d = hex_val(c);
      if (d < 0) throw MalformedAddress("non-hex character in group");
      v = v << 4 | static_cast<unsigned>(d);
    }
    out.push_back(v);
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
}

}  // namespace

Ipv6Address parse_hex(std::string_view s) {
  if (s.empty()) throw MalformedAddress("empty address");
  std::vector<unsigned> left, right;
  size_t dc = s.find("::");
  bool compressed = dc != std::string_view::npos;
  if (compressed) {
    std::string_view l = s.substr(0, dc);
    std::string_view r = s.substr(dc + 2);
    if (r.find("::") != std::string_view::npos)
      throw MalformedAddress("more than one \"::\"");
    if (!l.empty()) parse_groups(l, left);
    if (!r.empty()) parse_groups(r, right);
    if (left.size() + right.size() > 7)
      throw MalformedAddress("\"::\" must stand for at least one zero group");
  } else {
    parse_groups(s, left);
    if (left.size() != 8) throw MalformedAddress("expected 8 groups");
  }

  std::array<uint8_t, 16> by{};
  size_t gi = 0;
  auto put = [&](unsigned g) {
    by[2 * gi] = static_cast<uint8_t>(g >> 8);
    by[2 * gi + 1] = static_cast<uint8_t>(g & 0xff);
    ++gi;
  };
  for (unsigned g : left) put(g);
  if (compressed)
    for (size_t i = left.size() + right.size(); i < 8; ++i) put(0);
  for (unsigned g : right) put(g);
  return Ipv6Address::from_bytes(by);
}

// --- dotted decimal ----------------------------------------------------------

namespace {

std::vector<int> parse_dotted_octets(std::string_view s) {
  std::vector<int> out;
  size_t pos = 0;
  while (true) {
    size_t dot = s.find('.', pos);
    std::string_view tok = s.substr(
        pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    if (tok.empty() || tok.size() > 3) throw MalformedAddress("bad octet");
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw MalformedAddress("non-digit in octet");
      v = v * 10 + (c - '0');
    }
    if (v > 255) throw MalformedAddress("octet out of range");
    out.push_back(v);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return out;
}

std::string dotted(const uint8_t* b, int n) {
  std::string out;
  char buf[8];
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, i ? ".%u" : "%u", b[i]);
    out += buf;
  }
  return out;
}

}  // namespace

std::string to_dotted_decimal(const Ipv6Address& a) {
  return dotted(a.bytes().data(), 16);
}

std::string to_dotted_decimal(const DeviceIdentifier& id) {
  return dotted(id.bytes.data(), 8);
}

DeviceIdentifier identifier_from_dotted(std::string_view s) {
  auto oct = parse_dotted_octets(s);
  if (oct.size() != 8) throw MalformedAddress("expected 8 octets");
  DeviceIdentifier id;
  for (int i = 0; i < 8; ++i) id.bytes[i] = static_cast<uint8_t>(oct[i]);
  return id;
}

Ipv6Address from_dotted_decimal(const NetworkPrefix& prefix, std::string_view s) {
  auto oct = parse_dotted_octets(s);
  if (oct.size() == 8) {
    Ipv6Address a;
    a.prefix = prefix;
    for (int i = 0; i < 8; ++i) a.id.bytes[i] = static_cast<uint8_t>(oct[i]);
    return a;
  }
  if (oct.size() == 16) {
    std::array<uint8_t, 16> by{};
    for (int i = 0; i < 16; ++i) by[i] = static_cast<uint8_t>(oct[i]);
    return Ipv6Address::from_bytes(by);
  }
  throw MalformedAddress("expected 8 or 16 octets");
}

}  // namespace proxy6::addr
