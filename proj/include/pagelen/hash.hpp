#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace pagelen {

// MurmurHash64A (Austin Appleby, public domain). Fixed algorithm and seeds so
// hashed feature columns and dedup keys are identical across runs and
// platforms.
inline std::uint64_t hash64(const void* key, std::size_t len, std::uint64_t seed) {
  const std::uint64_t m = 0xc6a4a7935bd1e995ULL;
  const int r = 47;
  std::uint64_t h = seed ^ (static_cast<std::uint64_t>(len) * m);

  const unsigned char* data = static_cast<const unsigned char*>(key);
  const unsigned char* end = data + (len & ~std::size_t{7});
  while (data != end) {
    std::uint64_t k = 0;
    k |= static_cast<std::uint64_t>(data[0]);
    k |= static_cast<std::uint64_t>(data[1]) << 8;
    k |= static_cast<std::uint64_t>(data[2]) << 16;
    k |= static_cast<std::uint64_t>(data[3]) << 24;
    k |= static_cast<std::uint64_t>(data[4]) << 32;
    k |= static_cast<std::uint64_t>(data[5]) << 40;
    k |= static_cast<std::uint64_t>(data[6]) << 48;
    k |= static_cast<std::uint64_t>(data[7]) << 56;
    data += 8;

    k *= m;
    k ^= k >> r;
    k *= m;

    h ^= k;
    h *= m;
  }

  switch (len & 7) {
    case 7: h ^= static_cast<std::uint64_t>(data[6]) << 48; [[fallthrough]];
    case 6: h ^= static_cast<std::uint64_t>(data[5]) << 40; [[fallthrough]];
    case 5: h ^= static_cast<std::uint64_t>(data[4]) << 32; [[fallthrough]];
    case 4: h ^= static_cast<std::uint64_t>(data[3]) << 24; [[fallthrough]];
    case 3: h ^= static_cast<std::uint64_t>(data[2]) << 16; [[fallthrough]];
    case 2: h ^= static_cast<std::uint64_t>(data[1]) << 8; [[fallthrough]];
    case 1: h ^= static_cast<std::uint64_t>(data[0]); h *= m;
  }

  h ^= h >> r;
  h *= m;
  h ^= h >> r;
  return h;
}

inline std::uint64_t hash64(std::string_view s, std::uint64_t seed) {
  return hash64(s.data(), s.size(), seed);
}

struct Hash128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool operator==(const Hash128&) const = default;
};

// Two independently seeded 64-bit hashes; collision odds are negligible at
// tens of millions of keys.
inline Hash128 hash128(std::string_view s) {
  return Hash128{hash64(s, 0x9ae16a3b2f90404fULL), hash64(s, 0xc3a5c85c97cb3127ULL)};
}

struct Hash128Hasher {
  std::size_t operator()(const Hash128& h) const {
    return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ULL));
  }
};

}  // namespace pagelen
