#pragma once

#include <array>
#include <cstdint>
#include <string_view>

// Literal weight tables for S14 and G', stored as small integers. The matrix
// constructors rescale them.

namespace forcecert::data {

/// Signed bi-adjacency of S14 in units of 1/2. Row r is vertex
/// x_{kS14Rows[r]}, column c is vertex y_{kS14Cols[c]}.
inline constexpr std::array<std::array<int, 7>, 7> kS14Halves{{
    {1, 1, 1, -1, 0, 0, 0},
    {1, 0, 0, 1, 0, 1, -1},
    {1, 0, -1, 0, 1, 0, 1},
    {-1, 1, 0, 0, 1, 1, 0},
    {0, 0, 1, 1, 1, -1, 0},
    {0, 1, 0, 1, -1, 0, 1},
    {0, -1, 1, 0, 0, 1, 1},
}};

// The table is printed under its own vertex naming. This relabeling maps it
// onto the circulant rule x_i ~ y_i, y_{i+1}, y_{i+3} (+) and x_i ~ y_{i-1} (-),
// signs included.
inline constexpr std::array<int, 7> kS14Rows{0, 6, 4, 1, 3, 5, 2};
inline constexpr std::array<int, 7> kS14Cols{0, 1, 3, 6, 4, 2, 5};

/// Entry a + b*sqrt(2) of the G' weight matrix (rows x_0..x_6, columns y_0..y_6).
struct SurdEntry {
  int rational;
  int surd;
};

inline constexpr std::array<std::array<SurdEntry, 7>, 7> kGPrime{{
    {{{-9, 0}, {9, 0}, {0, 0}, {0, 0}, {0, 3}, {0, -6}, {0, 6}}},
    {{{9, 0}, {-9, 0}, {0, 0}, {0, 0}, {0, 3}, {0, -6}, {0, 6}}},
    {{{0, 0}, {0, 0}, {-9, 0}, {9, 0}, {0, -6}, {0, 3}, {0, 6}}},
    {{{0, 0}, {0, 0}, {9, 0}, {-9, 0}, {0, -6}, {0, 3}, {0, 6}}},
    {{{0, 3}, {0, 3}, {0, -6}, {0, -6}, {8, 0}, {8, 0}, {4, 0}}},
    {{{0, -6}, {0, -6}, {0, 3}, {0, 3}, {8, 0}, {8, 0}, {4, 0}}},
    {{{0, 6}, {0, 6}, {0, 6}, {0, 6}, {4, 0}, {4, 0}, {2, 0}}},
}};

/// Every row of kGPrime has squared norm 18^2.
inline constexpr int kGPrimeScale = 18;

/// FNV-1a over the table entries; guards against accidental edits.
constexpr std::uint64_t fnv1a(std::uint64_t h, int v) {
  auto u = static_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) {
    h ^= (u >> (8 * i)) & 0xFFU;
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t s14_checksum() {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& row : kS14Halves)
    for (int v : row) h = fnv1a(h, v);
  for (int v : kS14Rows) h = fnv1a(h, v);
  for (int v : kS14Cols) h = fnv1a(h, v);
  return h;
}

constexpr std::uint64_t gprime_checksum() {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& row : kGPrime) {
    for (const auto& e : row) {
      h = fnv1a(h, e.rational);
      h = fnv1a(h, e.surd);
    }
  }
  return h;
}

inline constexpr std::uint64_t kS14Checksum = 0xaccbe419e7af5546ULL;
inline constexpr std::uint64_t kGPrimeChecksum = 0x4211b1fcf1a19d71ULL;

static_assert(s14_checksum() == kS14Checksum);
static_assert(gprime_checksum() == kGPrimeChecksum);

}  // namespace forcecert::data
