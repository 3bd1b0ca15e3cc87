#pragma once

#include <cstdint>
#include <random>

namespace lmtest {

/// Deterministic per-replication generator derived from a master seed by
/// seed-sequence splitting. Stream k of a given master seed is always the
/// same, independent of how many streams run or in which order.
inline std::mt19937_64 make_stream(std::uint64_t master_seed,
                                   std::uint64_t stream_index) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed),
      static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream_index),
      static_cast<std::uint32_t>(stream_index >> 32),
  };
  return std::mt19937_64(seq);
}

}  // namespace lmtest
