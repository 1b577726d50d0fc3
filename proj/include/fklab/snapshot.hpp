#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "fklab/configuration.hpp"
#include "fklab/lattice.hpp"

namespace fklab {

/// Portable configuration snapshot ("FKCFG1").
///
/// Layout, all integers little-endian:
///   6 bytes  magic "FKCFG1"
///   u8       family
///   u32      size
///   u64      edge count
///   u8       1 if a seed follows the flag, else 0
///   u64      seed (always present, zero when absent)
///   bytes    edge states, bit e of the stream is edge e (LSB first)
struct Snapshot {
  Family family = Family::SquareBox;
  std::uint32_t size = 0;
  std::optional<std::uint64_t> seed;
  Configuration config;
};

void write_snapshot(std::ostream& out, const Lattice& lattice, const Configuration& config,
                    std::optional<std::uint64_t> seed = std::nullopt);

/// Throws std::invalid_argument on a malformed or truncated stream.
Snapshot read_snapshot(std::istream& in);

}  // namespace fklab
