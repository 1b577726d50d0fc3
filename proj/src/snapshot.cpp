#include "fklab/snapshot.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace fklab {
namespace {

constexpr std::array<char, 6> kMagic{'F', 'K', 'C', 'F', 'G', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((value >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(std::istream& in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw std::invalid_argument("truncated snapshot");
    value |= static_cast<T>(static_cast<T>(c & 0xff) << (8 * i));
  }
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const Lattice& lattice, const Configuration& config,
                    std::optional<std::uint64_t> seed) {
  if (config.size() != lattice.edge_count()) throw std::invalid_argument("configuration does not match the lattice");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(lattice.family()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(lattice.size()));
  put_le<std::uint64_t>(out, config.size());
  put_le<std::uint8_t>(out, seed ? 1 : 0);
  put_le<std::uint64_t>(out, seed.value_or(0));
  const std::size_t nbytes = (config.size() + 7) / 8;
  const auto words = config.words();
  for (std::size_t b = 0; b < nbytes; ++b) put_le<std::uint8_t>(out, static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));
}

Snapshot read_snapshot(std::istream& in) {
  std::array<char, 6> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::invalid_argument("not an FKCFG1 snapshot");
  Snapshot s;
  const auto family = get_le<std::uint8_t>(in);
  if (family > static_cast<std::uint8_t>(Family::TriangularTorus)) throw std::invalid_argument("unknown family in snapshot");
  s.family = static_cast<Family>(family);
  s.size = get_le<std::uint32_t>(in);
  const auto edges = get_le<std::uint64_t>(in);
  const bool has_seed = get_le<std::uint8_t>(in) != 0;
  const auto seed = get_le<std::uint64_t>(in);
  if (has_seed) s.seed = seed;
  s.config = Configuration(static_cast<std::size_t>(edges));
  for (std::size_t b = 0; b < (edges + 7) / 8; ++b) {
    const auto byte = get_le<std::uint8_t>(in);
    for (int k = 0; k < 8; ++k) {
      const std::size_t e = 8 * b + k;
      if (e < edges && ((byte >> k) & 1)) s.config.set(static_cast<EdgeId>(e), true);
    }
  }
  return s;
}

}  // namespace fklab
