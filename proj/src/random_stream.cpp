#include "avm/random_stream.hpp"

#include <cmath>

namespace avm {

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  __extension__ typedef unsigned __int128 u128;
  u128 m = static_cast<u128>(engine_()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<u128>(engine_()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::exponential(double rate) {
  return -std::log1p(-uniform01()) / rate;
}

}  // namespace avm
