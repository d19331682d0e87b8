#include "qgsqpo/rng.hpp"

namespace qgsqpo {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t q_index,
                          std::uint64_t a_index, std::uint64_t run_index) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ q_index);
  h = mix64(h ^ (a_index + 0x632be59bd9b4e019ULL));
  h = mix64(h ^ (run_index + 0x85157af5ULL));
  return h;
}

}  // namespace qgsqpo
