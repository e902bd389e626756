#include "oggn/rng.hpp"

namespace oggn {

namespace {

// FNV-1a over the tag bytes, then a splitmix64 finalizer to spread the bits.
std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : tag) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view role) {
    return splitmix64(base ^ hash_tag(role));
}

} // namespace oggn
