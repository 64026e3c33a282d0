#include "exmeasure/pairing.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace exm {

namespace {
// Large enough for every modulus this library can produce, small enough
// that (x+y)^2 stays clear of int64 overflow.
constexpr std::int64_t kArgLimit = std::int64_t(1) << 30;
}

std::int64_t cantor_pair(std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0) throw std::invalid_argument("cantor_pair: negative argument");
    if (x >= kArgLimit || y >= kArgLimit) throw std::overflow_error("cantor_pair: argument too large");
    const std::int64_t s = x + y;
    return s * (s + 1) / 2 + y;
}

std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t z) {
    if (z < 0) throw std::invalid_argument("cantor_unpair: negative argument");
    // s = floor((sqrt(8z+1)-1)/2), computed exactly over mpz.
    const mpz_class root = sqrt(mpz_class(static_cast<long>(z)) * 8 + 1);  // floor sqrt
    const std::int64_t s = mpz_class((root - 1) / 2).get_si();
    const std::int64_t t = s * (s + 1) / 2;
    const std::int64_t y = z - t;
    return {s - y, y};
}

std::int64_t pair1(std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 1) throw std::invalid_argument("pair1: arguments are 1-based");
    return cantor_pair(n - 1, m - 1) + 1;
}

std::pair<std::int64_t, std::int64_t> unpair1(std::int64_t z) {
    if (z < 1) throw std::invalid_argument("unpair1: argument is 1-based");
    auto [x, y] = cantor_unpair(z - 1);
    return {x + 1, y + 1};
}

std::int64_t m_phi(std::int64_t n) { return pair1(n, n); }

}  // namespace exm
