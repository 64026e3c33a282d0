#pragma once

/**
 * @file pairing.hpp
 * Cantor pairing: the diagonal enumeration of pairs used to flatten
 * double series. Provided 0-based (the classic c(x,y)) and 1-based
 * (matching the row/column convention of the series code, where the
 * enumeration starts at (1,1) -> 1).
 */

#include <cstdint>
#include <utility>

namespace exm {

/// c(x,y) = (x+y)(x+y+1)/2 + y. Bijection N x N -> N, 0-based.
std::int64_t cantor_pair(std::int64_t x, std::int64_t y);

/// Inverse of cantor_pair (exact integer square root, no floating point).
std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t z);

/// 1-based position of (n,m) in the diagonal enumeration:
/// (1,1)->1, (2,1)->2, (1,2)->3, (3,1)->4, ... Equals c(n-1,m-1)+1.
std::int64_t pair1(std::int64_t n, std::int64_t m);

/// Inverse of pair1.
std::pair<std::int64_t, std::int64_t> unpair1(std::int64_t z);

/// m_phi(N) = pair1(N,N): every (n,m) with n,m <= N sits within the first
/// m_phi(N) positions. This is the index bound the series moduli lean on.
std::int64_t m_phi(std::int64_t n);

}  // namespace exm
