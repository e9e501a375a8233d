#pragma once

#include "bethe/common.hpp"

#include <cstdint>
#include <vector>

namespace bethe {

/// Positions m_1 < .. < m_r (1-based) of the flipped qubits among k.
struct MagnonString {
    int k = 0;
    std::vector<int> positions;

    int r() const { return static_cast<int>(positions.size()); }
    bool operator==(const MagnonString&) const = default;
};

/// binomial(n, r), 0 outside 0 <= r <= n.
std::uint64_t binomial(int n, int r);

void check_string(const MagnonString& s);

/// chi = sum_j 2^{k-j} i_j.
std::uint64_t chi(const MagnonString& s);
MagnonString from_chi(std::uint64_t chi, int k);

/// 1-based rank of chi within the sector of fixed k and r.
std::uint64_t encode(const MagnonString& s);
MagnonString decode(std::uint64_t alpha, int k, int r);

/// All strings of the sector ordered by chi.
std::vector<MagnonString> sector_basis(int k, int r);
std::vector<std::uint64_t> sector_chis(int k, int r);

/// Sector vector placed into the 2^k computational basis.
Vec embed_sector(const Vec& amplitudes, int k, int r);

/// Sector components of a 2^k state.
Vec restrict_sector(const Vec& state, int k, int r);

} // namespace bethe
