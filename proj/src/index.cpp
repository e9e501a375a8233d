#include "bethe/index.hpp"

#include <bit>
#include <string>

namespace bethe {

std::uint64_t binomial(int n, int r) {
    if (n < 0 || r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t out = 1;
    for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    return out;
}

void check_string(const MagnonString& s) {
    if (s.k < 0 || s.k > 62) throw InvalidInput("magnon string: k out of range");
    int prev = 0;
    for (int m : s.positions) {
        if (m <= prev || m > s.k) throw InvalidInput("magnon string must be strictly increasing within 1..k");
        prev = m;
    }
}

std::uint64_t chi(const MagnonString& s) {
    check_string(s);
    std::uint64_t c = 0;
    for (int m : s.positions) c |= std::uint64_t{1} << (s.k - m);
    return c;
}

MagnonString from_chi(std::uint64_t c, int k) {
    if (k < 0 || k > 62 || (k < 64 && (c >> k) != 0)) throw InvalidInput("from_chi: value out of range");
    MagnonString s{k, {}};
    for (int m = 1; m <= k; ++m)
        if ((c >> (k - m)) & 1U) s.positions.push_back(m);
    return s;
}

std::uint64_t encode(const MagnonString& s) {
    check_string(s);
    // Combinatorial number system on the set-bit positions counted from the least significant bit.
    std::uint64_t rank = 0;
    const int r = s.r();
    for (int t = 0; t < r; ++t) {
        const int bit = s.k - s.positions[r - 1 - t];
        rank += binomial(bit, t + 1);
    }
    return rank + 1;
}

MagnonString decode(std::uint64_t alpha, int k, int r) {
    const std::uint64_t dim = binomial(k, r);
    if (alpha < 1 || alpha > dim)
        throw InvalidInput("decode: alpha " + std::to_string(alpha) + " outside 1.." + std::to_string(dim));
    std::uint64_t rank = alpha - 1;
    std::uint64_t c = 0;
    int bit = k - 1;
    for (int t = r; t >= 1; --t) {
        while (binomial(bit, t) > rank) --bit;
        rank -= binomial(bit, t);
        c |= std::uint64_t{1} << bit;
        --bit;
    }
    return from_chi(c, k);
}

std::vector<MagnonString> sector_basis(int k, int r) {
    std::vector<MagnonString> out;
    const std::uint64_t dim = binomial(k, r);
    out.reserve(dim);
    for (std::uint64_t a = 1; a <= dim; ++a) out.push_back(decode(a, k, r));
    return out;
}

std::vector<std::uint64_t> sector_chis(int k, int r) {
    std::vector<std::uint64_t> out;
    if (r < 0 || r > k) return out;
    if (r == 0) return {0};
    // Next larger integer with the same popcount, starting from the smallest.
    std::uint64_t c = (std::uint64_t{1} << r) - 1;
    const std::uint64_t limit = std::uint64_t{1} << k;
    while (c < limit) {
        out.push_back(c);
        const std::uint64_t t = c | (c - 1);
        c = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(c) + 1));
    }
    return out;
}

Vec embed_sector(const Vec& amplitudes, int k, int r) {
    if (k > 30) throw SizeGuard("embed_sector: k > 30");
    const auto chis = sector_chis(k, r);
    if (static_cast<std::size_t>(amplitudes.size()) != chis.size()) throw InvalidInput("embed_sector: dimension mismatch");
    Vec out = Vec::Zero(Eigen::Index{1} << k);
    for (std::size_t a = 0; a < chis.size(); ++a) out(static_cast<Eigen::Index>(chis[a])) = amplitudes(static_cast<Eigen::Index>(a));
    return out;
}

Vec restrict_sector(const Vec& state, int k, int r) {
    if (state.size() != (Eigen::Index{1} << k)) throw InvalidInput("restrict_sector: dimension mismatch");
    const auto chis = sector_chis(k, r);
    Vec out(static_cast<Eigen::Index>(chis.size()));
    for (std::size_t a = 0; a < chis.size(); ++a) out(static_cast<Eigen::Index>(a)) = state(static_cast<Eigen::Index>(chis[a]));
    return out;
}

} // namespace bethe
