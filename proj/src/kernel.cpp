#include "bethe/kernel.hpp"

#include <cmath>
#include <string>

namespace bethe {

namespace {

cplx guarded_denominator(cplx u, cplx gamma, double tol) {
    const cplx d = std::sinh(u + I * gamma);
    if (!(std::abs(d) >= tol))
        throw PoleError("weight pole: |sinh(u + i gamma)| = " + std::to_string(std::abs(d)) +
                        " at u = (" + std::to_string(u.real()) + ", " + std::to_string(u.imag()) + ")");
    return d;
}

/// a / b as a conj(b) / |b|^2, which returns exactly 1 for a == b.
cplx divide(cplx a, cplx b) {
    const double n = b.real() * b.real() + b.imag() * b.imag();
    const cplx p = a * std::conj(b);
    return {p.real() / n, p.imag() / n};
}

} // namespace

cplx weight_f(cplx u, cplx gamma, double tol) { return divide(std::sinh(u), guarded_denominator(u, gamma, tol)); }

cplx weight_g(cplx u, cplx gamma, double tol) { return divide(std::sinh(I * gamma), guarded_denominator(u, gamma, tol)); }

Weights weights(cplx u, cplx gamma, double tol) {
    const cplx d = guarded_denominator(u, gamma, tol);
    return {divide(std::sinh(u), d), divide(std::sinh(I * gamma), d)};
}

bool ChainSpec::homogeneous() const {
    for (const auto& v : inhomogeneities)
        if (v != inhomogeneities.front()) return false;
    return true;
}

void ChainSpec::validate() const {
    if (n_sites < 1) throw InvalidInput("n_sites must be positive");
    if (n_magnons < 0 || n_magnons > n_sites) throw InvalidInput("n_magnons must lie in [0, n_sites]");
    if (static_cast<int>(inhomogeneities.size()) != n_sites)
        throw InvalidInput("expected " + std::to_string(n_sites) + " inhomogeneities");
    if (static_cast<int>(rapidities.size()) != n_magnons)
        throw InvalidInput("expected " + std::to_string(n_magnons) + " rapidities");
    if (!(tol.pole > 0.0) || !(tol.separation > 0.0)) throw InvalidInput("tolerances must be positive");
    if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) throw InvalidInput("gamma is not finite");
    if (std::abs(std::sinh(I * gamma)) < tol.pole) throw PoleError("sinh(i gamma) vanishes");
    for (int a = 0; a < n_magnons; ++a)
        for (int b = a + 1; b < n_magnons; ++b)
            if (std::abs(rapidities[a] - rapidities[b]) < tol.separation)
                throw DegenerateRapidities("rapidities u_" + std::to_string(a + 1) + " and u_" +
                                           std::to_string(b + 1) + " coincide");
    for (int a = 0; a < n_magnons; ++a) {
        for (int j = 0; j < n_sites; ++j) weights(rapidities[a] - inhomogeneities[j], gamma, tol.pole);
        for (int b = 0; b < n_magnons; ++b)
            if (a != b) weights(rapidities[a] - rapidities[b], gamma, tol.pole);
    }
}

ChainSpec ChainSpec::with_magnons(const std::vector<int>& labels) const {
    ChainSpec out = *this;
    out.rapidities.clear();
    for (int a : labels) {
        if (a < 1 || a > n_magnons) throw InvalidInput("magnon label out of range");
        out.rapidities.push_back(rapidities[a - 1]);
    }
    out.n_magnons = static_cast<int>(labels.size());
    return out;
}

cplx quasi_momentum(int a, int j, const ChainSpec& spec) {
    if (a < 1 || a > spec.n_magnons || j < 1 || j > spec.n_sites) throw InvalidInput("quasi_momentum: index out of range");
    return weight_f(spec.rapidities[a - 1] - spec.inhomogeneities[j - 1], spec.gamma, spec.tol.pole);
}

cplx magnon_g(int a, int j, const ChainSpec& spec) {
    if (a < 1 || a > spec.n_magnons || j < 1 || j > spec.n_sites) throw InvalidInput("magnon_g: index out of range");
    return weight_g(spec.rapidities[a - 1] - spec.inhomogeneities[j - 1], spec.gamma, spec.tol.pole);
}

cplx scattering_amplitude(int a, int b, const ChainSpec& spec) {
    if (a < 1 || a > spec.n_magnons || b < 1 || b > spec.n_magnons || a == b)
        throw InvalidInput("scattering_amplitude: needs two distinct magnon labels");
    const cplx d = spec.rapidities[a - 1] - spec.rapidities[b - 1];
    if (std::abs(d) < spec.tol.separation)
        throw DegenerateRapidities("rapidities u_" + std::to_string(a) + " and u_" + std::to_string(b) + " coincide");
    return weight_f(d, spec.gamma, spec.tol.pole);
}

cplx s_matrix(int a, int b, const ChainSpec& spec) {
    return scattering_amplitude(b, a, spec) / scattering_amplitude(a, b, spec);
}

} // namespace bethe
