#pragma once

#include "bethe/common.hpp"

#include <vector>

namespace bethe {

struct Tolerances {
    double pole = 1e-10;       // minimum |sinh| in a weight denominator
    double separation = 1e-10; // minimum |u_a - u_b|
};

/// A problem instance: N spins, M magnons, anisotropy, inhomogeneities and rapidities.
struct ChainSpec {
    int n_sites = 1;
    int n_magnons = 0;
    cplx gamma{0.0, 0.0};
    std::vector<cplx> inhomogeneities; // v_1..v_N
    std::vector<cplx> rapidities;      // u_1..u_M
    Tolerances tol{};

    cplx delta() const { return std::cos(gamma); }
    bool homogeneous() const;

    /// Throws InvalidInput, DegenerateRapidities or PoleError.
    void validate() const;

    /// Same chain restricted to the magnons listed (1-based labels).
    ChainSpec with_magnons(const std::vector<int>& labels) const;
};

struct Weights {
    cplx f;
    cplx g;
};

cplx weight_f(cplx u, cplx gamma, double tol = 1e-10);
cplx weight_g(cplx u, cplx gamma, double tol = 1e-10);
Weights weights(cplx u, cplx gamma, double tol = 1e-10);

/// x_{a,j} = f(u_a - v_j), 1-based a and j.
cplx quasi_momentum(int a, int j, const ChainSpec& spec);

/// g(u_a - v_j), 1-based a and j.
cplx magnon_g(int a, int j, const ChainSpec& spec);

/// s_{ab} = f(u_a - u_b), 1-based a != b.
cplx scattering_amplitude(int a, int b, const ChainSpec& spec);

/// Two-body S-matrix s_{ba} / s_{ab}.
cplx s_matrix(int a, int b, const ChainSpec& spec);

} // namespace bethe
