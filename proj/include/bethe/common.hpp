#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace bethe {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx I{0.0, 1.0};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateRapidities : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularMatrix : std::domain_error {
    using std::domain_error::domain_error;
};

struct SizeGuard : std::length_error {
    using std::length_error::length_error;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Largest entry modulus; 0 for empty matrices.
inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Number of qubits of a 2^n x 2^n operator.
int qubit_count(const Mat& op);
int qubit_count(Eigen::Index dim);

/// Best scalar c with a ~ c b and the relative residual |a - c b| / |a|.
struct Collinearity {
    double residual = 0.0;
    cplx scalar{0.0, 0.0};
};
Collinearity collinearity(const Vec& a, const Vec& b);

/// Residual of U^dagger U against the identity in max norm.
double unitarity_residual(const Mat& u);

} // namespace bethe
