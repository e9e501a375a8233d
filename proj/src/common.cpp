#include "bethe/common.hpp"

#include <bit>

namespace bethe {

int qubit_count(Eigen::Index dim) {
    const auto d = static_cast<unsigned long>(dim);
    if (dim <= 0 || !std::has_single_bit(d)) throw InvalidInput("dimension is not a power of two");
    return std::countr_zero(d);
}

int qubit_count(const Mat& op) {
    if (op.rows() != op.cols()) throw InvalidInput("operator is not square");
    return qubit_count(op.rows());
}

Collinearity collinearity(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("collinearity: size mismatch");
    const double na = a.norm();
    const double nb2 = b.squaredNorm();
    if (na == 0.0 || nb2 == 0.0) throw InvalidInput("collinearity: zero vector");
    const cplx c = b.dot(a) / nb2;
    return {(a - c * b).norm() / na, c};
}

double unitarity_residual(const Mat& u) {
    return max_abs(Mat(u.adjoint() * u - Mat::Identity(u.cols(), u.cols())));
}

} // namespace bethe
