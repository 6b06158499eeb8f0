#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gcomp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative rank threshold used for every subspace decision.
constexpr double kRankTol = 1e-9;
/// Absolute tolerance on normalized quantities.
constexpr double kTol = 1e-9;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace la {

/// Orthonormal basis for the column span of M (rows = ambient dimension).
inline Mat orth(const Mat& M, double rel_tol = kRankTol) {
    if (M.cols() == 0 || M.rows() == 0) return Mat(M.rows(), 0);
    Eigen::ColPivHouseholderQR<Mat> qr(M);
    qr.setThreshold(rel_tol);
    const Index r = qr.rank();
    if (r == 0 || qr.maxPivot() == 0.0) return Mat(M.rows(), 0);
    Mat Q = qr.householderQ() * Mat::Identity(M.rows(), r);
    return Q;
}

/// Orthonormal basis for the orthogonal complement of span(M) in R^n.
inline Mat complement(const Mat& M, Index n, double rel_tol = kRankTol) {
    if (M.cols() == 0) return Mat::Identity(n, n);
    Eigen::ColPivHouseholderQR<Mat> qr(M);
    qr.setThreshold(rel_tol);
    const Index r = (qr.maxPivot() == 0.0) ? 0 : qr.rank();
    Mat Qfull = qr.householderQ();
    return Qfull.rightCols(n - r);
}

/// Orthonormal basis of the null space of A (as columns in R^{A.cols()}).
inline Mat null_space(const Mat& A, double rel_tol = kRankTol) {
    return complement(A.transpose(), A.cols(), rel_tol);
}

inline Mat hcat(const Mat& A, const Mat& B) {
    Mat C(A.rows(), A.cols() + B.cols());
    if (A.cols()) C.leftCols(A.cols()) = A;
    if (B.cols()) C.rightCols(B.cols()) = B;
    return C;
}

inline Mat projector(const Mat& Q) { return Q * Q.transpose(); }

/// Projection of v onto the span of orthonormal columns Q.
inline Vec project(const Mat& Q, const Vec& v) {
    if (Q.cols() == 0) return Vec::Zero(v.size());
    return Q * (Q.transpose() * v);
}

/// Minimum-norm solution of M a = b; returns the residual norm through `residual`.
inline Vec min_norm_solve(const Mat& M, const Vec& b, double& residual, double rel_tol = kRankTol) {
    if (M.cols() == 0) {
        residual = b.norm();
        return Vec(0);
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(M.rows(), M.cols());
    cod.setThreshold(rel_tol);
    cod.compute(M);
    Vec a = cod.solve(b);
    residual = (M * a - b).norm();
    return a;
}

/// Operator (spectral) norm.
inline double op_norm(const Mat& A) {
    if (A.size() == 0) return 0.0;
    Eigen::BDCSVD<Mat> svd(A);
    return svd.singularValues()(0);
}

}  // namespace la
}  // namespace gcomp
