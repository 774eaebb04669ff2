#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "edgestat/core/common.hpp"

namespace edgestat {

/// K(z_i, z_j) = (left * core * right^T)(i, j); an empty core stands for the identity.
struct LowRankFactor {
    Eigen::MatrixXcd left;
    Eigen::MatrixXcd right;
    Eigen::MatrixXcd core;
};

/// A correlation kernel with the metadata the Fredholm routines need.
struct KernelFn {
    std::string name;
    std::function<cplx(Point2, Point2)> eval;
    /// Integrable majorant of |K(z, z)|.
    std::function<double(Point2)> diag_bound;
    bool hermitian = true;
    /// Kronecker-type kernel: only its diagonal carries mass.
    bool degenerate = false;
    /// Optional batch evaluation of the full kernel matrix on a node set.
    std::function<Eigen::MatrixXcd(const std::vector<Point2>&)> matrix;
    /// Optional finite-rank factorization on a node set.
    std::function<LowRankFactor(const std::vector<Point2>&)> factor;

    Eigen::MatrixXcd evaluate(const std::vector<Point2>& pts) const;
};

}  // namespace edgestat
