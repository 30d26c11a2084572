#pragma once

#include "infogeo/family.hpp"
#include "infogeo/metric.hpp"

#include <initializer_list>

namespace infogeo::test {

inline Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// Row-major square matrix from a flat list.
inline Matrix mat(int n, std::initializer_list<double> xs) {
    Matrix m(n, n);
    auto it = xs.begin();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m(i, k) = *it++;
    return m;
}

inline SpdMatrix spd(int n, std::initializer_list<double> xs) { return SpdMatrix(mat(n, xs)); }
inline SymMatrix sym(int n, std::initializer_list<double> xs) { return SymMatrix(mat(n, xs)); }
inline SpdMatrix scalar(double d) { return SpdMatrix(Matrix::Constant(1, 1, d)); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace infogeo::test
