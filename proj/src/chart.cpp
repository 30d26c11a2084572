#include "infogeo/chart.hpp"

#include "infogeo/error.hpp"

namespace infogeo {

Chart::Chart(int n) : n_(n) {
    if (n < 1) fail(ErrorCode::domain, "chart dimension must be positive");
}

Vector Chart::to_coords(const Point& pt) const {
    if (pt.dim() != n_) fail(ErrorCode::domain, "point dimension does not match chart");
    Vector c(dim());
    c.head(matrix_dim()) = sym_coordinates(pt.D.sym());
    c.tail(n_) = pt.u;
    return c;
}

Point Chart::from_coords(const Vector& c) const {
    if (c.size() != dim()) fail(ErrorCode::domain, "coordinate vector has wrong length");
    return Point(SpdMatrix(sym_from_coordinates(n_, c.head(matrix_dim()))), c.tail(n_));
}

Vector Chart::tangent_coords(const Tangent& v) const {
    if (v.dim() != n_) fail(ErrorCode::domain, "tangent dimension does not match chart");
    Vector c(dim());
    c.head(matrix_dim()) = sym_coordinates(v.X);
    c.tail(n_) = v.x;
    return c;
}

Tangent Chart::tangent_from_coords(const Vector& c) const {
    if (c.size() != dim()) fail(ErrorCode::domain, "coordinate vector has wrong length");
    return Tangent(sym_from_coordinates(n_, c.head(matrix_dim())), c.tail(n_));
}

Tangent Chart::basis(int k) const {
    if (k < 0 || k >= dim()) fail(ErrorCode::domain, "chart basis index out of range");
    Vector c = Vector::Zero(dim());
    c[k] = 1.0;
    return tangent_from_coords(c);
}

}  // namespace infogeo
