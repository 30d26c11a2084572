#pragma once

#include "infogeo/metric.hpp"

namespace infogeo {

/// Coordinates on Ξₙ: D_11..D_nn, D_12..D_{n-1,n} (each off-diagonal once), u_1..u_n.
/// The basis tangent of coordinate D_ij (i < j) is F_ij = E_ij + E_ji.
class Chart {
public:
    explicit Chart(int n);

    int n() const noexcept { return n_; }
    int dim() const noexcept { return n_ * (n_ + 1) / 2 + n_; }
    int matrix_dim() const noexcept { return n_ * (n_ + 1) / 2; }

    Vector to_coords(const Point& pt) const;
    Point from_coords(const Vector& c) const;

    Vector tangent_coords(const Tangent& v) const;
    Tangent tangent_from_coords(const Vector& c) const;

    /// Basis tangent for coordinate k.
    Tangent basis(int k) const;

private:
    int n_;
};

}  // namespace infogeo
