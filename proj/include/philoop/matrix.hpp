#pragma once

#include "philoop/scalar.hpp"

#include <string>
#include <vector>

namespace philoop {

/// Dense square or rectangular matrix over Q(w), row-major.
/// A matrix acting on generators maps e_j to sum_i m[i][j] e_i.
using Matrix = std::vector<std::vector<Scalar>>;
using Vector = std::vector<Scalar>;

Matrix identity_matrix(std::size_t n);
Matrix operator*(const Matrix &a, const Matrix &b);
Vector operator*(const Matrix &a, const Vector &v);
Matrix matrix_power(const Matrix &m, long k);
Matrix scaled(Matrix m, const Scalar &s);

/// Row-reduced echelon form of the span of `rows`; returns the nonzero rows
/// and their pivot columns.
struct Echelon {
    std::vector<Vector> rows;
    std::vector<std::size_t> pivots;
};
Echelon row_reduce(std::vector<Vector> rows, std::size_t width);

std::string str(const Matrix &m);

} // namespace philoop
