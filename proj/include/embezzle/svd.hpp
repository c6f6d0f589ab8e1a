#ifndef EMBEZZLE_SVD_HPP
#define EMBEZZLE_SVD_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace embezzle {

/// Singular values of a dense complex rows x cols matrix (row-major),
/// sorted non-increasing. min(rows, cols) values are returned, including
/// numerical zeros.
///
/// One-sided Jacobi (Hestenes): pairs of columns are rotated until mutually
/// orthogonal, after which the column norms are the singular values. The
/// orientation with fewer columns is chosen so the sweep cost is
/// O(max * min^2) per sweep. Converges quadratically; relative accuracy on
/// small singular values is better than bidiagonalization-based routines.
std::vector<double> singular_values(std::size_t rows, std::size_t cols,
                                    std::span<const std::complex<double>> row_major);

} // namespace embezzle

#endif
