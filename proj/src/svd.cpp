#include "embezzle/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "embezzle/errors.hpp"

namespace embezzle {

namespace {

using cplx = std::complex<double>;

constexpr int kMaxSweeps = 80;

// Columns stored contiguously: column c occupies [c * height, (c + 1) * height).
struct ColumnMatrix {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<cplx> data;

  cplx* column(std::size_t c) { return data.data() + c * height; }
};

ColumnMatrix orient(std::size_t rows, std::size_t cols,
                    std::span<const cplx> row_major) {
  ColumnMatrix m;
  if (cols <= rows) {
    m.height = rows;
    m.width = cols;
    m.data.resize(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        m.data[c * rows + r] = row_major[r * cols + c];
  } else {
    // Work on the conjugate transpose; singular values are unchanged.
    m.height = cols;
    m.width = rows;
    m.data.resize(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        m.data[r * cols + c] = std::conj(row_major[r * cols + c]);
  }
  return m;
}

} // namespace

std::vector<double> singular_values(std::size_t rows, std::size_t cols,
                                    std::span<const cplx> row_major) {
  if (rows == 0 || cols == 0)
    fail(ErrorCode::InvalidArgument, "singular_values: matrix has a zero dimension");
  if (row_major.size() != rows * cols)
    fail(ErrorCode::InvalidArgument, "singular_values: entry count does not match shape");

  ColumnMatrix m = orient(rows, cols, row_major);
  const std::size_t h = m.height;
  const double tol = 4.0 * std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m.width; ++p) {
      for (std::size_t q = p + 1; q < m.width; ++q) {
        cplx* ap = m.column(p);
        cplx* aq = m.column(q);
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
          alpha += std::norm(ap[i]);
          beta += std::norm(aq[i]);
          gamma += std::conj(ap[i]) * aq[i];
        }
        const double g = std::abs(gamma);
        if (alpha == 0.0 || beta == 0.0 || g <= tol * std::sqrt(alpha * beta))
          continue;
        rotated = true;

        // Rotate the phase out of column q so the coupling is real.
        const cplx phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < h; ++i) {
          const cplx xp = ap[i];
          const cplx xq = aq[i] * phase;
          ap[i] = c * xp - s * xq;
          aq[i] = s * xp + c * xq;
        }
      }
    }
    if (!rotated)
      break;
  }

  std::vector<double> sv(m.width);
  for (std::size_t c = 0; c < m.width; ++c) {
    const cplx* col = m.column(c);
    double sq = 0.0;
    for (std::size_t i = 0; i < h; ++i)
      sq += std::norm(col[i]);
    sv[c] = std::sqrt(sq);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

} // namespace embezzle
