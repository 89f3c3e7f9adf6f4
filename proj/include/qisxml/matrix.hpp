#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qisxml {

using Complex = std::complex<double>;

/// Shared tolerance for matrix equality, unitarity and qubit normalization.
inline constexpr double kTolerance = 1e-9;

/// Dense row-major complex matrix. Indices are 0-based here; the XML layer
/// converts from the 1-based row/col attributes.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const noexcept { return data_; }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix& operator*=(Complex scalar);

    bool operator==(const CMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// result(i, j) = conj(m(j, i)). Throws NonSquare.
CMatrix conjugate_transpose(const CMatrix& m);

/// Largest entrywise absolute difference; infinity when shapes differ.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// ||U U^dagger - I||_inf (entrywise max).
double unitarity_defect(const CMatrix& u);

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol = kTolerance);

}  // namespace qisxml
