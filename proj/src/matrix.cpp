#include "qisxml/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qisxml/error.hpp"

namespace qisxml {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw Error(ErrorKind::DimensionMismatch, "matrix product of incompatible shapes");
    }
    CMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

CMatrix& CMatrix::operator*=(Complex scalar) {
    for (auto& v : data_) {
        v *= scalar;
    }
    return *this;
}

CMatrix conjugate_transpose(const CMatrix& m) {
    if (!m.square()) {
        throw Error(ErrorKind::NonSquare, "conjugate transpose requires a square matrix");
    }
    CMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

double unitarity_defect(const CMatrix& u) {
    if (!u.square()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs_diff(u * conjugate_transpose(u), CMatrix::identity(u.rows()));
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

}  // namespace qisxml
