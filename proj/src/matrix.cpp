#include "oggn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oggn/errors.hpp"

namespace oggn {

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

namespace {

[[noreturn]] void shape_mismatch(const char* op, const Matrix& a, const Matrix& b) {
    throw ShapeError(std::string(op) + ": incompatible shapes " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

} // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) shape_mismatch("matmul", a, b);
    Matrix c(a.rows(), b.cols());
    // i-k-j order: the inner loop walks both b and c contiguously.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.data() + i * c.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* bk = b.data() + k * b.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) shape_mismatch("matmul_at_b", a, b);
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* ak = a.data() + k * a.cols();
        const double* bk = b.data() + k * b.cols();
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = c.data() + i * c.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) shape_mismatch("matmul_a_bt", a, b);
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.data() + i * a.cols();
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* bj = b.data() + j * b.cols();
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) sum += ai[k] * bj[k];
            c(i, j) = sum;
        }
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

} // namespace oggn
