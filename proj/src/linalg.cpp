#include "mbqc/linalg.hpp"

#include <cmath>

namespace mbqc {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::adjoint() const {
    Mat m(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw Error("matrix product dimension mismatch");
    Mat m(x.rows, y.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const cplx v = x(r, k);
            if (v == cplx{}) continue;
            for (std::size_t c = 0; c < y.cols; ++c) m(r, c) += v * y(k, c);
        }
    return m;
}

Mat operator*(cplx s, Mat m) {
    for (cplx& v : m.a) v *= s;
    return m;
}

Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix sum dimension mismatch");
    Mat m = x;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] += y.a[i];
    return m;
}

Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix difference dimension mismatch");
    Mat m = x;
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] -= y.a[i];
    return m;
}

Mat kron(const Mat& x, const Mat& y) {
    Mat m(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t xr = 0; xr < x.rows; ++xr)
        for (std::size_t xc = 0; xc < x.cols; ++xc) {
            const cplx v = x(xr, xc);
            if (v == cplx{}) continue;
            for (std::size_t yr = 0; yr < y.rows; ++yr)
                for (std::size_t yc = 0; yc < y.cols; ++yc)
                    m(xr * y.rows + yr, xc * y.cols + yc) = v * y(yr, yc);
        }
    return m;
}

double max_abs(const Mat& m) {
    double v = 0.0;
    for (const cplx& e : m.a) v = std::max(v, std::abs(e));
    return v;
}

double frobenius_norm(const Mat& m) {
    double s = 0.0;
    for (const cplx& e : m.a) s += std::norm(e);
    return std::sqrt(s);
}

cplx frobenius_inner(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("inner product dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) s += std::conj(x.a[i]) * y.a[i];
    return s;
}

double distance_up_to_phase(const Mat& x, const Mat& y) {
    const cplx inner = frobenius_inner(y, x);
    cplx phase = 1.0;
    if (std::abs(inner) > 1e-300) phase = inner / std::abs(inner);
    Mat aligned = phase * y;
    return max_abs(x - aligned);
}

Mat mat_h() {
    Mat m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m(0, 0) = s;
    m(0, 1) = s;
    m(1, 0) = s;
    m(1, 1) = -s;
    return m;
}

Mat mat_x() {
    Mat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Mat mat_z() {
    Mat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Mat mat_rz(double alpha) {
    Mat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::exp(cplx(0.0, alpha));
    return m;
}

} // namespace mbqc
