#pragma once

#include "mbqc/ids.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace mbqc {

using cplx = std::complex<double>;

/// Dense row-major complex matrix, sized for desk-scale registers.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Mat identity(std::size_t n);
    Mat adjoint() const;
    bool operator==(const Mat&) const = default;
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator*(cplx s, Mat m);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat kron(const Mat& x, const Mat& y);

double max_abs(const Mat& m);
double frobenius_norm(const Mat& m);
cplx frobenius_inner(const Mat& x, const Mat& y); // <x, y> = sum conj(x) y

/// Max-entry distance after aligning y to x by the best global phase.
double distance_up_to_phase(const Mat& x, const Mat& y);

/// Common 2x2 gates.
Mat mat_h();
Mat mat_x();
Mat mat_z();
Mat mat_rz(double alpha);

} // namespace mbqc
