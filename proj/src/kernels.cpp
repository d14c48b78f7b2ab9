#include "mbqc/kernels.hpp"

#include <bit>

namespace mbqc::sim::kernels {

namespace {
// Below this many amplitudes the fork/join overhead dominates.
constexpr std::size_t kParallelMin = std::size_t{1} << 13;

inline bool parity_bit(std::size_t r, std::size_t mask) {
    return (std::popcount(r & mask) & 1) != 0;
}
} // namespace

namespace serial {

void apply_1q(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx m00, cplx m01,
              cplx m10, cplx m11) {
    for (std::size_t r = 0; r < rows; ++r) {
        if (r & bit) continue;
        cplx* lo = a + r * cols;
        cplx* hi = a + (r | bit) * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            const cplx v0 = lo[c];
            const cplx v1 = hi[c];
            lo[c] = m00 * v0 + m01 * v1;
            hi[c] = m10 * v0 + m11 * v1;
        }
    }
}

void apply_cz(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit1, std::size_t bit2) {
    const std::size_t both = bit1 | bit2;
    for (std::size_t r = 0; r < rows; ++r) {
        if ((r & both) != both) continue;
        cplx* p = a + r * cols;
        for (std::size_t c = 0; c < cols; ++c) p[c] = -p[c];
    }
}

void apply_fanout(cplx* a, std::size_t rows, std::size_t cols, std::size_t control_bit,
                  std::size_t target_mask) {
    for (std::size_t r = 0; r < rows; ++r) {
        if (!(r & control_bit)) continue;
        const std::size_t s = r ^ target_mask;
        if (s <= r) continue;
        cplx* p = a + r * cols;
        cplx* q = a + s * cols;
        for (std::size_t c = 0; c < cols; ++c) std::swap(p[c], q[c]);
    }
}

void apply_parity_phase(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask) {
    for (std::size_t r = 0; r < rows; ++r) {
        if (!parity_bit(r, mask)) continue;
        cplx* p = a + r * cols;
        for (std::size_t c = 0; c < cols; ++c) p[c] = -p[c];
    }
}

void project_parity(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask, bool keep_odd) {
    for (std::size_t r = 0; r < rows; ++r) {
        if (parity_bit(r, mask) == keep_odd) continue;
        cplx* p = a + r * cols;
        for (std::size_t c = 0; c < cols; ++c) p[c] = cplx{};
    }
}

void contract_qubit(const cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx b0,
                    cplx b1, cplx* out) {
    const std::size_t low_mask = bit - 1;
    const std::size_t out_rows = rows / 2;
    for (std::size_t r = 0; r < out_rows; ++r) {
        const std::size_t src = ((r & ~low_mask) << 1) | (r & low_mask);
        const cplx* lo = a + src * cols;
        const cplx* hi = a + (src | bit) * cols;
        cplx* o = out + r * cols;
        for (std::size_t c = 0; c < cols; ++c) o[c] = b0 * lo[c] + b1 * hi[c];
    }
}

void append_qubit(const cplx* a, std::size_t rows, std::size_t cols, cplx a0, cplx a1, cplx* out) {
    for (std::size_t r = 0; r < rows; ++r) {
        const cplx* p = a + r * cols;
        cplx* o0 = out + (2 * r) * cols;
        cplx* o1 = out + (2 * r + 1) * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            o0[c] = p[c] * a0;
            o1[c] = p[c] * a1;
        }
    }
}

double norm2(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
    return s;
}

} // namespace serial

void apply_1q(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx m00, cplx m01,
              cplx m10, cplx m11) {
    if (rows * cols < kParallelMin) {
        serial::apply_1q(a, rows, cols, bit, m00, m01, m10, m11);
        return;
    }
    const std::int64_t half = static_cast<std::int64_t>(rows / 2);
    const std::size_t low_mask = bit - 1;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < half; ++i) {
        const std::size_t r =
            ((static_cast<std::size_t>(i) & ~low_mask) << 1) | (static_cast<std::size_t>(i) & low_mask);
        cplx* lo = a + r * cols;
        cplx* hi = a + (r | bit) * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            const cplx v0 = lo[c];
            const cplx v1 = hi[c];
            lo[c] = m00 * v0 + m01 * v1;
            hi[c] = m10 * v0 + m11 * v1;
        }
    }
}

void apply_cz(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit1, std::size_t bit2) {
    if (rows * cols < kParallelMin) {
        serial::apply_cz(a, rows, cols, bit1, bit2);
        return;
    }
    const std::size_t both = bit1 | bit2;
    const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        if ((static_cast<std::size_t>(r) & both) != both) continue;
        cplx* p = a + static_cast<std::size_t>(r) * cols;
        for (std::size_t c = 0; c < cols; ++c) p[c] = -p[c];
    }
}

void apply_fanout(cplx* a, std::size_t rows, std::size_t cols, std::size_t control_bit,
                  std::size_t target_mask) {
    if (rows * cols < kParallelMin) {
        serial::apply_fanout(a, rows, cols, control_bit, target_mask);
        return;
    }
    const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        const std::size_t rr = static_cast<std::size_t>(r);
        if (!(rr & control_bit)) continue;
        const std::size_t s = rr ^ target_mask;
        if (s <= rr) continue;
        cplx* p = a + rr * cols;
        cplx* q = a + s * cols;
        for (std::size_t c = 0; c < cols; ++c) std::swap(p[c], q[c]);
    }
}

void apply_parity_phase(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask) {
    if (rows * cols < kParallelMin) {
        serial::apply_parity_phase(a, rows, cols, mask);
        return;
    }
    const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        if (!parity_bit(static_cast<std::size_t>(r), mask)) continue;
        cplx* p = a + static_cast<std::size_t>(r) * cols;
        for (std::size_t c = 0; c < cols; ++c) p[c] = -p[c];
    }
}

void project_parity(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask, bool keep_odd) {
    if (rows * cols < kParallelMin) {
        serial::project_parity(a, rows, cols, mask, keep_odd);
        return;
    }
    const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        if (parity_bit(static_cast<std::size_t>(r), mask) == keep_odd) continue;
        cplx* p = a + static_cast<std::size_t>(r) * cols;
        for (std::size_t c = 0; c < cols; ++c) p[c] = cplx{};
    }
}

void contract_qubit(const cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx b0,
                    cplx b1, cplx* out) {
    if (rows * cols < kParallelMin) {
        serial::contract_qubit(a, rows, cols, bit, b0, b1, out);
        return;
    }
    const std::size_t low_mask = bit - 1;
    const std::int64_t out_rows = static_cast<std::int64_t>(rows / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < out_rows; ++r) {
        const std::size_t rr = static_cast<std::size_t>(r);
        const std::size_t src = ((rr & ~low_mask) << 1) | (rr & low_mask);
        const cplx* lo = a + src * cols;
        const cplx* hi = a + (src | bit) * cols;
        cplx* o = out + rr * cols;
        for (std::size_t c = 0; c < cols; ++c) o[c] = b0 * lo[c] + b1 * hi[c];
    }
}

void append_qubit(const cplx* a, std::size_t rows, std::size_t cols, cplx a0, cplx a1, cplx* out) {
    if (rows * cols < kParallelMin) {
        serial::append_qubit(a, rows, cols, a0, a1, out);
        return;
    }
    const std::int64_t n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        const std::size_t rr = static_cast<std::size_t>(r);
        const cplx* p = a + rr * cols;
        cplx* o0 = out + (2 * rr) * cols;
        cplx* o1 = out + (2 * rr + 1) * cols;
        for (std::size_t c = 0; c < cols; ++c) {
            o0[c] = p[c] * a0;
            o1[c] = p[c] * a1;
        }
    }
}

double norm2(const cplx* a, std::size_t n) { return serial::norm2(a, n); }

void scale(cplx* a, std::size_t n, cplx factor) {
    if (n < kParallelMin) {
        for (std::size_t i = 0; i < n; ++i) a[i] *= factor;
        return;
    }
    const std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] *= factor;
}

void permute_bits(const cplx* a, std::size_t rows, std::size_t cols,
                  const std::vector<std::size_t>& src_bits,
                  const std::vector<std::size_t>& dst_bits, cplx* out) {
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t dst = 0;
        for (std::size_t k = 0; k < src_bits.size(); ++k)
            if (r & src_bits[k]) dst |= dst_bits[k];
        const cplx* p = a + r * cols;
        cplx* o = out + dst * cols;
        for (std::size_t c = 0; c < cols; ++c) o[c] = p[c];
    }
}

} // namespace mbqc::sim::kernels
