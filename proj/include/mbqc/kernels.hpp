#pragma once

#include "mbqc/linalg.hpp"

#include <cstddef>
#include <cstdint>

namespace mbqc::sim::kernels {

// Amplitude-update kernels for dense simulation. Buffers hold `rows`
// basis-state blocks of `cols` contiguous columns (cols > 1 runs the whole
// input basis at once, giving the branch operator instead of one state).
// The default entry points parallelize over amplitudes with OpenMP above a
// size threshold; the `serial` namespace holds the plain reference loops the
// tests and benchmarks compare against. Probability sums stay serial so a
// seeded run reproduces bit-identical outcomes regardless of thread count.

/// 2x2 gate on the qubit addressed by `bit` (a single set bit of the row index).
void apply_1q(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx m00, cplx m01,
              cplx m10, cplx m11);

/// Controlled-Z: negate amplitudes where both bits are set.
void apply_cz(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit1, std::size_t bit2);

/// Fan-out: XOR the control bit into the target mask (basis permutation).
void apply_fanout(cplx* a, std::size_t rows, std::size_t cols, std::size_t control_bit,
                  std::size_t target_mask);

/// Phase flip on rows whose parity over `mask` is odd.
void apply_parity_phase(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask);

/// Zero out rows whose parity over `mask` differs from `keep_odd`.
void project_parity(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask, bool keep_odd);

/// Contract one qubit against a bra (b0, b1): out has rows/2 blocks.
void contract_qubit(const cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx b0,
                    cplx b1, cplx* out);

/// Append one qubit in state (a0, a1) as the least significant bit.
void append_qubit(const cplx* a, std::size_t rows, std::size_t cols, cplx a0, cplx a1, cplx* out);

/// Squared Frobenius norm. Serial summation by design.
double norm2(const cplx* a, std::size_t n);

void scale(cplx* a, std::size_t n, cplx factor);

/// Reorder qubit bits: out[permuted(r)] = a[r], where permuted maps each
/// source bit to its destination bit.
void permute_bits(const cplx* a, std::size_t rows, std::size_t cols,
                  const std::vector<std::size_t>& src_bits,
                  const std::vector<std::size_t>& dst_bits, cplx* out);

namespace serial {
void apply_1q(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx m00, cplx m01,
              cplx m10, cplx m11);
void apply_cz(cplx* a, std::size_t rows, std::size_t cols, std::size_t bit1, std::size_t bit2);
void apply_fanout(cplx* a, std::size_t rows, std::size_t cols, std::size_t control_bit,
                  std::size_t target_mask);
void apply_parity_phase(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask);
void project_parity(cplx* a, std::size_t rows, std::size_t cols, std::size_t mask, bool keep_odd);
void contract_qubit(const cplx* a, std::size_t rows, std::size_t cols, std::size_t bit, cplx b0,
                    cplx b1, cplx* out);
void append_qubit(const cplx* a, std::size_t rows, std::size_t cols, cplx a0, cplx a1, cplx* out);
double norm2(const cplx* a, std::size_t n);
} // namespace serial

} // namespace mbqc::sim::kernels
