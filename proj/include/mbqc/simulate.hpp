#pragma once

#include "mbqc/circuit.hpp"
#include "mbqc/linalg.hpp"
#include "mbqc/pattern.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace mbqc::sim {

struct SimOptions {
    double alpha0 = default_alpha0();
    /// Maximum number of enumerated measurements for channel extraction.
    int branch_limit = 16;
    /// Guard on rows * cols of the dense buffer (amplitude count).
    std::size_t max_amplitudes = std::size_t{1} << 24;
};

/// Dense state on an ordered qubit list; the first qubit is the most
/// significant index bit.
struct StateVector {
    std::vector<QubitId> qubits;
    std::vector<cplx> amps;
};

/// Product state from one character per qubit: '0', '1', '+' or '-'.
StateVector product_state(const std::vector<QubitId>& qubits, const std::string& spec);

struct BranchRecord {
    std::map<QubitId, int> outcomes;
    /// Born weight of the branch (for operator runs, relative to a maximally
    /// mixed input).
    double weight = 0.0;
    /// Unnormalized branch operator, rows 2^|O| by cols 2^|I| in sorted
    /// output/input order.
    Mat op;
};

struct RunResult {
    StateVector state; // on sorted outputs, renormalized
    std::map<QubitId, int> outcomes;
    double probability = 1.0;
};

/// Input -> output completely positive map, as a Choi matrix of dimension
/// 2^(|I|+|O|) indexed by (input_row * 2^|O| + output_row).
struct Channel {
    std::vector<QubitId> inputs;
    std::vector<QubitId> outputs;
    Mat choi;
};

/// Supplies measurement outcomes: a forced bit list (errors when exhausted or
/// when a forced branch has zero probability) or a seeded Born sampler.
class OutcomeOracle {
public:
    static OutcomeOracle forced(std::vector<int> bits);
    static OutcomeOracle seeded(std::uint64_t seed);

    int next(double p0, const std::string& site);
    bool forced_mode() const { return forced_; }

private:
    OutcomeOracle() = default;
    bool forced_ = false;
    std::vector<int> bits_;
    std::size_t used_ = 0;
    std::uint64_t rng_state_ = 0;
};

RunResult run_pattern(const Pattern& p, const StateVector& input, OutcomeOracle oracle,
                      const SimOptions& opt = {});

Channel pattern_channel(const Pattern& p, const SimOptions& opt = {});
std::vector<BranchRecord> pattern_branches(const Pattern& p, const SimOptions& opt = {});
/// Single branch in operator form, outcomes forced (bit k = k-th measurement).
BranchRecord pattern_branch_operator(const Pattern& p, const std::vector<int>& forced,
                                     const SimOptions& opt = {});
/// Branch sampled by Born weight against a maximally mixed input.
BranchRecord sample_pattern_branch(const Pattern& p, std::uint64_t seed,
                                   const SimOptions& opt = {});

Channel circuit_channel(const Circuit& c, const SimOptions& opt = {});
std::vector<BranchRecord> circuit_branches(const Circuit& c, const SimOptions& opt = {});
BranchRecord sample_circuit_branch(const Circuit& c, std::uint64_t seed,
                                   const SimOptions& opt = {});
/// Full unitary; requires inputs == outputs == register.
Mat circuit_unitary(const Circuit& c, const SimOptions& opt = {});

/// Number of enumeration bits a full channel extraction would need.
int pattern_branch_bits(const Pattern& p);
int circuit_branch_bits(const Circuit& c);

struct ChannelComparison {
    bool equal = false;
    double distance = 0.0;
};
/// Max-entry Choi distance. Channels carry no global-phase freedom, so the
/// comparison is exact up to the tolerance.
ChannelComparison channels_equal(const Channel& a, const Channel& b, double tol);

Channel unitary_channel(const Mat& u, std::vector<QubitId> inputs, std::vector<QubitId> outputs);
Channel channel_from_kraus(const std::vector<Mat>& kraus, std::vector<QubitId> inputs,
                           std::vector<QubitId> outputs);

/// Tr_out(choi) - I, which is zero for a trace-preserving channel.
double trace_preservation_defect(const Channel& ch);

/// True iff all branch operators agree up to a unit scalar and every branch
/// is uniformly weighted for all inputs.
bool check_determinism(const Pattern& p, double tol, const SimOptions& opt = {});

} // namespace mbqc::sim
