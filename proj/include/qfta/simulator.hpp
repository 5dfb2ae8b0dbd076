#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qfta/ir.hpp"

namespace qfta {

using Amp = std::complex<double>;

/// Dense amplitude array over all qubits of a Program. Qubit 0 is the
/// highest-order bit of the array index.
struct StateVector {
    int num_qubits = 0;
    std::vector<Amp> amps;

    static StateVector basis(int num_qubits, std::uint64_t index);
    static StateVector from_bits(std::string_view bits);

    std::uint64_t size() const { return std::uint64_t{1} << num_qubits; }
    double norm() const;

    /// Index of the basis state holding probability >= 1 - tol.
    /// Throws NormError when the state is not that close to a basis state.
    std::uint64_t dominant_index(double tol = 1e-9) const;

    /// Bit of qubit q in basis index z under the global ordering.
    static int bit_of(std::uint64_t z, int qubit, int num_qubits) {
        return static_cast<int>(z >> (num_qubits - 1 - qubit)) & 1;
    }
};

/// In-place application of one gate; amplitudes change only where every
/// control matches its polarity.
void apply_gate(StateVector& state, const Gate& gate);

struct RunResult {
    StateVector final_state;
    std::map<std::string, int> classical_bits;
    std::map<std::string, int> iterations_used;
    /// True when every measurement outcome along the run had probability
    /// 1 within 1e-9.
    bool deterministic = true;
};

RunResult run(const Program& program, StateVector initial, std::uint64_t seed = 0);
RunResult run(const Program& program, std::string_view initial_bits,
              std::uint64_t seed = 0);

/// Full matrix of a pure program (q <= 12): column j is the final state on
/// basis input j. Throws NotPureError on measurement or loops.
std::vector<std::vector<Amp>> unitary_of(const Program& program);

}  // namespace qfta
