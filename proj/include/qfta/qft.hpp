#pragma once

#include "qfta/ir.hpp"

namespace qfta {

enum class Direction { Add, Subtract };

/// Phase-space add/subtract block between a Fourier-space accumulator and a
/// computational-basis addend register.
///
/// With `signed_addend` the addend's MSB carries weight -2^{m-1} (two's
/// complement); the sign contribution is folded into one gate per
/// (addend qubit, target qubit) pair, keeping the m(m+1)/2 + m(w-m) tally.
struct PhaseBlockSpec {
    Register target;   // accumulator, width w >= addend width
    Register addend;
    Direction direction = Direction::Add;
    bool modular = false;       // informational: w == n for modular blocks
    bool signed_addend = true;  // false: plain unsigned weights
};

/// Standard no-swap QFT on a register: width w Hadamards plus w(w-1)/2
/// controlled rotations, w(w+1)/2 gates total.
///
/// Phase-space convention: after the transform the register qubit at
/// MSB-first position l (1-based) carries |0> + e^{2*pi*i*x/2^{w-l+1}} |1>,
/// i.e. bit significance in phase space runs opposite to the computational
/// reading. Enumerating amplitudes in that order reproduces the DFT of x.
Program build_qft(const Register& reg, int total_qubits);

/// Exact inverse of build_qft; same gate count with inverse rotations.
Program build_iqft(const Register& reg, int total_qubits);

/// Adds (or subtracts) the addend register's value into the Fourier-space
/// target, wrapping modulo 2^w. Every emitted gate optionally carries
/// `extra_controls`.
Program build_phase_add(const PhaseBlockSpec& spec, int total_qubits,
                        const std::vector<Control>& extra_controls = {});

/// Adds (or subtracts) the constant 1 into the Fourier-space target: one
/// rotation per target qubit, each carrying `controls`.
Program build_phase_add_one(const Register& target, Direction direction,
                            int total_qubits,
                            const std::vector<Control>& controls = {});

}  // namespace qfta
