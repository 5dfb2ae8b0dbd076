#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfta/ir.hpp"
#include "qfta/qft.hpp"
#include "qfta/simulator.hpp"

namespace qfta {

/// How the non-modular adder/subtractor prepares the overflow qubit a0.
///
/// LiteralToffoli is the published prescription (two mixed-polarity Toffoli
/// gates on a1, b1); it does not satisfy the a+b contract, so builders
/// default to SignExtendCnot (a single CNOT a1 -> a0) and report the
/// constant gate-count delta.
enum class SignPrep { LiteralToffoli, SignExtendCnot };

struct AncillaInfo {
    std::string reg;   // key into ArithCircuit::registers
    std::string role;  // overflow a0, sctrl, ctrl, one-constant, garbage,
                       // copy a', copy b', flags c0c1c2, sign store s
};

/// A complete arithmetic circuit with its register map and ancilla roles.
/// `prep` holds only constant-ancilla preparation (X gates); `main` is the
/// operation proper and is what resource accounting covers.
struct ArithCircuit {
    std::string op;
    int n = 0, m = 0;
    int total_qubits = 0;
    Program prep;
    Program main;
    std::map<std::string, Register> registers;
    std::string result_register;
    std::vector<AncillaInfo> ancillas;
    bool preserves_inputs = false;
    /// Ancilla count under the paper's accounting convention.
    int table_ancilla = 0;
    std::optional<std::string> deviation_note;
    /// Known constant offset of the weighted count vs the closed form.
    long long count_delta = 0;

    Program full() const { return compose({prep, main}); }
    const Register& reg(const std::string& name) const;
};

// -- addition / subtraction ------------------------------------------------

ArithCircuit build_qnmadd(int n, int m,
                          SignPrep prep = SignPrep::SignExtendCnot);
ArithCircuit build_qnmsub(int n, int m,
                          SignPrep prep = SignPrep::SignExtendCnot);
ArithCircuit build_qmadd(int n, int m);
ArithCircuit build_qmsub(int n, int m);

// -- two's complement / absolute value / comparison ------------------------

ArithCircuit build_qtc(int n);
ArithCircuit build_qabs(int n);
ArithCircuit build_qcomp(int n, int m);

// -- register utilities ----------------------------------------------------

/// Basis-state copy: width CNOTs src_i -> dst_i. dst must be |0...0>.
Program build_uc(const Register& src, const Register& dst, int total_qubits);

/// Swap-with-zero: per qubit pair CNOT x->z then CNOT z->x, 2*width CNOTs.
Program build_ur(const Register& x, const Register& zero, int total_qubits);

// -- multiply / divide / exponentiate --------------------------------------

ArithCircuit build_qnmmul(int n, int m, bool preserve_b);
ArithCircuit build_qnmdiv(int n, int m, bool preserve_inputs);
ArithCircuit build_qexp(int n, int m, int result_width = -1,
                        bool preserve_b = false);

/// Dispatch by operation name ("qnmadd", "qtc", "qnmmul", ...). `preserve`
/// selects the input-preserving variants where one exists; `result_width`
/// only applies to qexp.
ArithCircuit build_named(const std::string& op, int n, int m,
                         bool preserve = true, int result_width = -1);

// -- execution helpers -----------------------------------------------------

struct ArithRun {
    std::int64_t result = 0;
    std::map<std::string, std::int64_t> values;      // signed register reads
    std::map<std::string, std::uint64_t> bits;       // unsigned register reads
    std::map<std::string, int> iterations;
    bool deterministic = true;
};

/// Encodes the inputs, runs the full circuit, and decodes every register
/// from the (deterministic) final basis state.
ArithRun run_arith(const ArithCircuit& circuit, std::int64_t a,
                   std::optional<std::int64_t> b = std::nullopt,
                   std::uint64_t seed = 0);

/// Global bitstring with the inputs encoded and everything else |0>.
std::string initial_bits(const ArithCircuit& circuit, std::int64_t a,
                         std::optional<std::int64_t> b = std::nullopt);

}  // namespace qfta
