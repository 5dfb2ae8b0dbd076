#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfta/ir.hpp"

namespace qfta {

struct ResourceBound : Error { using Error::Error; };

/// One exhaustive sweep of an operation over width ranges. Oracles are
/// named classical functions over host integers; they never touch circuit
/// code. Ops: add, sub, madd, msub, tc, abs, cmp, mul, div, exp.
struct SweepSpec {
    std::string op;
    int n_lo = 2, n_hi = 4;
    int m_lo = 2, m_hi = 4;
    bool preserve = true;  // mul/div/exp input-preserving variants
};

struct SweepFailure {
    int n = 0, m = 0;
    std::int64_t a = 0, b = 0;
    std::string field;  // result / preserved register / iterations
    std::string expected;
    std::string got;
};

struct SweepReport {
    std::string op;
    long long cases = 0;
    std::vector<SweepFailure> failures;
    double seconds = 0;

    bool ok() const { return failures.empty(); }
};

/// Runs every basis input passing the op's predicate (b != 0 for div,
/// b >= 0 for exp), in parallel, aggregated in input order. Throws
/// ResourceBound when a circuit would exceed 24 qubits.
SweepReport run_sweep(const SweepSpec& spec);

/// The default desk-scale sweep set: add/sub/madd/msub/tc/abs/cmp at
/// n, m <= 4 and mul/div/exp at n, m <= 3.
std::vector<SweepSpec> default_sweeps();

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Unitarity, inversion, involution, commutation, linearity and norm
/// preservation checks over small widths.
std::vector<PropertyResult> run_properties();

std::string report_json(const std::vector<SweepReport>& sweeps,
                        const std::vector<PropertyResult>& properties);
std::string report_junit(const std::vector<SweepReport>& sweeps,
                         const std::vector<PropertyResult>& properties);

}  // namespace qfta
