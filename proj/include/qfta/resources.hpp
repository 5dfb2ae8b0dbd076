#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfta/arith.hpp"
#include "qfta/ir.hpp"

namespace qfta {

/// Basic-gate cost model: single-qubit gates and singly-controlled gates
/// weigh 1, a Toffoli weighs 6, a k-controlled NOT (k >= 3) expands to
/// 2k-1 Toffolis plus one CNOT, and each negative control adds the two
/// sandwiching NOTs. Multi-controlled rotations weigh like multi-controlled
/// NOTs of the same control count.
struct CostModel {
    long long single = 1;
    long long cnot = 1;
    long long toffoli = 6;
    long long neg_control_extra = 2;

    static CostModel paper() { return {}; }
    long long gate_weight(const Gate& g) const;
};

struct LoopCount {
    std::string name;
    int max_iters = 0;
    long long body_weighted = 0;  // weight of one pass through the body
};

struct ResourceReport {
    /// raw_1q / raw_cx / raw_ccx_equiv by (total) control count.
    std::map<std::string, long long> raw;
    long long weighted_total = 0;  // loop bodies counted once each
    int total_qubits = 0;
    std::map<std::string, int> ancilla_by_role;
    bool per_iteration = false;  // true when hybrid loops are present
    std::vector<LoopCount> loops;
    std::optional<long long> paper_formula_value;
    std::optional<std::string> deviation_note;
};

ResourceReport count(const Program& program, const CostModel& model);

/// Counts the circuit's main program and attaches qubit budget, ancilla
/// roles, the matching closed form where one exists, and any builder
/// deviation note.
ResourceReport count(const ArithCircuit& circuit, const CostModel& model);

/// The closed forms as printed: full circuits, QFT/IQFT and the four phase
/// blocks, plus the static prior-work comparison baselines.
long long paper_formula(const std::string& op, int n, int m);
bool has_paper_formula(const std::string& op);

/// Names accepted by paper_formula.
std::vector<std::string> formula_ops();

/// Proposed-vs-baseline table over width ranges, as CSV (header included)
/// or a JSON array.
std::string comparison_table(const std::vector<std::string>& ops, int n_lo,
                             int n_hi, int m_lo, int m_hi,
                             const std::string& format);

/// Least-squares fit of y = c2*x^2 + c1*x + c0.
struct QuadraticFit {
    double c2 = 0, c1 = 0, c0 = 0;
    double max_residual = 0;
};
QuadraticFit fit_quadratic(const std::vector<std::pair<double, double>>& pts);

}  // namespace qfta
