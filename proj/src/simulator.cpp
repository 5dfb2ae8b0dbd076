#include "qfta/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qfta {

namespace {

constexpr double kSnapTol = 1e-9;    // measurement snaps to the dominant branch
constexpr double kNormTol = 1e-8;    // run() errs past this drift

std::uint64_t qubit_mask(int qubit, int num_qubits) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

}  // namespace

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector s;
    s.num_qubits = num_qubits;
    s.amps.assign(std::uint64_t{1} << num_qubits, Amp{0.0, 0.0});
    s.amps.at(index) = Amp{1.0, 0.0};
    return s;
}

StateVector StateVector::from_bits(std::string_view bits) {
    std::uint64_t index = 0;
    for (char c : bits) index = (index << 1) | (c == '1' ? 1u : 0u);
    return basis(static_cast<int>(bits.size()), index);
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Amp& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

std::uint64_t StateVector::dominant_index(double tol) const {
    std::uint64_t best = 0;
    double best_p = -1.0;
    for (std::uint64_t z = 0; z < amps.size(); ++z) {
        double p = std::norm(amps[z]);
        if (p > best_p) {
            best_p = p;
            best = z;
        }
    }
    if (best_p < 1.0 - tol)
        throw NormError("state is not a computational basis state");
    return best;
}

void apply_gate(StateVector& state, const Gate& gate) {
    gate.validate(state.num_qubits);
    const int nq = state.num_qubits;
    const std::uint64_t n = state.size();
    const std::uint64_t tmask = qubit_mask(gate.target, nq);
    std::uint64_t cmask = 0, cval = 0;
    for (const Control& c : gate.controls) {
        const std::uint64_t m = qubit_mask(c.qubit, nq);
        cmask |= m;
        if (c.polarity == Polarity::Positive) cval |= m;
    }
    auto* amps = state.amps.data();

    switch (gate.kind) {
        case GateKind::H: {
            const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
            for (std::uint64_t z = 0; z < n; ++z) {
                if ((z & cmask) != cval || (z & tmask)) continue;
                const Amp a0 = amps[z];
                const Amp a1 = amps[z | tmask];
                amps[z] = (a0 + a1) * inv_sqrt2;
                amps[z | tmask] = (a0 - a1) * inv_sqrt2;
            }
            break;
        }
        case GateKind::X: {
            for (std::uint64_t z = 0; z < n; ++z) {
                if ((z & cmask) != cval || (z & tmask)) continue;
                std::swap(amps[z], amps[z | tmask]);
            }
            break;
        }
        case GateKind::Phase: {
            // Angle computed directly as 2*pi / 2^k; never accumulated.
            const double angle =
                (gate.inverse ? -2.0 : 2.0) * std::numbers::pi /
                static_cast<double>(std::uint64_t{1} << gate.k);
            const Amp factor{std::cos(angle), std::sin(angle)};
            const std::uint64_t full_mask = cmask | tmask;
            const std::uint64_t full_val = cval | tmask;
            for (std::uint64_t z = 0; z < n; ++z)
                if ((z & full_mask) == full_val) amps[z] *= factor;
            break;
        }
    }
}

namespace {

class Executor {
public:
    Executor(StateVector state, std::uint64_t seed)
        : state_(std::move(state)), rng_(seed) {}

    void exec(const std::vector<Item>& items) {
        for (const Item& it : items) {
            if (const auto* g = std::get_if<Gate>(&it.node)) {
                apply_gate(state_, *g);
                if (++gates_since_check_ >= 64) check_norm();
            } else if (const auto* m = std::get_if<Measure>(&it.node)) {
                result_.classical_bits[m->slot] = measure(m->qubit);
            } else {
                exec_loop(std::get<RepeatUntil>(it.node));
            }
        }
    }

    RunResult finish() {
        check_norm();
        result_.final_state = std::move(state_);
        return std::move(result_);
    }

private:
    void exec_loop(const RepeatUntil& loop) {
        int iters = 0;
        while (true) {
            if (measure(loop.flag) == loop.expect) break;
            if (iters == loop.max_iters)
                throw LoopBoundExceeded("loop '" + loop.name + "' exceeded " +
                                        std::to_string(loop.max_iters) +
                                        " iterations");
            exec(loop.body);
            ++iters;
        }
        result_.iterations_used[loop.name] += iters;
    }

    int measure(int qubit) {
        const std::uint64_t mask = qubit_mask(qubit, state_.num_qubits);
        double p1 = 0.0;
        for (std::uint64_t z = 0; z < state_.size(); ++z)
            if (z & mask) p1 += std::norm(state_.amps[z]);
        int outcome;
        if (p1 >= 1.0 - kSnapTol) {
            outcome = 1;
        } else if (p1 <= kSnapTol) {
            outcome = 0;
        } else {
            result_.deterministic = false;
            outcome = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p1;
        }
        collapse(mask, outcome, outcome ? p1 : 1.0 - p1);
        return outcome;
    }

    void collapse(std::uint64_t mask, int outcome, double prob) {
        const double scale = 1.0 / std::sqrt(prob);
        for (std::uint64_t z = 0; z < state_.size(); ++z) {
            const bool match = ((z & mask) != 0) == (outcome == 1);
            state_.amps[z] = match ? state_.amps[z] * scale : Amp{0.0, 0.0};
        }
    }

    void check_norm() {
        gates_since_check_ = 0;
        const double n = state_.norm();
        if (std::abs(n - 1.0) > kNormTol)
            throw NormError("state norm drifted to " + std::to_string(n));
    }

    StateVector state_;
    std::mt19937_64 rng_;
    RunResult result_;
    int gates_since_check_ = 0;
};

}  // namespace

RunResult run(const Program& program, StateVector initial, std::uint64_t seed) {
    if (initial.num_qubits != program.total_qubits)
        throw IndexError("initial state does not match program qubit count");
    program.validate();
    Executor ex(std::move(initial), seed);
    ex.exec(program.items);
    return ex.finish();
}

RunResult run(const Program& program, std::string_view initial_bits,
              std::uint64_t seed) {
    return run(program, StateVector::from_bits(initial_bits), seed);
}

std::vector<std::vector<Amp>> unitary_of(const Program& program) {
    if (!program.pure())
        throw NotPureError("unitary_of requires a program without measurement");
    const int q = program.total_qubits;
    if (q > 12) throw WidthError("unitary_of limited to 12 qubits");
    const std::uint64_t n = std::uint64_t{1} << q;
    std::vector<std::vector<Amp>> u(n, std::vector<Amp>(n));
    for (std::uint64_t j = 0; j < n; ++j) {
        RunResult r = run(program, StateVector::basis(q, j));
        for (std::uint64_t i = 0; i < n; ++i) u[i][j] = r.final_state.amps[i];
    }
    return u;
}

}  // namespace qfta
