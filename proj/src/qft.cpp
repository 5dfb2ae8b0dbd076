#include "qfta/qft.hpp"

namespace qfta {

Program build_qft(const Register& reg, int total_qubits) {
    reg.validate();
    const int w = reg.width();
    Program p(total_qubits);
    for (int l = 0; l < w; ++l) {
        p.push(Gate::h(reg.qubits[l]));
        for (int j = l + 1; j < w; ++j)
            p.push(Gate::phase(j - l + 1, reg.qubits[l], false,
                               {{reg.qubits[j], Polarity::Positive}}));
    }
    return p;
}

Program build_iqft(const Register& reg, int total_qubits) {
    return inverse_of(build_qft(reg, total_qubits));
}

Program build_phase_add(const PhaseBlockSpec& spec, int total_qubits,
                        const std::vector<Control>& extra_controls) {
    spec.target.validate();
    spec.addend.validate();
    const int w = spec.target.width();
    const int m = spec.addend.width();
    if (m > w) throw WidthError("phase block requires addend width <= target width");

    const bool subtract = spec.direction == Direction::Subtract;
    Program p(total_qubits);
    // Addend qubit at MSB-first position j (1-based) carries weight 2^{m-j};
    // a signed addend's sign qubit carries -2^{m-1}, which modulo 2^w is the
    // replicated-sign contribution folded into a single inverse rotation per
    // target qubit.
    for (int j = 1; j <= m; ++j) {
        const bool sign_qubit = spec.signed_addend && j == 1;
        const int exponent_shift = sign_qubit ? m - 1 : m - j;
        for (int l = 1; l <= w; ++l) {
            const int k = w - l + 1 - exponent_shift;
            if (k < 1) continue;  // rotation is a multiple of 2*pi
            std::vector<Control> controls = extra_controls;
            controls.push_back({spec.addend.qubits[j - 1], Polarity::Positive});
            const bool inverse = subtract != sign_qubit;
            p.push(Gate::phase(k, spec.target.qubits[l - 1], inverse,
                               std::move(controls)));
        }
    }
    return p;
}

Program build_phase_add_one(const Register& target, Direction direction,
                            int total_qubits,
                            const std::vector<Control>& controls) {
    target.validate();
    const int w = target.width();
    Program p(total_qubits);
    for (int l = 1; l <= w; ++l)
        p.push(Gate::phase(w - l + 1, target.qubits[l - 1],
                           direction == Direction::Subtract, controls));
    return p;
}

}  // namespace qfta
