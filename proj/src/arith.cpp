#include "qfta/arith.hpp"

namespace qfta {

namespace {

constexpr Polarity kPos = Polarity::Positive;
constexpr Polarity kNeg = Polarity::Negative;

void require_widths(int n, int m) {
    if (m < 2 || m > n) throw WidthError("requires 2 <= m <= n");
}

/// Two's-complement negation of `reg` conditioned on `ctrls`: bitwise NOT,
/// then +1 added through the Fourier basis using the |1> constant qubit.
Program qtc_fragment(const Register& reg, int one_qubit,
                     std::vector<Control> ctrls, int total) {
    Program p(total);
    for (int q : reg.qubits) p.push(Gate::x(q, ctrls));
    p.append(build_qft(reg, total));
    std::vector<Control> phase_ctrls = ctrls;
    phase_ctrls.push_back({one_qubit, kPos});
    p.append(build_phase_add_one(reg, Direction::Add, total, phase_ctrls));
    p.append(build_iqft(reg, total));
    return p;
}

/// Modular -1 on a computational-basis register (QFT, subtract |1>, IQFT).
Program decrement_fragment(const Register& reg, int one_qubit, int total) {
    Program p(total);
    p.append(build_qft(reg, total));
    p.append(build_phase_add_one(reg, Direction::Subtract, total,
                                 {{one_qubit, kPos}}));
    p.append(build_iqft(reg, total));
    return p;
}

/// Flips `flag` when every qubit of `reg` is |0>.
Gate check_zero(const Register& reg, int flag) {
    std::vector<Control> ctrls;
    for (int q : reg.qubits) ctrls.push_back({q, kNeg});
    return Gate::x(flag, std::move(ctrls));
}

ArithCircuit build_nm_addsub(int n, int m, Direction dir, SignPrep prep) {
    require_widths(n, m);
    ArithCircuit c;
    c.op = dir == Direction::Add ? "qnmadd" : "qnmsub";
    c.n = n;
    c.m = m;
    c.total_qubits = n + m + 1;
    c.registers["a0"] = make_register("a0", 0, 1);
    c.registers["a"] = make_register("a", 1, n);
    c.registers["b"] = make_register("b", n + 1, m);
    Register acc = make_register("acc", 0, n + 1);
    c.registers["acc"] = acc;
    c.result_register = "acc";
    c.ancillas.push_back({"a0", "overflow a0"});
    c.table_ancilla = 1;

    const int a1 = c.registers["a"].msb();
    const int b1 = c.registers["b"].msb();
    Program main(c.total_qubits);
    if (prep == SignPrep::LiteralToffoli) {
        main.push(Gate::x(0, {{a1, kNeg}, {b1, kPos}}));
        main.push(Gate::x(0, {{a1, kPos}, {b1, kNeg}}));
    } else {
        main.push(Gate::x(0, {{a1, kPos}}));
        c.count_delta = -15;
        c.deviation_note =
            "sign preparation substituted: CNOT a1->a0 sign extension instead "
            "of the two mixed-polarity Toffoli gates (which fail the a+b "
            "contract); weighted count is the closed form minus 15";
    }
    main.append(build_qft(acc, c.total_qubits));
    main.append(build_phase_add({acc, c.registers["b"], dir, false, true},
                                c.total_qubits));
    main.append(build_iqft(acc, c.total_qubits));
    c.main = std::move(main);
    c.prep = Program(c.total_qubits);
    return c;
}

ArithCircuit build_m_addsub(int n, int m, Direction dir) {
    require_widths(n, m);
    ArithCircuit c;
    c.op = dir == Direction::Add ? "qmadd" : "qmsub";
    c.n = n;
    c.m = m;
    c.total_qubits = n + m;
    c.registers["a"] = make_register("a", 0, n);
    c.registers["b"] = make_register("b", n, m);
    c.result_register = "a";
    c.table_ancilla = 0;

    Program main(c.total_qubits);
    main.append(build_qft(c.registers["a"], c.total_qubits));
    main.append(build_phase_add({c.registers["a"], c.registers["b"], dir, true, true},
                                c.total_qubits));
    main.append(build_iqft(c.registers["a"], c.total_qubits));
    c.main = std::move(main);
    c.prep = Program(c.total_qubits);
    return c;
}

}  // namespace

const Register& ArithCircuit::reg(const std::string& name) const {
    auto it = registers.find(name);
    if (it == registers.end()) throw UnknownOp("no register named " + name);
    return it->second;
}

ArithCircuit build_qnmadd(int n, int m, SignPrep prep) {
    return build_nm_addsub(n, m, Direction::Add, prep);
}

ArithCircuit build_qnmsub(int n, int m, SignPrep prep) {
    return build_nm_addsub(n, m, Direction::Subtract, prep);
}

ArithCircuit build_qmadd(int n, int m) {
    return build_m_addsub(n, m, Direction::Add);
}

ArithCircuit build_qmsub(int n, int m) {
    return build_m_addsub(n, m, Direction::Subtract);
}

ArithCircuit build_qtc(int n) {
    if (n < 2) throw WidthError("qtc requires n >= 2");
    ArithCircuit c;
    c.op = "qtc";
    c.n = n;
    c.m = 0;
    c.total_qubits = n + 1;
    c.registers["a"] = make_register("a", 0, n);
    c.registers["one"] = make_register("one", n, 1);
    c.result_register = "a";
    c.ancillas.push_back({"one", "one-constant"});
    c.table_ancilla = 1;

    c.prep = Program(c.total_qubits);
    c.prep.push(Gate::x(n));
    c.main = qtc_fragment(c.registers["a"], n, {}, c.total_qubits);
    return c;
}

ArithCircuit build_qabs(int n) {
    if (n < 2) throw WidthError("qabs requires n >= 2");
    ArithCircuit c;
    c.op = "qabs";
    c.n = n;
    c.m = 0;
    c.total_qubits = n + 2;
    c.registers["a"] = make_register("a", 0, n);
    c.registers["s"] = make_register("s", n, 1);
    c.registers["one"] = make_register("one", n + 1, 1);
    c.result_register = "a";
    c.ancillas.push_back({"s", "sign store s"});
    c.ancillas.push_back({"one", "one-constant"});
    c.table_ancilla = 2;

    c.prep = Program(c.total_qubits);
    c.prep.push(Gate::x(n + 1));
    Program main(c.total_qubits);
    // Sign moves to s; the stored sign then drives negation of the whole
    // register, so the minimum value wraps onto itself instead of losing
    // its sign bit.
    main.push(Gate::x(n, {{c.registers["a"].msb(), kPos}}));
    main.append(qtc_fragment(c.registers["a"], n + 1, {{n, kPos}},
                             c.total_qubits));
    c.main = std::move(main);
    return c;
}

ArithCircuit build_qcomp(int n, int m) {
    require_widths(n, m);
    ArithCircuit c;
    c.op = "qcomp";
    c.n = n;
    c.m = m;
    c.total_qubits = n + m + 4;
    c.registers["a0"] = make_register("a0", 0, 1);
    c.registers["a"] = make_register("a", 1, n);
    c.registers["b"] = make_register("b", n + 1, m);
    Register acc = make_register("acc", 0, n + 1);
    c.registers["acc"] = acc;
    const int c0 = n + m + 1, c1 = n + m + 2, c2 = n + m + 3;
    c.registers["c0"] = make_register("c0", c0, 1);
    c.registers["c1"] = make_register("c1", c1, 1);
    c.registers["c2"] = make_register("c2", c2, 1);
    c.registers["flags"] = make_register("flags", c0, 3);
    c.result_register = "flags";
    c.ancillas.push_back({"flags", "flags c0c1c2"});
    c.ancillas.push_back({"a0", "overflow a0"});
    // The paper books the overflow qubit under the embedded subtractor's
    // budget; the comparator's own ancillas are the three flags.
    c.table_ancilla = 3;
    c.preserves_inputs = true;

    const int a1 = c.registers["a"].msb();
    Program sub(c.total_qubits);
    sub.push(Gate::x(0, {{a1, kPos}}));
    sub.append(build_qft(acc, c.total_qubits));
    sub.append(build_phase_add(
        {acc, c.registers["b"], Direction::Subtract, false, true},
        c.total_qubits));
    sub.append(build_iqft(acc, c.total_qubits));

    Program main(c.total_qubits);
    main.append(sub);
    // Flags from the sign and zero-ness of a-b; exactly one fires.
    main.push(Gate::x(c1, {{0, kPos}}));
    main.push(Gate::x(c0, {{0, kNeg}}));
    std::vector<Control> zero_ctrls;
    for (int q : acc.qubits) zero_ctrls.push_back({q, kNeg});
    main.push(Gate::x(c2, zero_ctrls));
    main.push(Gate::x(c0, {{c2, kPos}}));
    // Restore a (and a0) by undoing the subtraction block.
    main.append(inverse_of(sub));
    c.main = std::move(main);
    c.prep = Program(c.total_qubits);
    return c;
}

Program build_uc(const Register& src, const Register& dst, int total_qubits) {
    if (src.width() != dst.width())
        throw WidthError("copy requires equal register widths");
    Program p(total_qubits);
    for (int i = 0; i < src.width(); ++i)
        p.push(Gate::x(dst.qubits[i], {{src.qubits[i], kPos}}));
    return p;
}

Program build_ur(const Register& x, const Register& zero, int total_qubits) {
    if (x.width() != zero.width())
        throw WidthError("swap-with-zero requires equal register widths");
    Program p(total_qubits);
    for (int i = 0; i < x.width(); ++i) {
        p.push(Gate::x(zero.qubits[i], {{x.qubits[i], kPos}}));
        p.push(Gate::x(x.qubits[i], {{zero.qubits[i], kPos}}));
    }
    return p;
}

ArithCircuit build_qnmmul(int n, int m, bool preserve_b) {
    require_widths(n, m);
    ArithCircuit c;
    c.op = "qnmmul";
    c.n = n;
    c.m = m;
    const int r = n + m - 1;
    int next = 0;
    c.registers["a"] = make_register("a", next, n), next += n;
    c.registers["b"] = make_register("b", next, m), next += m;
    if (preserve_b) {
        c.registers["b_copy"] = make_register("b_copy", next, m), next += m;
        c.ancillas.push_back({"b_copy", "copy b'"});
    }
    c.registers["result"] = make_register("result", next, r), next += r;
    const int sctrl = next++, one = next++, ctrl = next++;
    c.registers["sctrl"] = make_register("sctrl", sctrl, 1);
    c.registers["one"] = make_register("one", one, 1);
    c.registers["ctrl"] = make_register("ctrl", ctrl, 1);
    c.total_qubits = next;
    c.result_register = "result";
    c.ancillas.push_back({"result", "result"});
    c.ancillas.push_back({"sctrl", "sctrl"});
    c.ancillas.push_back({"one", "one-constant"});
    c.ancillas.push_back({"ctrl", "ctrl"});
    c.table_ancilla = preserve_b ? n + 2 * m + 2 : n + m + 2;
    c.preserves_inputs = preserve_b;

    const Register& work = preserve_b ? c.registers["b_copy"] : c.registers["b"];
    const Register& result = c.registers["result"];
    const int b1 = c.registers["b"].msb();

    c.prep = Program(c.total_qubits);
    c.prep.push(Gate::x(one));

    Program main(c.total_qubits);
    main.push(Gate::x(sctrl, {{b1, kPos}}));
    if (preserve_b)
        main.append(build_uc(c.registers["b"], work, c.total_qubits));
    main.append(qtc_fragment(work, one, {{sctrl, kPos}}, c.total_qubits));
    main.append(build_qft(result, c.total_qubits));
    main.push(check_zero(work, ctrl));

    RepeatUntil loop;
    loop.name = "mul_loop";
    loop.flag = ctrl;
    loop.expect = 1;
    loop.max_iters = 1 << (m - 1);
    Program body(c.total_qubits);
    body.append(build_phase_add({result, c.registers["a"], Direction::Add,
                                 false, true},
                                c.total_qubits));
    body.append(decrement_fragment(work, one, c.total_qubits));
    body.push(check_zero(work, ctrl));
    loop.body = std::move(body.items);
    main.push(std::move(loop));

    main.append(build_iqft(result, c.total_qubits));
    main.append(qtc_fragment(result, one, {{sctrl, kPos}}, c.total_qubits));
    if (preserve_b) main.push(Gate::x(sctrl, {{b1, kPos}}));
    c.main = std::move(main);
    return c;
}

ArithCircuit build_qnmdiv(int n, int m, bool preserve_inputs) {
    require_widths(n, m);
    ArithCircuit c;
    c.op = "qnmdiv";
    c.n = n;
    c.m = m;
    int next = 0;
    c.registers["a"] = make_register("a", next, n), next += n;
    c.registers["b"] = make_register("b", next, m), next += m;
    if (preserve_inputs) {
        c.registers["a_copy"] = make_register("a_copy", next, n), next += n;
        c.registers["b_copy"] = make_register("b_copy", next, m), next += m;
        c.ancillas.push_back({"a_copy", "copy a'"});
        c.ancillas.push_back({"b_copy", "copy b'"});
    }
    c.registers["result"] = make_register("result", next, n), next += n;
    const int sctrl = next++, one = next++, ctrl = next++;
    c.registers["sctrl"] = make_register("sctrl", sctrl, 1);
    c.registers["one"] = make_register("one", one, 1);
    c.registers["ctrl"] = make_register("ctrl", ctrl, 1);
    int sign_store = -1;
    if (!preserve_inputs) {
        sign_store = next++;
        c.registers["s"] = make_register("s", sign_store, 1);
        c.ancillas.push_back({"s", "garbage Grb"});
    }
    c.total_qubits = next;
    c.result_register = "result";
    c.ancillas.push_back({"result", "result"});
    c.ancillas.push_back({"sctrl", "sctrl"});
    c.ancillas.push_back({"one", "one-constant"});
    c.ancillas.push_back({"ctrl", "ctrl"});
    c.table_ancilla = preserve_inputs ? 2 * n + m + 3 : n + 4;
    if (!preserve_inputs)
        c.deviation_note =
            "in-place division keeps one extra sign-store qubit (n+4 ancillas "
            "vs the published n+3): (a,b) -> (|a|,|b|, sA xor sB) drops one "
            "bit and is not reversible without it";
    c.preserves_inputs = preserve_inputs;

    const int a1 = c.registers["a"].msb();
    const int b1 = c.registers["b"].msb();
    const Register& work_a =
        preserve_inputs ? c.registers["a_copy"] : c.registers["a"];
    const Register& work_b =
        preserve_inputs ? c.registers["b_copy"] : c.registers["b"];
    const Register& result = c.registers["result"];

    c.prep = Program(c.total_qubits);
    c.prep.push(Gate::x(one));

    Program main(c.total_qubits);
    main.push(Gate::x(sctrl, {{a1, kPos}, {b1, kNeg}}));
    main.push(Gate::x(sctrl, {{a1, kNeg}, {b1, kPos}}));
    if (preserve_inputs) {
        main.append(build_uc(c.registers["a"], work_a, c.total_qubits));
        main.append(build_uc(c.registers["b"], work_b, c.total_qubits));
        main.append(qtc_fragment(work_a, one, {{a1, kPos}}, c.total_qubits));
        main.append(qtc_fragment(work_b, one, {{b1, kPos}}, c.total_qubits));
    } else {
        main.push(Gate::x(sign_store, {{a1, kPos}}));
        main.append(qtc_fragment(work_a, one, {{sign_store, kPos}},
                                 c.total_qubits));
        main.push(Gate::x(ctrl, {{b1, kPos}}));
        main.append(qtc_fragment(work_b, one, {{ctrl, kPos}}, c.total_qubits));
        // ctrl = sB xor (sA xor sB) xor sA = 0 again.
        main.push(Gate::x(ctrl, {{sctrl, kPos}}));
        main.push(Gate::x(ctrl, {{sign_store, kPos}}));
    }
    main.append(build_qft(result, c.total_qubits));

    RepeatUntil loop;
    loop.name = "div_loop";
    loop.flag = ctrl;
    loop.expect = 1;
    loop.max_iters = (1 << (n - 1)) + 1;
    Program body(c.total_qubits);
    body.append(build_qft(work_a, c.total_qubits));
    body.append(build_phase_add({work_a, work_b, Direction::Subtract, true,
                                 false},
                                c.total_qubits));
    body.append(build_iqft(work_a, c.total_qubits));
    body.push(Gate::x(ctrl, {{work_a.msb(), kPos}}));
    // The overshoot pass leaves the remainder negative; the quotient
    // increment is gated off once ctrl is raised.
    body.append(build_phase_add_one(result, Direction::Add, c.total_qubits,
                                    {{one, kPos}, {ctrl, kNeg}}));
    loop.body = std::move(body.items);
    main.push(std::move(loop));

    main.append(build_iqft(result, c.total_qubits));
    main.append(qtc_fragment(result, one, {{sctrl, kPos}}, c.total_qubits));
    c.main = std::move(main);
    return c;
}

ArithCircuit build_qexp(int n, int m, int result_width, bool preserve_b) {
    require_widths(n, m);
    const int r = result_width < 0 ? n + m - 1 : result_width;
    if (r < 2) throw WidthError("exponentiation result width must be >= 2");
    ArithCircuit c;
    c.op = "qexp";
    c.n = n;
    c.m = m;
    int next = 0;
    c.registers["a"] = make_register("a", next, n), next += n;
    c.registers["b"] = make_register("b", next, m), next += m;
    if (preserve_b) {
        c.registers["b_copy"] = make_register("b_copy", next, m), next += m;
        c.ancillas.push_back({"b_copy", "copy b'"});
    }
    c.registers["result"] = make_register("result", next, r), next += r;
    c.registers["grb"] = make_register("grb", next, r), next += r;
    const int one = next++, ctrl = next++;
    c.registers["one"] = make_register("one", one, 1);
    c.registers["ctrl"] = make_register("ctrl", ctrl, 1);
    c.total_qubits = next;
    c.result_register = "result";
    c.ancillas.push_back({"result", "result"});
    c.ancillas.push_back({"grb", "garbage Grb"});
    c.ancillas.push_back({"one", "one-constant"});
    c.ancillas.push_back({"ctrl", "ctrl"});
    c.table_ancilla = 2 * r + 2 + (preserve_b ? m : 0);
    c.preserves_inputs = preserve_b;

    const Register& work = preserve_b ? c.registers["b_copy"] : c.registers["b"];
    const Register& result = c.registers["result"];
    const Register& grb = c.registers["grb"];

    c.prep = Program(c.total_qubits);
    c.prep.push(Gate::x(one));
    c.prep.push(Gate::x(result.qubits.back()));  // result starts at |1>

    Program main(c.total_qubits);
    if (preserve_b)
        main.append(build_uc(c.registers["b"], work, c.total_qubits));
    main.push(check_zero(work, ctrl));

    // Inner multiplier: the current result acts as an unsigned repetition
    // count for adding a into grb; signs come out right through the modular
    // phase arithmetic, so no sctrl qubit is needed here.
    RepeatUntil inner;
    inner.name = "exp_mul_loop";
    inner.flag = ctrl;
    inner.expect = 1;
    inner.max_iters = 1 << r;
    Program inner_body(c.total_qubits);
    inner_body.append(build_phase_add({grb, c.registers["a"], Direction::Add,
                                       false, true},
                                      c.total_qubits));
    inner_body.append(decrement_fragment(result, one, c.total_qubits));
    inner_body.push(check_zero(result, ctrl));
    inner.body = std::move(inner_body.items);

    RepeatUntil outer;
    outer.name = "exp_loop";
    outer.flag = ctrl;
    outer.expect = 1;
    outer.max_iters = 1 << (m - 1);
    Program outer_body(c.total_qubits);
    outer_body.append(build_qft(grb, c.total_qubits));
    outer_body.push(check_zero(result, ctrl));
    outer_body.push(std::move(inner));
    outer_body.push(Gate::x(ctrl));  // inner loop always exits with ctrl = 1
    outer_body.append(build_iqft(grb, c.total_qubits));
    outer_body.append(build_ur(grb, result, c.total_qubits));
    outer_body.append(decrement_fragment(work, one, c.total_qubits));
    outer_body.push(check_zero(work, ctrl));
    outer.body = std::move(outer_body.items);
    main.push(std::move(outer));
    c.main = std::move(main);
    return c;
}

ArithCircuit build_named(const std::string& op, int n, int m, bool preserve,
                         int result_width) {
    if (op == "qnmadd") return build_qnmadd(n, m);
    if (op == "qnmsub") return build_qnmsub(n, m);
    if (op == "qmadd") return build_qmadd(n, m);
    if (op == "qmsub") return build_qmsub(n, m);
    if (op == "qtc") return build_qtc(n);
    if (op == "qabs") return build_qabs(n);
    if (op == "qcomp") return build_qcomp(n, m);
    if (op == "qnmmul") return build_qnmmul(n, m, preserve);
    if (op == "qnmdiv") return build_qnmdiv(n, m, preserve);
    if (op == "qexp") return build_qexp(n, m, result_width, preserve);
    throw UnknownOp("unknown operation '" + op + "'");
}

std::string initial_bits(const ArithCircuit& circuit, std::int64_t a,
                         std::optional<std::int64_t> b) {
    std::string bits(circuit.total_qubits, '0');
    auto place = [&](const Register& reg, std::int64_t v) {
        std::string enc = encode_signed(v, reg.width());
        for (int i = 0; i < reg.width(); ++i) bits[reg.qubits[i]] = enc[i];
    };
    place(circuit.reg("a"), a);
    if (b.has_value()) place(circuit.reg("b"), *b);
    return bits;
}

ArithRun run_arith(const ArithCircuit& circuit, std::int64_t a,
                   std::optional<std::int64_t> b, std::uint64_t seed) {
    if (circuit.op == "qexp" && b.has_value() && *b < 0)
        throw NegativeExponent("exponent must be >= 0");
    RunResult rr = run(circuit.full(), initial_bits(circuit, a, b), seed);
    const std::uint64_t z = rr.final_state.dominant_index();

    ArithRun out;
    out.deterministic = rr.deterministic;
    out.iterations = rr.iterations_used;
    for (const auto& [name, reg] : circuit.registers) {
        std::string rbits(reg.width(), '0');
        for (int i = 0; i < reg.width(); ++i)
            rbits[i] = StateVector::bit_of(z, reg.qubits[i],
                                           circuit.total_qubits)
                           ? '1'
                           : '0';
        out.values[name] = decode_signed(rbits);
        std::uint64_t u = 0;
        for (char ch : rbits) u = (u << 1) | (ch == '1' ? 1u : 0u);
        out.bits[name] = u;
    }
    out.result = out.values.at(circuit.result_register);
    return out;
}

}  // namespace qfta
