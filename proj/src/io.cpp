#include "qfta/io.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qfta {

namespace {

using nlohmann::json;

json controls_to_json(const std::vector<Control>& controls) {
    json arr = json::array();
    for (const Control& c : controls)
        arr.push_back({{"q", c.qubit},
                       {"polarity",
                        c.polarity == Polarity::Positive ? "pos" : "neg"}});
    return arr;
}

json items_to_json(const std::vector<Item>& items) {
    json arr = json::array();
    for (const Item& it : items) {
        if (const auto* g = std::get_if<Gate>(&it.node)) {
            json o;
            switch (g->kind) {
                case GateKind::H: o["gate"] = "H"; break;
                case GateKind::X: o["gate"] = "X"; break;
                case GateKind::Phase:
                    o["gate"] = "PHASE";
                    o["k"] = g->k;
                    o["inverse"] = g->inverse;
                    break;
            }
            o["target"] = g->target;
            o["controls"] = controls_to_json(g->controls);
            arr.push_back(std::move(o));
        } else if (const auto* m = std::get_if<Measure>(&it.node)) {
            arr.push_back({{"measure", {{"qubit", m->qubit},
                                        {"slot", m->slot}}}});
        } else {
            const auto& r = std::get<RepeatUntil>(it.node);
            arr.push_back({{"repeat_until",
                            {{"name", r.name},
                             {"flag", r.flag},
                             {"expect", r.expect},
                             {"max_iters", r.max_iters},
                             {"body", items_to_json(r.body)}}}});
        }
    }
    return arr;
}

json program_to_json_obj(const Program& program) {
    return {{"format_version", 1},
            {"total_qubits", program.total_qubits},
            {"items", items_to_json(program.items)}};
}

std::vector<Control> controls_from_json(const json& arr) {
    std::vector<Control> out;
    for (const json& c : arr) {
        const std::string pol = c.at("polarity").get<std::string>();
        if (pol != "pos" && pol != "neg")
            throw UnknownOp("bad control polarity '" + pol + "'");
        out.push_back({c.at("q").get<int>(),
                       pol == "pos" ? Polarity::Positive
                                    : Polarity::Negative});
    }
    return out;
}

std::vector<Item> items_from_json(const json& arr) {
    std::vector<Item> out;
    for (const json& o : arr) {
        if (o.contains("gate")) {
            const std::string kind = o.at("gate").get<std::string>();
            const int target = o.at("target").get<int>();
            std::vector<Control> ctrls;
            if (o.contains("controls"))
                ctrls = controls_from_json(o.at("controls"));
            if (kind == "H") {
                Gate g = Gate::h(target);
                g.controls = std::move(ctrls);
                out.emplace_back(std::move(g));
            } else if (kind == "X") {
                out.emplace_back(Gate::x(target, std::move(ctrls)));
            } else if (kind == "PHASE") {
                out.emplace_back(Gate::phase(o.at("k").get<int>(), target,
                                             o.value("inverse", false),
                                             std::move(ctrls)));
            } else {
                throw UnknownOp("bad gate kind '" + kind + "'");
            }
        } else if (o.contains("measure")) {
            const json& m = o.at("measure");
            out.emplace_back(Measure{m.at("qubit").get<int>(),
                                     m.at("slot").get<std::string>()});
        } else if (o.contains("repeat_until")) {
            const json& r = o.at("repeat_until");
            RepeatUntil loop;
            loop.name = r.value("name", std::string{});
            loop.flag = r.at("flag").get<int>();
            loop.expect = r.at("expect").get<int>();
            loop.max_iters = r.at("max_iters").get<int>();
            loop.body = items_from_json(r.at("body"));
            out.emplace_back(std::move(loop));
        } else {
            throw UnknownOp("unrecognized circuit item");
        }
    }
    return out;
}

}  // namespace

std::string to_json(const Program& program) {
    return program_to_json_obj(program).dump(2);
}

std::string to_json(const ArithCircuit& circuit) {
    json o = program_to_json_obj(circuit.full());
    o["op"] = circuit.op;
    json regs;
    for (const auto& [name, reg] : circuit.registers)
        regs[name] = reg.qubits;
    o["registers"] = std::move(regs);
    o["result_register"] = circuit.result_register;
    return o.dump(2);
}

Program program_from_json(const std::string& text) {
    const json o = json::parse(text);
    Program p(o.at("total_qubits").get<int>());
    p.items = items_from_json(o.at("items"));
    p.validate();
    return p;
}

namespace {

/// QASM emission with and-ladder expansion. `anc_base` is the first index
/// of the scratch block appended after the circuit's own qubits.
class QasmWriter {
  public:
    QasmWriter(std::ostringstream& os, int anc_base)
        : os_(os), anc_base_(anc_base) {}

    void emit(const Gate& g) {
        for (const Control& c : g.controls)
            if (c.polarity == Polarity::Negative) x(c.qubit);

        std::vector<int> ctrls;
        for (const Control& c : g.controls) ctrls.push_back(c.qubit);
        core(g, ctrls);

        for (const Control& c : g.controls)
            if (c.polarity == Polarity::Negative) x(c.qubit);
    }

    int ancillas_used() const { return anc_high_; }

  private:
    void x(int q) { os_ << "x q[" << q << "];\n"; }

    void core(const Gate& g, std::vector<int> ctrls) {
        // 3+ controls fold down to one scratch qubit via a Toffoli
        // and-ladder, uncomputed after the single-controlled core.
        std::vector<std::string> undo;
        if (ctrls.size() >= 3) fold(ctrls, undo);

        switch (g.kind) {
            case GateKind::H:
                if (!ctrls.empty())
                    throw UnsupportedExport("controlled H is not exportable");
                os_ << "h q[" << g.target << "];\n";
                break;
            case GateKind::X:
                if (ctrls.size() == 0) {
                    x(g.target);
                } else if (ctrls.size() == 1) {
                    os_ << "cx q[" << ctrls[0] << "],q[" << g.target << "];\n";
                } else {
                    ccx(ctrls[0], ctrls[1], g.target);
                }
                break;
            case GateKind::Phase: {
                const double theta =
                    (g.inverse ? -2.0 : 2.0) * M_PI / std::ldexp(1.0, g.k);
                if (ctrls.size() == 0) {
                    // Phase on an uncontrolled qubit; u1 is the minimal form.
                    os_ << "u1(" << theta << ") q[" << g.target << "];\n";
                } else if (ctrls.size() == 1) {
                    cp(theta, ctrls[0], g.target);
                } else {
                    // cp(t/2) a,t ; cx a,b ; cp(-t/2) b,t ; cx a,b ;
                    // cp(t/2) b,t realizes the doubly-controlled phase.
                    const int a = ctrls[0], b = ctrls[1];
                    cp(theta / 2, a, g.target);
                    os_ << "cx q[" << a << "],q[" << b << "];\n";
                    cp(-theta / 2, b, g.target);
                    os_ << "cx q[" << a << "],q[" << b << "];\n";
                    cp(theta / 2, b, g.target);
                }
                break;
            }
        }
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) os_ << *it;
    }

    /// Replaces `ctrls` by a single scratch qubit carrying their AND;
    /// appends the uncompute lines to `undo`.
    void fold(std::vector<int>& ctrls, std::vector<std::string>& undo) {
        int acc = ctrls[0];
        for (std::size_t i = 1; i < ctrls.size(); ++i) {
            const int anc = anc_base_ + static_cast<int>(i) - 1;
            anc_high_ = std::max(anc_high_, static_cast<int>(i));
            ccx(acc, ctrls[i], anc);
            std::ostringstream u;
            u << "ccx q[" << acc << "],q[" << ctrls[i] << "],q[" << anc
              << "];\n";
            undo.push_back(u.str());
            acc = anc;
        }
        ctrls = {acc};
    }

    void ccx(int a, int b, int t) {
        os_ << "ccx q[" << a << "],q[" << b << "],q[" << t << "];\n";
    }
    void cp(double theta, int c, int t) {
        os_ << "cp(" << theta << ") q[" << c << "],q[" << t << "];\n";
    }

    std::ostringstream& os_;
    int anc_base_ = 0;
    int anc_high_ = 0;
};

int max_controls(const std::vector<Item>& items) {
    int most = 0;
    for (const Item& it : items) {
        if (const auto* g = std::get_if<Gate>(&it.node))
            most = std::max(most, static_cast<int>(g->controls.size()));
        else if (std::get_if<RepeatUntil>(&it.node))
            throw UnsupportedExport(
                "hybrid repeat-until loops cannot be expressed in QASM 2.0; "
                "use the JSON format");
        else
            throw UnsupportedExport(
                "mid-circuit measurement is not supported by this exporter; "
                "use the JSON format");
    }
    return most;
}

std::string qasm_of(const Program& program,
                    const std::map<std::string, Register>* registers) {
    const int most = max_controls(program.items);
    const int scratch = most >= 3 ? most - 1 : 0;

    std::ostringstream body;
    QasmWriter writer(body, program.total_qubits);
    for (const Item& it : program.items)
        writer.emit(std::get<Gate>(it.node));

    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    if (registers)
        for (const auto& [name, reg] : *registers) {
            os << "// register " << name << ":";
            for (int q : reg.qubits) os << " q[" << q << "]";
            os << "\n";
        }
    os << "qreg q[" << program.total_qubits + scratch << "];\n";
    os << body.str();
    return os.str();
}

}  // namespace

std::string to_qasm(const Program& program) { return qasm_of(program, nullptr); }

std::string to_qasm(const ArithCircuit& circuit) {
    return qasm_of(circuit.full(), &circuit.registers);
}

std::string to_json(const StateVector& state) {
    json amps = json::array();
    for (const Amp& a : state.amps)
        amps.push_back({a.real(), a.imag()});
    json o{{"format_version", 1},
           {"num_qubits", state.num_qubits},
           {"amps", std::move(amps)}};
    return o.dump();
}

}  // namespace qfta
