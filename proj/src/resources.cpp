#include "qfta/resources.hpp"

#include <sstream>

#include <json.hpp>

namespace qfta {

long long CostModel::gate_weight(const Gate& g) const {
    const long long c = static_cast<long long>(g.controls.size());
    long long neg = 0;
    for (const Control& ctl : g.controls)
        if (ctl.polarity == Polarity::Negative) neg += neg_control_extra;
    long long base;
    if (c == 0)
        base = single;
    else if (c == 1)
        base = cnot;
    else if (c == 2)
        base = toffoli;
    else
        base = (2 * c - 1) * toffoli + cnot;
    return base + neg;
}

namespace {

void count_items(const std::vector<Item>& items, const CostModel& model,
                 ResourceReport& report, long long& weighted) {
    for (const Item& it : items) {
        if (const auto* g = std::get_if<Gate>(&it.node)) {
            const std::size_t c = g->controls.size();
            const char* cls =
                c == 0 ? "raw_1q" : (c == 1 ? "raw_cx" : "raw_ccx_equiv");
            ++report.raw[cls];
            weighted += model.gate_weight(*g);
        } else if (const auto* r = std::get_if<RepeatUntil>(&it.node)) {
            report.per_iteration = true;
            long long body = 0;
            count_items(r->body, model, report, body);
            report.loops.push_back({r->name, r->max_iters, body});
            weighted += body;
        }
        // Measure items carry no gate cost.
    }
}

}  // namespace

ResourceReport count(const Program& program, const CostModel& model) {
    ResourceReport report;
    report.raw = {{"raw_1q", 0}, {"raw_cx", 0}, {"raw_ccx_equiv", 0}};
    report.total_qubits = program.total_qubits;
    count_items(program.items, model, report, report.weighted_total);
    return report;
}

ResourceReport count(const ArithCircuit& circuit, const CostModel& model) {
    ResourceReport report = count(circuit.main, model);
    report.total_qubits = circuit.total_qubits;
    for (const AncillaInfo& a : circuit.ancillas)
        report.ancilla_by_role[a.role] +=
            circuit.reg(a.reg).width();
    if (has_paper_formula(circuit.op))
        report.paper_formula_value =
            paper_formula(circuit.op, circuit.n, circuit.m);
    report.deviation_note = circuit.deviation_note;
    return report;
}

long long paper_formula(const std::string& op, int n, int m) {
    const long long N = n, M = m;
    if (op == "qft" || op == "iqft") return N * (N + 1) / 2;
    if (op == "nmadd" || op == "nmsub")
        return M * (M + 1) / 2 + M * (N + 1 - M);
    if (op == "madd" || op == "msub") return M * (M + 1) / 2 + M * (N - M);
    if (op == "qnmadd" || op == "qnmsub")
        return N * N + 3 * N + 18 + M * (2 * N - M + 3) / 2;
    if (op == "qmadd" || op == "qmsub")
        return N * N + N + M * (2 * N - M + 1) / 2;
    if (op == "qtc") return N * N + 3 * N;
    if (op == "qabs") return N * N + 3 * N + 2;
    if (op == "qcomp")
        return N * N + 3 * N + 41 + M * (2 * N - M + 3) / 2;
    if (op == "qnmmul")
        return (5 * N * N + N) / 2 + 4 * M * M + 4 * N * M + 6 * M + 7;
    if (op == "qnmdiv")
        return 3 * N * N + 12 * N + N * M + (M * M + 11 * M) / 2 + 36;
    if (op == "qexp")
        return (21 * N * N + 15 * N + 3 * (M * M + M)) / 2 + 9;
    if (op == "add-baseline") return 3 * (N * N + 3 * N + 2) / 2;
    if (op == "mul-baseline") return 11 * N * N + 6 * N + 4;
    if (op == "mul-baseline-ancilla") return N * N + 4 * N;
    if (op == "comp-baseline") return 48 * N * N - 48 * N + 16;
    throw UnknownOp("no closed form registered for '" + op + "'");
}

bool has_paper_formula(const std::string& op) {
    for (const std::string& name : formula_ops())
        if (name == op) return true;
    return false;
}

std::vector<std::string> formula_ops() {
    return {"qft",  "iqft",   "nmadd",  "nmsub",  "madd",
            "msub", "qnmadd", "qnmsub", "qmadd",  "qmsub",
            "qtc",  "qabs",   "qcomp",  "qnmmul", "qnmdiv",
            "qexp", "add-baseline", "mul-baseline",
            "mul-baseline-ancilla", "comp-baseline"};
}

namespace {

bool is_circuit_op(const std::string& op) {
    static const std::vector<std::string> ops = {
        "qnmadd", "qnmsub", "qmadd",  "qmsub", "qtc",
        "qabs",   "qcomp",  "qnmmul", "qnmdiv", "qexp"};
    for (const auto& o : ops)
        if (o == op) return true;
    return false;
}

struct Row {
    std::string op;
    int n = 0, m = 0;
    long long raw_1q = 0, raw_cx = 0, raw_ccx = 0;
    long long weighted = 0;
    std::optional<long long> formula;
    int qubits = 0, ancilla = 0;
};

Row make_row(const std::string& op, int n, int m) {
    Row row;
    row.op = op;
    row.n = n;
    row.m = m;
    if (is_circuit_op(op)) {
        ArithCircuit c = build_named(op, n, m);
        ResourceReport rep = count(c, CostModel::paper());
        row.raw_1q = rep.raw.at("raw_1q");
        row.raw_cx = rep.raw.at("raw_cx");
        row.raw_ccx = rep.raw.at("raw_ccx_equiv");
        row.weighted = rep.weighted_total;
        row.formula = rep.paper_formula_value;
        row.qubits = rep.total_qubits;
        row.ancilla = c.table_ancilla;
    } else {
        row.formula = paper_formula(op, n, m);
        if (op == "comp-baseline") row.ancilla = 2 * n;
        if (op == "mul-baseline")
            row.ancilla = static_cast<int>(
                paper_formula("mul-baseline-ancilla", n, m));
    }
    return row;
}

}  // namespace

std::string comparison_table(const std::vector<std::string>& ops, int n_lo,
                             int n_hi, int m_lo, int m_hi,
                             const std::string& format) {
    std::vector<Row> rows;
    for (const std::string& op : ops)
        for (int n = n_lo; n <= n_hi; ++n)
            for (int m = m_lo; m <= std::min(m_hi, n); ++m) {
                const bool unary = op == "qtc" || op == "qabs";
                if (unary && m != m_lo) continue;  // one row per n
                rows.push_back(make_row(op, n, unary ? 0 : m));
            }

    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const Row& r : rows) {
            nlohmann::json o{{"op", r.op},
                             {"n", r.n},
                             {"m", r.m},
                             {"raw_1q", r.raw_1q},
                             {"raw_cx", r.raw_cx},
                             {"raw_ccx_equiv", r.raw_ccx},
                             {"weighted_total", r.weighted},
                             {"qubits_total", r.qubits},
                             {"ancilla", r.ancilla}};
            if (r.formula) {
                o["paper_formula"] = *r.formula;
                o["delta"] = r.weighted - *r.formula;
            }
            j.push_back(std::move(o));
        }
        nlohmann::json out{{"format_version", 1}, {"rows", std::move(j)}};
        return out.dump(2);
    }

    std::ostringstream os;
    os << "op,n,m,raw_1q,raw_cx,raw_ccx_equiv,weighted_total,paper_formula,"
          "delta,qubits_total,ancilla\n";
    for (const Row& r : rows) {
        os << r.op << ',' << r.n << ',' << r.m << ',' << r.raw_1q << ','
           << r.raw_cx << ',' << r.raw_ccx << ',' << r.weighted << ',';
        if (r.formula)
            os << *r.formula << ',' << (r.weighted - *r.formula);
        else
            os << ',';
        os << ',' << r.qubits << ',' << r.ancilla << '\n';
    }
    return os.str();
}

QuadraticFit fit_quadratic(const std::vector<std::pair<double, double>>& pts) {
    // Normal equations for [x^2 x 1]; sizes here are tiny.
    double s[5] = {0, 0, 0, 0, 0};
    double t[3] = {0, 0, 0};
    for (auto [x, y] : pts) {
        double p = 1;
        for (int i = 0; i < 5; ++i, p *= x) s[i] += p;
        t[0] += y;
        t[1] += y * x;
        t[2] += y * x * x;
    }
    double a[3][4] = {{s[4], s[3], s[2], t[2]},
                      {s[3], s[2], s[1], t[1]},
                      {s[2], s[1], s[0], t[0]}};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int rw = col + 1; rw < 3; ++rw)
            if (std::abs(a[rw][col]) > std::abs(a[pivot][col])) pivot = rw;
        std::swap(a[col], a[pivot]);
        for (int rw = 0; rw < 3; ++rw) {
            if (rw == col) continue;
            const double f = a[rw][col] / a[col][col];
            for (int cc = col; cc < 4; ++cc) a[rw][cc] -= f * a[col][cc];
        }
    }
    QuadraticFit fit;
    fit.c2 = a[0][3] / a[0][0];
    fit.c1 = a[1][3] / a[1][1];
    fit.c0 = a[2][3] / a[2][2];
    for (auto [x, y] : pts) {
        const double r = y - (fit.c2 * x * x + fit.c1 * x + fit.c0);
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
    }
    return fit;
}

}  // namespace qfta
