#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfta/arith.hpp"
#include "qfta/io.hpp"
#include "qfta/qft.hpp"
#include "qfta/resources.hpp"
#include "qfta/verify.hpp"

namespace {

using namespace qfta;

// User-facing op names map onto builder names; --modular swaps the add/sub
// family to the width-wrapping variants.
std::string builder_name(const std::string& op, bool modular) {
    if (op == "add") return modular ? "qmadd" : "qnmadd";
    if (op == "sub") return modular ? "qmsub" : "qnmsub";
    if (op == "tc") return "qtc";
    if (op == "abs") return "qabs";
    if (op == "cmp") return "qcomp";
    if (op == "mul") return "qnmmul";
    if (op == "div") return "qnmdiv";
    if (op == "exp") return "qexp";
    throw UnknownOp("unknown operation '" + op + "'");
}

bool is_unary(const std::string& op) {
    return op == "tc" || op == "abs" || op == "qtc" || op == "qabs";
}

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

int compute_cmd(const std::string& op, std::int64_t a,
                std::optional<std::int64_t> b, int na, int nb, bool modular,
                int result_width, bool in_place, const std::string& format,
                std::uint64_t seed) {
    if (op == "div" && b && *b == 0)
        throw DivisionByZero("division by zero");
    ArithCircuit circ = build_named(builder_name(op, modular), na,
                                    is_unary(op) ? 0 : nb, !in_place,
                                    result_width);
    ArithRun run = run_arith(circ, a, b, seed);

    if (format == "json") {
        nlohmann::json vals, iters;
        for (const auto& [name, v] : run.values) vals[name] = v;
        for (const auto& [name, v] : run.iterations) iters[name] = v;
        nlohmann::json o{{"format_version", 1}, {"op", op},
                         {"result", run.result}, {"values", std::move(vals)},
                         {"iterations", std::move(iters)}};
        if (op == "cmp")
            o["relation"] = run.bits.at("c1") ? "a<b"
                            : run.bits.at("c2") ? "a=b" : "a>b";
        std::cout << o.dump(2) << "\n";
        return 0;
    }

    if (op == "cmp") {
        std::cout << (run.bits.at("c1") ? "a<b"
                      : run.bits.at("c2") ? "a=b" : "a>b")
                  << "\n";
    } else {
        std::cout << run.result << "\n";
    }
    std::cout << "registers:";
    for (const auto& [name, v] : run.values) std::cout << " " << name << "=" << v;
    std::cout << "\n";
    if (!run.iterations.empty()) {
        std::cout << "iterations:";
        for (const auto& [name, v] : run.iterations)
            std::cout << " " << name << "=" << v;
        std::cout << "\n";
    }
    return 0;
}

int verify_cmd(const std::string& op, int max_n, const std::string& format) {
    std::vector<SweepSpec> specs;
    if (op == "all") {
        specs = default_sweeps();
        for (auto& s : specs) {
            s.n_hi = std::min(s.n_hi, max_n);
            s.m_hi = std::min(s.m_hi, max_n);
        }
    } else {
        SweepSpec s;
        s.op = op;
        const bool loop_op = op == "mul" || op == "div" || op == "exp";
        s.n_hi = s.m_hi = std::min(max_n, loop_op ? 3 : 4);
        specs.push_back(s);
    }
    std::vector<SweepReport> reports;
    for (const SweepSpec& s : specs) reports.push_back(run_sweep(s));

    if (format == "json") {
        std::cout << report_json(reports, {}) << "\n";
    } else if (format == "junit") {
        std::cout << report_junit(reports, {});
    } else {
        for (const SweepReport& r : reports)
            std::cout << r.op << ": " << r.cases << " cases, "
                      << r.failures.size() << " failures ("
                      << r.seconds << "s)\n";
    }
    for (const SweepReport& r : reports)
        if (!r.ok()) return 1;
    return 0;
}

bool builds(const std::string& name) {
    for (const char* o : {"qnmadd", "qnmsub", "qmadd", "qmsub", "qtc", "qabs",
                          "qcomp", "qnmmul", "qnmdiv", "qexp"})
        if (name == o) return true;
    return false;
}

int count_cmd(const std::string& op, const std::string& n_text,
              const std::string& m_text, const std::string& format) {
    const Range nr = parse_range(n_text);
    const Range mr = m_text.empty() ? nr : parse_range(m_text);

    // Short aliases (add, mul, ...) resolve to builder names; formula-only
    // names (qft, comp-baseline, ...) pass through.
    std::string name = op;
    if (op != "all" && !builds(name) && !has_paper_formula(name))
        name = builder_name(op, false);

    if (op == "all" || format == "csv" || format == "json" || nr.lo != nr.hi) {
        std::vector<std::string> ops;
        if (op == "all")
            ops = {"qnmadd", "qnmsub", "qmadd", "qmsub", "qtc", "qabs",
                   "qcomp", "qnmmul", "qnmdiv", "qexp", "add-baseline",
                   "mul-baseline", "comp-baseline"};
        else
            ops = {name};
        std::cout << comparison_table(ops, nr.lo, nr.hi, mr.lo, mr.hi,
                                      format == "json" ? "json" : "csv");
        return 0;
    }

    const int n = nr.lo, m = mr.lo;
    if (!builds(name)) {
        std::cout << "formula " << paper_formula(name, n, m) << "\n";
        return 0;
    }
    ArithCircuit circ = build_named(name, n, m);
    ResourceReport rep = count(circ, CostModel::paper());
    std::cout << "weighted " << rep.weighted_total;
    if (rep.paper_formula_value)
        std::cout << ", formula " << *rep.paper_formula_value << ", delta "
                  << rep.weighted_total - *rep.paper_formula_value;
    std::cout << ", qubits " << rep.total_qubits << ", ancilla "
              << circ.table_ancilla << "\n";
    if (rep.deviation_note) std::cout << "note: " << *rep.deviation_note << "\n";
    for (const LoopCount& lc : rep.loops)
        std::cout << "loop " << lc.name << ": " << lc.body_weighted
                  << " per iteration, max " << lc.max_iters << "\n";
    return 0;
}

int export_cmd(const std::string& op, int na, int nb, bool modular,
               const std::string& format, const std::string& out_path) {
    std::string text;
    if (op == "qft" || op == "iqft") {
        Register r = make_register("r", 0, na);
        Program p = op == "qft" ? build_qft(r, na) : build_iqft(r, na);
        text = format == "qasm" ? to_qasm(p) : to_json(p);
    } else {
        const std::string name = builds(op) ? op : builder_name(op, modular);
        ArithCircuit circ = build_named(name, na, is_unary(op) ? 0 : nb);
        text = format == "qasm" ? to_qasm(circ) : to_json(circ);
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        f << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signed-integer arithmetic circuits in the Fourier basis"};
    app.require_subcommand(1);

    std::string op, format = "text", n_text = "3", m_text, out_path;
    std::int64_t a = 0, b = 0;
    int na = 4, nb = 4, max_n = 4, result_width = -1;
    bool modular = false, in_place = false, have_b = false;
    std::uint64_t seed = 0;

    auto* compute = app.add_subcommand("compute", "run one operation");
    compute->add_option("--op", op, "operation")->required();
    compute->add_option("--a", a, "first operand")->required();
    auto* b_opt = compute->add_option("--b", b, "second operand");
    compute->add_option("--na", na, "width of a");
    compute->add_option("--nb", nb, "width of b");
    compute->add_flag("--modular", modular, "width-wrapping add/sub");
    compute->add_option("--result-width", result_width, "exp result width");
    compute->add_flag("--in-place", in_place, "overwrite inputs");
    compute->add_option("--format", format, "text|json");
    compute->add_option("--seed", seed, "measurement seed");

    auto* verify = app.add_subcommand("verify", "oracle-backed sweeps");
    verify->add_option("--op", op, "operation or 'all'")->required();
    verify->add_option("--max-n", max_n, "width cap");
    verify->add_option("--format", format, "text|json|junit");

    auto* count = app.add_subcommand("count", "resource counts");
    count->add_option("--op", op, "operation, formula name, or 'all'")
        ->required();
    count->add_option("--n", n_text, "width or range lo..hi");
    count->add_option("--m", m_text, "width or range lo..hi");
    count->add_option("--format", format, "text|csv|json");

    auto* exp_cmd = app.add_subcommand("export", "emit circuit text");
    exp_cmd->add_option("--op", op, "operation")->required();
    exp_cmd->add_option("--na", na, "width of a");
    exp_cmd->add_option("--nb", nb, "width of b");
    exp_cmd->add_flag("--modular", modular, "width-wrapping add/sub");
    exp_cmd->add_option("--format", format, "json|qasm");
    exp_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);
    have_b = b_opt->count() > 0;

    try {
        if (compute->parsed())
            return compute_cmd(op, a,
                               have_b ? std::optional<std::int64_t>(b)
                                      : std::nullopt,
                               na, nb, modular, result_width, in_place,
                               format, seed);
        if (verify->parsed()) return verify_cmd(op, max_n, format);
        if (count->parsed()) return count_cmd(op, n_text, m_text, format);
        if (exp_cmd->parsed())
            return export_cmd(op, na, nb, modular, format, out_path);
    } catch (const qfta::RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qfta::WidthError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qfta::DivisionByZero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qfta::NegativeExponent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
