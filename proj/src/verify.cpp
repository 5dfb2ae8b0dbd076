#include "qfta/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qfta/arith.hpp"
#include "qfta/qft.hpp"
#include "qfta/resources.hpp"
#include "qfta/simulator.hpp"

namespace qfta {

// Classical oracles. These deliberately use only host-integer arithmetic;
// no circuit helper may appear in this block.
namespace oracle {

std::int64_t wrap(std::int64_t v, int width) {
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    std::uint64_t u = static_cast<std::uint64_t>(v) & mask;
    if (u >> (width - 1)) u |= ~mask;
    return static_cast<std::int64_t>(u);
}

std::int64_t mag(std::int64_t v) { return v < 0 ? -v : v; }

std::int64_t power(std::int64_t a, std::int64_t b) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < b; ++i) r *= a;
    return r;
}

std::int64_t trunc_div(std::int64_t a, std::int64_t b) { return a / b; }

}  // namespace oracle

namespace {

struct Case {
    int n = 0, m = 0;
    std::int64_t a = 0, b = 0;
};

struct Expectation {
    std::int64_t lo(int width) const { return -(std::int64_t{1} << (width - 1)); }
};

std::string fmt(std::int64_t v) { return std::to_string(v); }

/// Per-case check shared by all sweep drivers. Returns failures for one
/// (circuit, inputs) pair; `has_b` marks binary ops.
std::vector<SweepFailure> check_case(const ArithCircuit& circ, const Case& cs,
                                     bool has_b) {
    std::vector<SweepFailure> fails;
    auto fail = [&](const std::string& field, const std::string& exp,
                    const std::string& got) {
        fails.push_back({cs.n, cs.m, cs.a, cs.b, field, exp, got});
    };

    ArithRun run;
    try {
        run = run_arith(circ, cs.a, has_b ? std::optional<std::int64_t>(cs.b)
                                          : std::nullopt);
    } catch (const Error& e) {
        fail("exception", "clean run", e.what());
        return fails;
    }
    if (!run.deterministic)
        fail("deterministic", "true", "false");

    const std::string& op = circ.op;
    const int n = cs.n, m = cs.m;
    const std::int64_t a = cs.a, b = cs.b;

    std::int64_t expected = 0;
    bool check_result = true;
    if (op == "qnmadd") expected = a + b;
    else if (op == "qnmsub") expected = a - b;
    else if (op == "qmadd") expected = oracle::wrap(a + b, n);
    else if (op == "qmsub") expected = oracle::wrap(a - b, n);
    else if (op == "qtc") expected = oracle::wrap(-a, n);
    else if (op == "qabs") expected = a >= 0 ? a : oracle::wrap(-a, n);
    else if (op == "qnmmul") expected = oracle::wrap(a * b, n + m - 1);
    else if (op == "qnmdiv")
        expected = oracle::wrap(oracle::trunc_div(a, b), n);
    else if (op == "qexp")
        expected = oracle::wrap(oracle::power(a, b), n + m - 1);
    else check_result = false;  // qcomp checks flags instead

    if (check_result && run.result != expected)
        fail("result", fmt(expected), fmt(run.result));

    if (op == "qcomp") {
        const int ec0 = a > b, ec1 = a < b, ec2 = a == b;
        if (run.bits.at("c0") != static_cast<std::uint64_t>(ec0) ||
            run.bits.at("c1") != static_cast<std::uint64_t>(ec1) ||
            run.bits.at("c2") != static_cast<std::uint64_t>(ec2))
            fail("flags",
                 fmt(ec0) + fmt(ec1) + fmt(ec2),
                 fmt(run.bits.at("c0")) + fmt(run.bits.at("c1")) +
                     fmt(run.bits.at("c2")));
        if (run.values.at("a") != a || run.bits.at("a0") != 0)
            fail("restored a", fmt(a), fmt(run.values.at("a")));
    }

    if (circ.preserves_inputs && op != "qcomp") {
        if (run.values.at("a") != a)
            fail("preserved a", fmt(a), fmt(run.values.at("a")));
        if (has_b && run.values.at("b") != b)
            fail("preserved b", fmt(b), fmt(run.values.at("b")));
    }
    if ((op == "qnmadd" || op == "qnmsub" || op == "qmadd" || op == "qmsub") &&
        run.values.at("b") != b)
        fail("preserved b", fmt(b), fmt(run.values.at("b")));

    if (op == "qnmmul") {
        const int want = static_cast<int>(oracle::mag(b));
        if (run.iterations.at("mul_loop") != want)
            fail("iterations", fmt(want), fmt(run.iterations.at("mul_loop")));
    } else if (op == "qnmdiv") {
        const int want =
            static_cast<int>(oracle::mag(a) / oracle::mag(b) + 1);
        if (run.iterations.at("div_loop") != want)
            fail("iterations", fmt(want), fmt(run.iterations.at("div_loop")));
    } else if (op == "qexp") {
        const int want = static_cast<int>(b);
        if (run.iterations.at("exp_loop") != want)
            fail("iterations", fmt(want), fmt(run.iterations.at("exp_loop")));
    }
    return fails;
}

struct OpPlan {
    std::string builder_op;  // name for build_named
    bool binary = true;
    bool unary_widths = false;  // sweep n only
};

OpPlan plan_for(const std::string& op) {
    if (op == "add") return {"qnmadd"};
    if (op == "sub") return {"qnmsub"};
    if (op == "madd") return {"qmadd"};
    if (op == "msub") return {"qmsub"};
    if (op == "tc") return {"qtc", false, true};
    if (op == "abs") return {"qabs", false, true};
    if (op == "cmp") return {"qcomp"};
    if (op == "mul") return {"qnmmul"};
    if (op == "div") return {"qnmdiv"};
    if (op == "exp") return {"qexp"};
    throw UnknownOp("unknown sweep op '" + op + "'");
}

bool case_allowed(const std::string& builder_op, std::int64_t, std::int64_t b) {
    if (builder_op == "qnmdiv") return b != 0;
    if (builder_op == "qexp") return b >= 0;
    return true;
}

}  // namespace

std::vector<SweepSpec> default_sweeps() {
    std::vector<SweepSpec> v;
    for (const char* op : {"add", "sub", "madd", "msub", "tc", "abs", "cmp"})
        v.push_back({op, 2, 4, 2, 4, true});
    for (const char* op : {"mul", "div", "exp"})
        v.push_back({op, 2, 3, 2, 3, true});
    return v;
}

SweepReport run_sweep(const SweepSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    const OpPlan plan = plan_for(spec.op);

    SweepReport report;
    report.op = spec.op;
    std::vector<std::vector<SweepFailure>> slots;

    for (int n = spec.n_lo; n <= spec.n_hi; ++n) {
        const int m_hi = plan.unary_widths ? spec.m_lo : std::min(spec.m_hi, n);
        for (int m = spec.m_lo; m <= m_hi; ++m) {
            ArithCircuit circ =
                build_named(plan.builder_op, n, plan.unary_widths ? 2 : m,
                            spec.preserve);
            if (circ.total_qubits > 24)
                throw ResourceBound(spec.op + " at n=" + std::to_string(n) +
                                    " exceeds the 24-qubit cap");

            std::vector<Case> cases;
            const std::int64_t a_lo = signed_min(n), a_hi = signed_max(n);
            const std::int64_t b_lo = plan.binary ? signed_min(m) : 0;
            const std::int64_t b_hi = plan.binary ? signed_max(m) : 0;
            for (std::int64_t a = a_lo; a <= a_hi; ++a)
                for (std::int64_t b = b_lo; b <= b_hi; ++b)
                    if (case_allowed(plan.builder_op, a, b))
                        cases.push_back({n, m, a, b});

            const std::size_t base = slots.size();
            slots.resize(base + cases.size());
            report.cases += static_cast<long long>(cases.size());

            // Each case owns its statevector; slots keep aggregation in
            // input order regardless of scheduling.
            std::atomic<std::size_t> cursor{0};
            const unsigned workers = std::max(
                1u, std::min(std::thread::hardware_concurrency(),
                             static_cast<unsigned>(cases.size())));
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i = cursor.fetch_add(1);
                         i < cases.size(); i = cursor.fetch_add(1))
                        slots[base + i] =
                            check_case(circ, cases[i], plan.binary);
                });
            for (auto& t : pool) t.join();

            if (plan.unary_widths) break;
        }
    }
    for (auto& s : slots)
        report.failures.insert(report.failures.end(), s.begin(), s.end());
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

namespace {

using Matrix = std::vector<std::vector<Amp>>;

double unitarity_defect(const Matrix& u) {
    const std::size_t d = u.size();
    double worst = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Amp dot = 0;
            // Columns are images of basis states; U^dag U entry (i, j) is
            // <col_i, col_j>.
            for (std::size_t r = 0; r < d; ++r)
                dot += std::conj(u[r][i]) * u[r][j];
            worst = std::max(worst, std::abs(dot - (i == j ? Amp{1} : Amp{0})));
        }
    return worst;
}

double matrix_distance(const Matrix& u, const Matrix& v) {
    double worst = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j)
            worst = std::max(worst, std::abs(u[i][j] - v[i][j]));
    return worst;
}

PropertyResult prop(const std::string& name, bool passed, std::string detail) {
    return {name, passed, std::move(detail)};
}

}  // namespace

std::vector<PropertyResult> run_properties() {
    std::vector<PropertyResult> out;

    {  // IQFT undoes QFT on every basis state, k <= 5.
        bool ok = true;
        for (int k = 2; k <= 5 && ok; ++k) {
            Register r = make_register("r", 0, k);
            Program p = compose({build_qft(r, k), build_iqft(r, k)});
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
                RunResult rr = run(p, StateVector::basis(k, x));
                if (rr.final_state.dominant_index(1e-9) != x) ok = false;
            }
        }
        out.push_back(prop("qft_iqft_identity", ok, "k <= 5, all basis states"));
    }

    {  // Unitarity of every pure block at <= 10 qubits.
        struct Block { std::string name; Program p; };
        std::vector<Block> blocks;
        Register r5 = make_register("r", 0, 5);
        blocks.push_back({"qft_k5", build_qft(r5, 5)});
        blocks.push_back({"iqft_k5", build_iqft(r5, 5)});
        Register tgt = make_register("t", 0, 4);
        Register add = make_register("b", 4, 3);
        blocks.push_back({"phase_add_block",
                          build_phase_add({tgt, add, Direction::Add, false,
                                           true}, 7)});
        blocks.push_back({"qnmadd_main", build_qnmadd(3, 3).main});
        blocks.push_back({"qnmsub_main", build_qnmsub(3, 3).main});
        blocks.push_back({"qmadd_main", build_qmadd(3, 3).main});
        blocks.push_back({"qtc_main", build_qtc(4).main});
        blocks.push_back({"qabs_main", build_qabs(3).main});
        blocks.push_back({"qcomp_main", build_qcomp(2, 2).main});
        double worst = 0;
        std::string at;
        for (const Block& b : blocks) {
            const double d = unitarity_defect(unitary_of(b.p));
            if (d > worst) { worst = d; at = b.name; }
        }
        out.push_back(prop("unitarity", worst <= 1e-9,
                           "worst defect " + std::to_string(worst) + " at " +
                               at));
    }

    {  // Inversion: P followed by inverse_of(P) is the identity.
        Program p = build_qnmadd(3, 3).main;
        Program round_trip = compose({p, inverse_of(p)});
        bool ok = true;
        for (std::uint64_t x = 0; x < 128 && ok; ++x) {
            RunResult rr = run(round_trip, StateVector::basis(7, x));
            if (rr.final_state.dominant_index(1e-9) != x) ok = false;
        }
        out.push_back(prop("add_inversion", ok, "qnmadd n=m=3, all basis"));
    }

    {  // The subtract block is exactly the inverse of the add block.
        Register tgt = make_register("t", 0, 4);
        Register add = make_register("b", 4, 3);
        Matrix fwd = unitary_of(inverse_of(
            build_phase_add({tgt, add, Direction::Add, false, true}, 7)));
        Matrix sub = unitary_of(
            build_phase_add({tgt, add, Direction::Subtract, false, true}, 7));
        const double d = matrix_distance(fwd, sub);
        out.push_back(prop("sub_is_inverse_add", d <= 1e-12,
                           "distance " + std::to_string(d)));
    }

    {  // QTC involution: negating twice restores every value.
        bool ok = true;
        for (int n = 2; n <= 4 && ok; ++n) {
            ArithCircuit c = build_qtc(n);
            Program twice = compose({c.prep, c.main, c.main});
            for (std::int64_t a = signed_min(n); a <= signed_max(n); ++a) {
                RunResult rr = run(twice, initial_bits(c, a));
                std::uint64_t z = rr.final_state.dominant_index(1e-9);
                std::string bits(n, '0');
                for (int i = 0; i < n; ++i)
                    bits[i] = StateVector::bit_of(z, i, c.total_qubits) ? '1'
                                                                        : '0';
                if (decode_signed(bits) != a) ok = false;
            }
        }
        out.push_back(prop("qtc_involution", ok, "n <= 4, all values"));
    }

    {  // Phase-add blocks with distinct addends commute.
        Register tgt = make_register("t", 0, 3);
        Register b1 = make_register("b1", 3, 2);
        Register b2 = make_register("b2", 5, 2);
        Program A = build_phase_add({tgt, b1, Direction::Add, false, true}, 7);
        Program B = build_phase_add({tgt, b2, Direction::Subtract, false,
                                     true}, 7);
        const double d = matrix_distance(unitary_of(compose({A, B})),
                                         unitary_of(compose({B, A})));
        out.push_back(prop("phase_add_commutation", d <= 1e-12,
                           "distance " + std::to_string(d)));
    }

    {  // Linearity and norm preservation on random superpositions.
        Program p = build_qmadd(2, 2).main;
        std::mt19937_64 rng(20240811);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        bool ok = true;
        double worst = 0;
        for (int trial = 0; trial < 8; ++trial) {
            const std::uint64_t x = rng() % 16, y = (x + 1 + rng() % 15) % 16;
            Amp alpha{dist(rng), dist(rng)}, beta{dist(rng), dist(rng)};
            const double s = std::sqrt(std::norm(alpha) + std::norm(beta));
            alpha /= s;
            beta /= s;
            StateVector mix = StateVector::basis(4, x);
            StateVector sy = StateVector::basis(4, y);
            for (std::uint64_t i = 0; i < 16; ++i)
                mix.amps[i] = alpha * mix.amps[i] + beta * sy.amps[i];
            StateVector fmix = run(p, mix).final_state;
            StateVector fx = run(p, StateVector::basis(4, x)).final_state;
            StateVector fy = run(p, StateVector::basis(4, y)).final_state;
            for (std::uint64_t i = 0; i < 16; ++i)
                worst = std::max(worst,
                                 std::abs(fmix.amps[i] - alpha * fx.amps[i] -
                                          beta * fy.amps[i]));
            if (std::abs(fmix.norm() - 1.0) > 1e-9) ok = false;
        }
        if (worst > 1e-9) ok = false;
        out.push_back(prop("linearity_and_norm", ok,
                           "worst deviation " + std::to_string(worst)));
    }

    {  // Closed-form counts on the formula-backed blocks.
        bool ok = true;
        for (int k = 2; k <= 8; ++k) {
            Register r = make_register("r", 0, k);
            if (count(build_qft(r, k), CostModel::paper()).weighted_total !=
                paper_formula("qft", k, 0))
                ok = false;
        }
        for (int n = 2; n <= 6 && ok; ++n)
            for (int m = 2; m <= n; ++m) {
                ArithCircuit c = build_qmadd(n, m);
                if (count(c, CostModel::paper()).weighted_total !=
                    paper_formula("qmadd", n, m))
                    ok = false;
                ArithCircuit c2 = build_qnmadd(n, m);
                if (count(c2, CostModel::paper()).weighted_total !=
                    paper_formula("qnmadd", n, m) + c2.count_delta)
                    ok = false;
            }
        out.push_back(prop("count_formulas", ok, "qft/qmadd/qnmadd families"));
    }

    return out;
}

std::string report_json(const std::vector<SweepReport>& sweeps,
                        const std::vector<PropertyResult>& properties) {
    nlohmann::json js = nlohmann::json::array();
    for (const SweepReport& s : sweeps) {
        nlohmann::json fails = nlohmann::json::array();
        for (const SweepFailure& f : s.failures)
            fails.push_back({{"n", f.n}, {"m", f.m}, {"a", f.a}, {"b", f.b},
                             {"field", f.field}, {"expected", f.expected},
                             {"got", f.got}});
        js.push_back({{"op", s.op}, {"cases", s.cases},
                      {"failures", std::move(fails)},
                      {"seconds", s.seconds}});
    }
    nlohmann::json jp = nlohmann::json::array();
    for (const PropertyResult& p : properties)
        jp.push_back({{"name", p.name}, {"passed", p.passed},
                      {"detail", p.detail}});
    nlohmann::json out{{"format_version", 1}, {"sweeps", std::move(js)},
                       {"properties", std::move(jp)}};
    return out.dump(2);
}

std::string report_junit(const std::vector<SweepReport>& sweeps,
                         const std::vector<PropertyResult>& properties) {
    auto escape = [](const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '&') r += "&amp;";
            else if (c == '<') r += "&lt;";
            else if (c == '>') r += "&gt;";
            else if (c == '"') r += "&quot;";
            else r += c;
        }
        return r;
    };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<testsuites>\n";
    os << "  <testsuite name=\"sweeps\" tests=\"" << sweeps.size() << "\">\n";
    for (const SweepReport& s : sweeps) {
        os << "    <testcase name=\"" << escape(s.op) << "\" time=\""
           << s.seconds << "\"";
        if (s.ok()) {
            os << "/>\n";
        } else {
            os << ">\n      <failure message=\""
               << s.failures.size() << " of " << s.cases
               << " cases failed\">";
            for (std::size_t i = 0; i < s.failures.size() && i < 20; ++i) {
                const SweepFailure& f = s.failures[i];
                os << escape("n=" + std::to_string(f.n) +
                             " m=" + std::to_string(f.m) +
                             " a=" + std::to_string(f.a) +
                             " b=" + std::to_string(f.b) + " " + f.field +
                             ": expected " + f.expected + " got " + f.got)
                   << "\n";
            }
            os << "</failure>\n    </testcase>\n";
        }
    }
    os << "  </testsuite>\n  <testsuite name=\"properties\" tests=\""
       << properties.size() << "\">\n";
    for (const PropertyResult& p : properties) {
        os << "    <testcase name=\"" << escape(p.name) << "\"";
        if (p.passed)
            os << "/>\n";
        else
            os << ">\n      <failure message=\"" << escape(p.detail)
               << "\"/>\n    </testcase>\n";
    }
    os << "  </testsuite>\n</testsuites>\n";
    return os.str();
}

}  // namespace qfta
