#include <doctest.h>

#include <cmath>

#include "qfta/simulator.hpp"

using namespace qfta;

namespace {
constexpr double kEps = 1e-12;
}

TEST_CASE("H produces the equal superposition and is self-inverse") {
    StateVector s = StateVector::basis(1, 0);
    apply_gate(s, Gate::h(0));
    CHECK(std::abs(s.amps[0] - Amp{1 / std::sqrt(2.0)}) < kEps);
    CHECK(std::abs(s.amps[1] - Amp{1 / std::sqrt(2.0)}) < kEps);
    apply_gate(s, Gate::h(0));
    CHECK(std::abs(s.amps[0] - Amp{1}) < kEps);
}

TEST_CASE("X flips the targeted qubit under the MSB-first convention") {
    StateVector s = StateVector::from_bits("010");
    apply_gate(s, Gate::x(0));
    CHECK(s.dominant_index() == 0b110);
    apply_gate(s, Gate::x(2));
    CHECK(s.dominant_index() == 0b111);
}

TEST_CASE("controls gate on polarity") {
    StateVector s = StateVector::from_bits("10");
    apply_gate(s, Gate::x(1, {{0, Polarity::Positive}}));
    CHECK(s.dominant_index() == 0b11);
    apply_gate(s, Gate::x(1, {{0, Polarity::Negative}}));
    CHECK(s.dominant_index() == 0b11);  // negative control did not fire
}

TEST_CASE("phase gate rotates only the |1> component") {
    StateVector s = StateVector::from_bits("1");
    apply_gate(s, Gate::phase(2, 0));  // e^{2 pi i / 4} = i
    CHECK(std::abs(s.amps[1] - Amp{0, 1}) < kEps);
    apply_gate(s, Gate::phase(2, 0, true));
    CHECK(std::abs(s.amps[1] - Amp{1}) < kEps);

    StateVector z = StateVector::from_bits("0");
    apply_gate(z, Gate::phase(1, 0));
    CHECK(std::abs(z.amps[0] - Amp{1}) < kEps);
}

TEST_CASE("dominant_index requires a near-basis state") {
    StateVector s = StateVector::basis(1, 0);
    apply_gate(s, Gate::h(0));
    CHECK_THROWS_AS(s.dominant_index(), NormError);
}

TEST_CASE("deterministic measurement keeps the run flagged deterministic") {
    Program p(2);
    p.push(Gate::x(0));
    p.push(Measure{0, "flag"});
    RunResult r = run(p, StateVector::basis(2, 0));
    CHECK(r.deterministic);
    CHECK(r.classical_bits.at("flag") == 1);
}

TEST_CASE("sampled measurement is seed-reproducible and collapses the state") {
    Program p(1);
    p.push(Gate::h(0));
    p.push(Measure{0, "flag"});
    RunResult a = run(p, StateVector::basis(1, 0), 7);
    RunResult b = run(p, StateVector::basis(1, 0), 7);
    CHECK_FALSE(a.deterministic);
    CHECK(a.classical_bits.at("flag") == b.classical_bits.at("flag"));
    CHECK(std::abs(a.final_state.norm() - 1.0) < 1e-9);
    CHECK(a.final_state.dominant_index() ==
          static_cast<std::uint64_t>(a.classical_bits.at("flag")));
}

TEST_CASE("repeat_until pre-tests the flag") {
    // Flag already satisfied: body must not run at all.
    Program p(2);
    p.push(Gate::x(0));
    RepeatUntil loop;
    loop.name = "loop";
    loop.flag = 0;
    loop.expect = 1;
    loop.max_iters = 4;
    Program body(2);
    body.push(Gate::x(1));
    loop.body = std::move(body.items);
    p.push(std::move(loop));
    RunResult r = run(p, StateVector::basis(2, 0));
    CHECK(r.iterations_used.at("loop") == 0);
    CHECK(r.final_state.dominant_index() == 0b10);
}

TEST_CASE("repeat_until counts body executions and stops on the flag") {
    // 2-qubit counter on qubits {1,2}; flag 0 is set when the counter
    // reaches |11> so the body runs exactly three times.
    Program p(3);
    RepeatUntil loop;
    loop.name = "count";
    loop.flag = 0;
    loop.expect = 1;
    loop.max_iters = 8;
    Program body(3);
    body.push(Gate::x(2, {}));
    body.push(Gate::x(1, {{2, Polarity::Negative}}));
    body.push(Gate::x(0, {{1, Polarity::Positive}, {2, Polarity::Positive}}));
    loop.body = std::move(body.items);
    p.push(std::move(loop));
    RunResult r = run(p, StateVector::basis(3, 0));
    CHECK(r.iterations_used.at("count") == 3);
}

TEST_CASE("repeat_until enforces its iteration bound") {
    Program p(2);
    RepeatUntil loop;
    loop.name = "stuck";
    loop.flag = 0;
    loop.expect = 1;
    loop.max_iters = 3;
    Program body(2);
    body.push(Gate::x(1));
    loop.body = std::move(body.items);
    p.push(std::move(loop));
    CHECK_THROWS_AS(run(p, StateVector::basis(2, 0)), LoopBoundExceeded);
}

TEST_CASE("unitary_of matches direct application and rejects impure programs") {
    Program p(2);
    p.push(Gate::x(1, {{0, Polarity::Positive}}));
    auto u = unitary_of(p);  // CNOT permutation
    CHECK(std::abs(u[0][0] - Amp{1}) < kEps);
    CHECK(std::abs(u[1][1] - Amp{1}) < kEps);
    CHECK(std::abs(u[3][2] - Amp{1}) < kEps);
    CHECK(std::abs(u[2][3] - Amp{1}) < kEps);

    Program q(1);
    q.push(Measure{0, "m"});
    CHECK_THROWS_AS(unitary_of(q), NotPureError);
}
