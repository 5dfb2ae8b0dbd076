#include <doctest.h>

#include "qfta/arith.hpp"

using namespace qfta;

TEST_CASE("non-modular addition: frozen examples") {
    ArithCircuit c = build_qnmadd(4, 3);
    CHECK(run_arith(c, 3, -2).result == 1);
    CHECK(run_arith(c, 5, 0).result == 5);
    CHECK(run_arith(c, -8, -4).result == -12);  // needs the extra qubit
    CHECK(run_arith(c, 7, 3).result == 10);
    ArithRun r = run_arith(c, 7, 3);
    CHECK(r.values.at("b") == 3);  // addend preserved
}

TEST_CASE("non-modular subtraction: frozen examples") {
    ArithCircuit c = build_qnmsub(4, 3);
    CHECK(run_arith(c, 3, -2).result == 5);
    CHECK(run_arith(c, -8, 3).result == -11);
    CHECK(run_arith(c, 5, 0).result == 5);
}

TEST_CASE("literal Toffoli sign preparation fails the contract; fallback holds") {
    const int n = 2, m = 2;
    ArithCircuit literal = build_qnmadd(n, m, SignPrep::LiteralToffoli);
    ArithCircuit fallback = build_qnmadd(n, m, SignPrep::SignExtendCnot);
    int literal_misses = 0, fallback_misses = 0;
    for (std::int64_t a = signed_min(n); a <= signed_max(n); ++a)
        for (std::int64_t b = signed_min(m); b <= signed_max(m); ++b) {
            if (run_arith(literal, a, b).result != a + b) ++literal_misses;
            if (run_arith(fallback, a, b).result != a + b) ++fallback_misses;
        }
    CHECK(literal_misses > 0);  // e.g. a=0, b=-1 prepares a0 wrongly
    CHECK(fallback_misses == 0);
    CHECK(fallback.count_delta == -15);
    CHECK(fallback.deviation_note.has_value());
}

TEST_CASE("modular addition wraps at the register width") {
    ArithCircuit c = build_qmadd(4, 4);
    CHECK(run_arith(c, 7, 1).result == -8);
    CHECK(run_arith(c, 3, 0).result == 3);
    ArithCircuit s = build_qmsub(4, 4);
    CHECK(run_arith(s, -8, 1).result == 7);
}

TEST_CASE("two's complement negation") {
    ArithCircuit c3 = build_qtc(3);
    CHECK(run_arith(c3, 2).result == -2);
    CHECK(run_arith(c3, 0).result == 0);
    ArithCircuit c4 = build_qtc(4);
    CHECK(run_arith(c4, -8).result == -8);  // minimum wraps onto itself
    CHECK(run_arith(c4, -5).result == 5);
}

TEST_CASE("absolute value stores the sign and handles the minimum") {
    ArithCircuit c = build_qabs(4);
    ArithRun neg = run_arith(c, -5);
    CHECK(neg.result == 5);
    CHECK(neg.bits.at("s") == 1);
    ArithRun pos = run_arith(c, 5);
    CHECK(pos.result == 5);
    CHECK(pos.bits.at("s") == 0);
    CHECK(run_arith(c, -8).result == -8);  // |a| does not fit n bits
}

TEST_CASE("comparator sets exactly one flag and restores its inputs") {
    ArithCircuit c43 = build_qcomp(4, 3);
    ArithRun lt = run_arith(c43, -3, 2);
    CHECK(lt.bits.at("c1") == 1);
    CHECK(lt.bits.at("c0") == 0);
    CHECK(lt.bits.at("c2") == 0);

    ArithCircuit c44 = build_qcomp(4, 4);
    CHECK(run_arith(c44, 5, -5).bits.at("c0") == 1);
    CHECK(run_arith(c44, 5, 5).bits.at("c2") == 1);

    ArithCircuit c33 = build_qcomp(3, 3);
    for (std::int64_t a = -4; a <= 3; ++a)
        for (std::int64_t b = -4; b <= 3; ++b) {
            ArithRun r = run_arith(c33, a, b);
            CHECK(r.bits.at("c0") + r.bits.at("c1") + r.bits.at("c2") == 1);
            CHECK(r.values.at("a") == a);
            CHECK(r.values.at("b") == b);
            CHECK(r.bits.at("a0") == 0);
        }
}

TEST_CASE("register copy and swap-with-zero primitives") {
    Register src = make_register("x", 0, 3);
    Register dst = make_register("z", 3, 3);
    Program uc = build_uc(src, dst, 6);
    CHECK(uc.items.size() == 3);
    CHECK(run(uc, "101000").final_state.dominant_index() == 0b101101);

    Program ur = build_ur(src, dst, 6);
    CHECK(ur.items.size() == 6);
    CHECK(run(ur, "110000").final_state.dominant_index() == 0b000110);
    CHECK(run(ur, "000000").final_state.dominant_index() == 0);
}

TEST_CASE("multiplication: frozen examples, corner wrap, iteration count") {
    ArithCircuit c = build_qnmmul(3, 3, true);
    ArithRun r = run_arith(c, 3, -2);
    CHECK(r.result == -6);
    CHECK(r.iterations.at("mul_loop") == 2);
    CHECK(r.values.at("a") == 3);
    CHECK(r.values.at("b") == -2);

    ArithRun zero = run_arith(c, 3, 0);
    CHECK(zero.result == 0);
    CHECK(zero.iterations.at("mul_loop") == 0);

    // (-4)*(-4) = 16 wraps in the 5-bit result to -16.
    CHECK(run_arith(c, -4, -4).result == -16);

    ArithCircuit v2 = build_qnmmul(3, 3, false);
    ArithRun consumed = run_arith(v2, -3, 3);
    CHECK(consumed.result == -9);
    CHECK(consumed.values.at("b") == 0);  // working copy consumed
}

TEST_CASE("division: trunc semantics, overshoot count, corner wrap") {
    ArithCircuit c = build_qnmdiv(4, 3, true);
    ArithRun r = run_arith(c, 7, 2);
    CHECK(r.result == 3);
    CHECK(r.iterations.at("div_loop") == 4);  // 3 full passes + overshoot
    CHECK(r.values.at("a") == 7);
    CHECK(r.values.at("b") == 2);
    CHECK(run_arith(c, -7, 2).result == -3);
    CHECK(run_arith(c, -7, -2).result == 3);
    for (std::int64_t a = -8; a <= 7; ++a)
        CHECK(run_arith(c, a, 1).result == a);

    // -8 / -1 = 8 does not fit 4 signed bits; wraps to -8.
    CHECK(run_arith(build_qnmdiv(4, 4, true), -8, -1).result == -8);

    // b = 0 never terminates the loop; surfaces as the loop bound.
    CHECK_THROWS_AS(run_arith(c, 5, 0), LoopBoundExceeded);
}

TEST_CASE("in-place division consumes inputs into quotient and remainders") {
    ArithCircuit c = build_qnmdiv(3, 3, false);
    CHECK_FALSE(c.preserves_inputs);
    CHECK(run_arith(c, 3, 2).result == 1);
    CHECK(run_arith(c, -3, 2).result == -1);
    CHECK(run_arith(c, -4, 3).result == -1);
    CHECK(c.deviation_note.has_value());
}

TEST_CASE("exponentiation: frozen examples and exponent guard") {
    ArithCircuit c = build_qexp(3, 3);
    ArithRun r = run_arith(c, 2, 3);
    CHECK(r.result == 8);
    CHECK(r.iterations.at("exp_loop") == 3);
    CHECK(r.values.at("a") == 2);

    ArithRun one = run_arith(c, 3, 0);
    CHECK(one.result == 1);
    CHECK(one.iterations.at("exp_loop") == 0);

    CHECK(run_arith(c, -2, 3).result == -8);
    // 3^3 = 27 exceeds the default 5-bit result; wraps to -5.
    CHECK(run_arith(c, 3, 3).result == -5);
    // A wide enough result register holds it exactly.
    CHECK(run_arith(build_qexp(3, 3, 6), 3, 3).result == 27);

    CHECK_THROWS_AS(run_arith(c, 2, -1), NegativeExponent);
}

TEST_CASE("multiplication and division are dual on exact products") {
    ArithCircuit mul = build_qnmmul(3, 3, true);
    // The in-place divider keeps the qubit total desk-sized at width 5.
    ArithCircuit div = build_qnmdiv(5, 3, false);
    for (std::int64_t q = -3; q <= 3; ++q)
        for (std::int64_t b : {-3, -1, 2, 3}) {
            const std::int64_t prod = run_arith(mul, q, b).result;
            CHECK(run_arith(div, prod, b).result == q);
        }
}

TEST_CASE("build_named dispatches and rejects unknown names") {
    CHECK(build_named("qnmadd", 4, 3).op == "qnmadd");
    CHECK(build_named("qtc", 4, 0).op == "qtc");
    CHECK_THROWS_AS(build_named("bogus", 3, 3), UnknownOp);
    CHECK_THROWS_AS(build_qnmadd(3, 4), WidthError);
}
