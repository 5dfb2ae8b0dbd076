#include <doctest.h>

#include <cmath>

#include "qfta/qft.hpp"
#include "qfta/simulator.hpp"

using namespace qfta;

namespace {

std::uint64_t bitrev(std::uint64_t x, int k) {
    std::uint64_t r = 0;
    for (int i = 0; i < k; ++i) r |= ((x >> i) & 1) << (k - 1 - i);
    return r;
}

int gate_count(const Program& p) { return static_cast<int>(p.items.size()); }

}  // namespace

TEST_CASE("qft gate tally is k(k+1)/2") {
    for (int k = 1; k <= 8; ++k) {
        Register r = make_register("r", 0, k);
        CHECK(gate_count(build_qft(r, k)) == k * (k + 1) / 2);
        CHECK(gate_count(build_iqft(r, k)) == k * (k + 1) / 2);
    }
}

TEST_CASE("qft of a basis state matches the DFT column up to bit reversal") {
    // The no-swap construction leaves phase significance reversed across
    // the register, so amplitude y of the DFT sits at index bitrev(y).
    for (int k = 2; k <= 5; ++k) {
        Register r = make_register("r", 0, k);
        Program p = build_qft(r, k);
        const std::uint64_t dim = std::uint64_t{1} << k;
        const double root = 2.0 * M_PI / static_cast<double>(dim);
        for (std::uint64_t x = 0; x < dim; ++x) {
            StateVector s = run(p, StateVector::basis(k, x)).final_state;
            for (std::uint64_t y = 0; y < dim; ++y) {
                const Amp want =
                    std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                               root * static_cast<double>(x * y));
                CHECK(std::abs(s.amps[bitrev(y, k)] - want) < 1e-10);
            }
        }
    }
}

TEST_CASE("iqft undoes qft on every basis state, k=4") {
    Register r = make_register("r", 0, 4);
    Program p = compose({build_qft(r, 4), build_iqft(r, 4)});
    for (std::uint64_t x = 0; x < 16; ++x)
        CHECK(run(p, StateVector::basis(4, x)).final_state.dominant_index() ==
              x);
}

TEST_CASE("phase block tallies match the printed formulas") {
    for (int n = 2; n <= 8; ++n)
        for (int m = 2; m <= n; ++m) {
            Register tgt_nm = make_register("t", 0, n + 1);
            Register add_nm = make_register("b", n + 1, m);
            CHECK(gate_count(build_phase_add(
                      {tgt_nm, add_nm, Direction::Add, false, true},
                      n + m + 1)) == m * (m + 1) / 2 + m * (n + 1 - m));

            Register tgt_m = make_register("t", 0, n);
            Register add_m = make_register("b", n, m);
            CHECK(gate_count(build_phase_add(
                      {tgt_m, add_m, Direction::Subtract, true, true},
                      n + m)) == m * (m + 1) / 2 + m * (n - m));
        }
}

TEST_CASE("phase add in a qft sandwich is signed modular addition") {
    // Exhaustive for small widths: |t>|b> -> |(t + b) mod 2^w>|b> with b
    // sign-extended from m bits.
    for (int w = 3; w <= 4; ++w) {
        const int m = w - 1;
        Register tgt = make_register("t", 0, w);
        Register add = make_register("b", w, m);
        const int total = w + m;
        Program p = compose({build_qft(tgt, total),
                             build_phase_add({tgt, add, Direction::Add, true,
                                              true}, total),
                             build_iqft(tgt, total)});
        for (std::int64_t t = signed_min(w); t <= signed_max(w); ++t)
            for (std::int64_t b = signed_min(m); b <= signed_max(m); ++b) {
                std::string bits = encode_signed(t, w) + encode_signed(b, m);
                const std::uint64_t z =
                    run(p, bits).final_state.dominant_index();
                std::string out;
                for (int i = 0; i < w; ++i)
                    out += StateVector::bit_of(z, i, total) ? '1' : '0';
                CHECK(decode_signed(out) == wrap_signed(t + b, w));
            }
    }
}

TEST_CASE("phase block example: t=3 plus b=-2 in a 5-wide accumulator") {
    const int n = 4, m = 3, total = n + 1 + m;
    Register tgt = make_register("t", 0, n + 1);
    Register add = make_register("b", n + 1, m);
    Program p = compose({build_qft(tgt, total),
                         build_phase_add({tgt, add, Direction::Add, false,
                                          true}, total),
                         build_iqft(tgt, total)});
    std::string bits = encode_signed(3, n + 1) + encode_signed(-2, m);
    const std::uint64_t z = run(p, bits).final_state.dominant_index();
    std::string out;
    for (int i = 0; i < n + 1; ++i)
        out += StateVector::bit_of(z, i, total) ? '1' : '0';
    CHECK(decode_signed(out) == 1);
}

TEST_CASE("phase_add_one adds or subtracts exactly one") {
    const int w = 3;
    Register tgt = make_register("t", 0, w);
    for (Direction dir : {Direction::Add, Direction::Subtract}) {
        Program p = compose({build_qft(tgt, w),
                             build_phase_add_one(tgt, dir, w, {}),
                             build_iqft(tgt, w)});
        for (std::int64_t t = signed_min(w); t <= signed_max(w); ++t) {
            const std::uint64_t z =
                run(p, encode_signed(t, w)).final_state.dominant_index();
            std::string out;
            for (int i = 0; i < w; ++i)
                out += StateVector::bit_of(z, i, w) ? '1' : '0';
            const std::int64_t delta = dir == Direction::Add ? 1 : -1;
            CHECK(decode_signed(out) == wrap_signed(t + delta, w));
        }
    }
}

TEST_CASE("phase block requires addend no wider than the target") {
    Register tgt = make_register("t", 0, 2);
    Register add = make_register("b", 2, 3);
    CHECK_THROWS_AS(
        build_phase_add({tgt, add, Direction::Add, true, true}, 5),
        WidthError);
}
