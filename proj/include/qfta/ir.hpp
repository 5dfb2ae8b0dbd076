#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qfta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : Error { using Error::Error; };
struct WidthError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct LoopBoundExceeded : Error { using Error::Error; };
struct NormError : Error { using Error::Error; };
struct NotPureError : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct NegativeExponent : Error { using Error::Error; };
struct UnsupportedExport : Error { using Error::Error; };
struct UnknownOp : Error { using Error::Error; };

enum class GateKind { H, X, Phase };
enum class Polarity { Positive, Negative };

/// A control qubit with its polarity. A negative control fires when the
/// qubit is |0>.
struct Control {
    int qubit = 0;
    Polarity polarity = Polarity::Positive;
};

/// One primitive gate: Hadamard, NOT, or the rotation phase gate
/// R_k = diag(1, e^{2*pi*i/2^k}) (inverse = conjugate), with any number of
/// positive- or negative-polarity controls.
struct Gate {
    GateKind kind = GateKind::X;
    int target = 0;
    int k = 0;             // Phase only, k >= 1
    bool inverse = false;  // Phase only
    std::vector<Control> controls;

    static Gate h(int target);
    static Gate x(int target, std::vector<Control> controls = {});
    static Gate phase(int k, int target, bool inverse = false,
                      std::vector<Control> controls = {});

    /// Self-inverse for H and X; flips the phase direction for Phase.
    Gate inverted() const;

    void validate(int total_qubits) const;
};

struct Item;

/// Mid-circuit measurement into a named classical slot.
struct Measure {
    int qubit = 0;
    std::string slot;
};

/// Hybrid classical control: the flag qubit is measured before each pass;
/// while it differs from `expect` the body is executed again. Errs with
/// LoopBoundExceeded once `max_iters` body executions did not reach the
/// expected flag value.
struct RepeatUntil {
    std::string name;
    int flag = 0;
    int expect = 1;
    int max_iters = 1;
    std::vector<Item> body;
};

struct Item {
    std::variant<Gate, Measure, RepeatUntil> node;

    Item(Gate g) : node(std::move(g)) {}
    Item(Measure m) : node(std::move(m)) {}
    Item(RepeatUntil r) : node(std::move(r)) {}
};

/// A sequence of gates and classically-controlled loops over a fixed global
/// qubit space. Immutable by convention once built.
struct Program {
    int total_qubits = 0;
    std::vector<Item> items;

    Program() = default;
    explicit Program(int qubits) : total_qubits(qubits) {}

    void push(Gate g);
    void push(Measure m);
    void push(RepeatUntil r);
    void append(const Program& other);

    void validate() const;

    /// True if the program contains no Measure and no RepeatUntil.
    bool pure() const;
};

/// An ordered group of qubits, MSB first: qubits[0] is the sign /
/// most-significant position.
struct Register {
    std::string name;
    std::vector<int> qubits;

    int width() const { return static_cast<int>(qubits.size()); }
    int msb() const { return qubits.front(); }
    void validate() const;
};

/// Builds a contiguous register covering [first, first + width).
Register make_register(std::string name, int first, int width);

std::int64_t signed_min(int width);
std::int64_t signed_max(int width);

/// Two's-complement bit pattern of `value`, MSB first.
/// Throws RangeError if value does not fit `width` bits signed.
std::string encode_signed(std::int64_t value, int width);

/// Inverse of encode_signed; MSB = 1 means negative.
std::int64_t decode_signed(std::string_view bits);

/// Reduces v modulo 2^width into the signed range of `width` bits.
std::int64_t wrap_signed(std::int64_t v, int width);

/// Concatenates fragments sharing one qubit space. No qubit remapping.
Program compose(const std::vector<Program>& fragments);

/// Exact inverse of a pure fragment (reversed gate order, inverted gates).
/// Throws NotPureError on Measure or RepeatUntil.
Program inverse_of(const Program& fragment);

}  // namespace qfta
