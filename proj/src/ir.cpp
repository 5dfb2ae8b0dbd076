#include "qfta/ir.hpp"

#include <algorithm>
#include <set>

namespace qfta {

Gate Gate::h(int target) {
    Gate g;
    g.kind = GateKind::H;
    g.target = target;
    return g;
}

Gate Gate::x(int target, std::vector<Control> controls) {
    Gate g;
    g.kind = GateKind::X;
    g.target = target;
    g.controls = std::move(controls);
    return g;
}

Gate Gate::phase(int k, int target, bool inverse, std::vector<Control> controls) {
    Gate g;
    g.kind = GateKind::Phase;
    g.target = target;
    g.k = k;
    g.inverse = inverse;
    g.controls = std::move(controls);
    return g;
}

Gate Gate::inverted() const {
    Gate g = *this;
    if (g.kind == GateKind::Phase) g.inverse = !g.inverse;
    return g;
}

void Gate::validate(int total_qubits) const {
    auto check_index = [&](int q) {
        if (q < 0 || q >= total_qubits)
            throw IndexError("qubit index " + std::to_string(q) +
                             " out of range for " + std::to_string(total_qubits) +
                             " qubits");
    };
    check_index(target);
    std::set<int> seen;
    for (const auto& c : controls) {
        check_index(c.qubit);
        if (c.qubit == target)
            throw IndexError("gate target appears in its control list");
        if (!seen.insert(c.qubit).second)
            throw IndexError("duplicate control qubit");
    }
    if (kind == GateKind::Phase && k < 1)
        throw IndexError("phase gate requires k >= 1");
}

void Program::push(Gate g) {
    g.validate(total_qubits);
    items.emplace_back(std::move(g));
}

void Program::push(Measure m) {
    if (m.qubit < 0 || m.qubit >= total_qubits)
        throw IndexError("measure qubit out of range");
    items.emplace_back(std::move(m));
}

void Program::push(RepeatUntil r) {
    if (r.flag < 0 || r.flag >= total_qubits)
        throw IndexError("loop flag qubit out of range");
    if (r.max_iters < 1) throw IndexError("max_iters must be positive");
    items.emplace_back(std::move(r));
}

namespace {

void validate_items(const std::vector<Item>& items, int total_qubits) {
    for (const auto& it : items) {
        if (const auto* g = std::get_if<Gate>(&it.node)) {
            g->validate(total_qubits);
        } else if (const auto* m = std::get_if<Measure>(&it.node)) {
            if (m->qubit < 0 || m->qubit >= total_qubits)
                throw IndexError("measure qubit out of range");
        } else {
            const auto& r = std::get<RepeatUntil>(it.node);
            if (r.flag < 0 || r.flag >= total_qubits)
                throw IndexError("loop flag qubit out of range");
            validate_items(r.body, total_qubits);
        }
    }
}

bool items_pure(const std::vector<Item>& items) {
    return std::all_of(items.begin(), items.end(), [](const Item& it) {
        return std::holds_alternative<Gate>(it.node);
    });
}

}  // namespace

void Program::validate() const { validate_items(items, total_qubits); }

bool Program::pure() const { return items_pure(items); }

void Register::validate() const {
    if (qubits.empty()) throw WidthError("register width must be >= 1");
    std::set<int> seen(qubits.begin(), qubits.end());
    if (seen.size() != qubits.size())
        throw IndexError("register qubits must be distinct");
}

Register make_register(std::string name, int first, int width) {
    Register r;
    r.name = std::move(name);
    r.qubits.resize(width);
    for (int i = 0; i < width; ++i) r.qubits[i] = first + i;
    r.validate();
    return r;
}

std::int64_t signed_min(int width) {
    return -(std::int64_t{1} << (width - 1));
}

std::int64_t signed_max(int width) {
    return (std::int64_t{1} << (width - 1)) - 1;
}

std::string encode_signed(std::int64_t value, int width) {
    if (width < 1 || width > 62) throw WidthError("unsupported register width");
    if (value < signed_min(width) || value > signed_max(width))
        throw RangeError("value " + std::to_string(value) + " does not fit " +
                         std::to_string(width) + " bits signed");
    std::uint64_t pattern =
        static_cast<std::uint64_t>(value) & ((std::uint64_t{1} << width) - 1);
    std::string bits(width, '0');
    for (int i = 0; i < width; ++i)
        if (pattern >> (width - 1 - i) & 1) bits[i] = '1';
    return bits;
}

std::int64_t decode_signed(std::string_view bits) {
    if (bits.empty()) throw WidthError("empty bitstring");
    std::int64_t v = 0;
    for (char c : bits) v = (v << 1) | (c == '1' ? 1 : 0);
    if (bits[0] == '1') v -= std::int64_t{1} << bits.size();
    return v;
}

std::int64_t wrap_signed(std::int64_t v, int width) {
    const std::int64_t mod = std::int64_t{1} << width;
    std::int64_t r = ((v % mod) + mod) % mod;
    if (r > signed_max(width)) r -= mod;
    return r;
}

Program compose(const std::vector<Program>& fragments) {
    Program out;
    if (fragments.empty()) return out;
    out.total_qubits = fragments.front().total_qubits;
    for (const auto& f : fragments) out.append(f);
    return out;
}

void Program::append(const Program& other) {
    if (total_qubits == 0 && items.empty()) total_qubits = other.total_qubits;
    if (other.total_qubits != total_qubits)
        throw IndexError("cannot compose fragments over different qubit spaces");
    other.validate();
    items.insert(items.end(), other.items.begin(), other.items.end());
}

Program inverse_of(const Program& fragment) {
    if (!fragment.pure())
        throw NotPureError("cannot invert a program with measurement or loops");
    Program out(fragment.total_qubits);
    for (auto it = fragment.items.rbegin(); it != fragment.items.rend(); ++it)
        out.push(std::get<Gate>(it->node).inverted());
    return out;
}

}  // namespace qfta
