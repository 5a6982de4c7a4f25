#pragma once

// Exact symbolic Pauli-string algebra with full phase tracking, plus the
// Clifford conjugation rules (CNOT, Hadamard, multi-controlled parity gate)
// needed for Heisenberg-picture stabilizer propagation.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace parityq {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    throw std::logic_error("invalid Pauli value");
}

// Signed tensor product of single-qubit Pauli operators. The phase lives in
// the four-element group {+1, +i, -1, -i}, stored as the exponent k of i^k.
struct PauliString {
    int phase_power = 0;          // i^phase_power, normalized to 0..3
    std::vector<Pauli> ops;

    PauliString() = default;
    PauliString(int phase_pow, std::vector<Pauli> operators)
        : phase_power(((phase_pow % 4) + 4) % 4), ops(std::move(operators)) {}

    static PauliString identity(std::size_t n) {
        return PauliString(0, std::vector<Pauli>(n, Pauli::I));
    }

    // Single non-identity factor at `site`, identity elsewhere.
    static PauliString single(std::size_t n, std::size_t site, Pauli p, int phase_pow = 0) {
        if (site >= n) throw std::out_of_range("PauliString::single: site out of range");
        PauliString out = identity(n);
        out.ops[site] = p;
        out.phase_power = ((phase_pow % 4) + 4) % 4;
        return out;
    }

    std::size_t size() const { return ops.size(); }

    std::complex<double> phase() const {
        static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
        static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
        return {re[phase_power], im[phase_power]};
    }

    bool is_identity_ops() const {
        for (Pauli p : ops)
            if (p != Pauli::I) return false;
        return true;
    }

    int weight() const {
        int w = 0;
        for (Pauli p : ops)
            if (p != Pauli::I) ++w;
        return w;
    }

    bool operator==(const PauliString&) const = default;
};

namespace detail {

// Single-qubit product a*b = i^phase * op.
struct SiteProduct {
    Pauli op;
    int phase_power;
};

inline SiteProduct site_product(Pauli a, Pauli b) {
    if (a == Pauli::I) return {b, 0};
    if (b == Pauli::I) return {a, 0};
    if (a == b) return {Pauli::I, 0};
    // Cyclic rule: XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    auto cyc = [](Pauli u, Pauli v) {
        return (u == Pauli::X && v == Pauli::Y) || (u == Pauli::Y && v == Pauli::Z) ||
               (u == Pauli::Z && v == Pauli::X);
    };
    Pauli third = Pauli::I;
    for (Pauli c : {Pauli::X, Pauli::Y, Pauli::Z})
        if (c != a && c != b) third = c;
    return {third, cyc(a, b) ? 1 : 3};
}

inline void check_same_size(const PauliString& a, const PauliString& b, const char* who) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(who) + ": register size mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

}  // namespace detail

// Group product with accumulated phase.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
    detail::check_same_size(a, b, "multiply");
    PauliString out;
    out.ops.resize(a.size());
    int phase = a.phase_power + b.phase_power;
    for (std::size_t q = 0; q < a.size(); ++q) {
        auto [op, k] = detail::site_product(a.ops[q], b.ops[q]);
        out.ops[q] = op;
        phase += k;
    }
    out.phase_power = phase % 4;
    return out;
}

// True iff the strings commute: an even number of positions holds a pair of
// distinct non-identity operators.
inline bool commutes(const PauliString& a, const PauliString& b) {
    detail::check_same_size(a, b, "commutes");
    int anti = 0;
    for (std::size_t q = 0; q < a.size(); ++q) {
        Pauli pa = a.ops[q], pb = b.ops[q];
        if (pa != Pauli::I && pb != Pauli::I && pa != pb) ++anti;
    }
    return anti % 2 == 0;
}

// Heisenberg update P -> U P U^dagger for U = CNOT(control -> target).
inline PauliString conjugate_by_cnot(const PauliString& p, std::size_t control, std::size_t target) {
    if (control >= p.size() || target >= p.size())
        throw std::out_of_range("conjugate_by_cnot: site index out of range");
    if (control == target)
        throw std::invalid_argument("conjugate_by_cnot: control equals target");

    // Two-qubit conjugation table on (control, target); sign factor is -1
    // only for XZ and YY inputs.
    static constexpr Pauli C[4][4] = {
        /* c=I */ {Pauli::I, Pauli::I, Pauli::Z, Pauli::Z},
        /* c=X */ {Pauli::X, Pauli::X, Pauli::Y, Pauli::Y},
        /* c=Y */ {Pauli::Y, Pauli::Y, Pauli::X, Pauli::X},
        /* c=Z */ {Pauli::Z, Pauli::Z, Pauli::I, Pauli::I},
    };
    static constexpr Pauli T[4][4] = {
        /* t for c=I */ {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z},
        /* t for c=X */ {Pauli::X, Pauli::I, Pauli::Z, Pauli::Y},
        /* t for c=Y */ {Pauli::X, Pauli::I, Pauli::Z, Pauli::Y},
        /* t for c=Z */ {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z},
    };
    static constexpr int S[4][4] = {
        {0, 0, 0, 0},
        {0, 0, 0, 2},  // X(c)Z(t) -> -Y(c)Y(t)
        {0, 0, 2, 0},  // Y(c)Y(t) -> -X(c)Z(t)
        {0, 0, 0, 0},
    };

    PauliString out = p;
    auto ci = static_cast<int>(p.ops[control]);
    auto ti = static_cast<int>(p.ops[target]);
    out.ops[control] = C[ci][ti];
    out.ops[target] = T[ci][ti];
    out.phase_power = (out.phase_power + S[ci][ti]) % 4;
    return out;
}

// Heisenberg update for a Hadamard on qubit q: X <-> Z, Y -> -Y.
inline PauliString conjugate_by_hadamard(const PauliString& p, std::size_t q) {
    if (q >= p.size()) throw std::out_of_range("conjugate_by_hadamard: site index out of range");
    PauliString out = p;
    switch (p.ops[q]) {
        case Pauli::X: out.ops[q] = Pauli::Z; break;
        case Pauli::Z: out.ops[q] = Pauli::X; break;
        case Pauli::Y: out.phase_power = (out.phase_power + 2) % 4; break;
        case Pauli::I: break;
    }
    return out;
}

// Heisenberg update for the multi-controlled parity gate: the target is
// flipped iff the XOR of the controls is one. As a Clifford map this is the
// composition of CNOTs from each control onto the shared target (those
// CNOTs commute). The tracked flip phase of the physical gate is
// block-dependent bookkeeping and stays outside this Clifford frame.
inline PauliString conjugate_by_parity_gate(const PauliString& p,
                                            const std::vector<std::size_t>& controls,
                                            std::size_t target) {
    if (controls.empty() || controls.size() > 4)
        throw std::invalid_argument("conjugate_by_parity_gate: expected 1 to 4 controls");
    if (target >= p.size()) throw std::out_of_range("conjugate_by_parity_gate: target out of range");
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (controls[i] >= p.size())
            throw std::out_of_range("conjugate_by_parity_gate: control out of range");
        if (controls[i] == target)
            throw std::invalid_argument("conjugate_by_parity_gate: control overlaps target");
        for (std::size_t j = i + 1; j < controls.size(); ++j)
            if (controls[i] == controls[j])
                throw std::invalid_argument("conjugate_by_parity_gate: duplicate control");
    }
    PauliString out = p;
    for (std::size_t c : controls) out = conjugate_by_cnot(out, c, target);
    return out;
}

// Text form "+X I Z Y" (phase prefix one of +, -, +i, -i).
inline std::string to_string(const PauliString& p) {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[p.phase_power];
    for (std::size_t q = 0; q < p.size(); ++q) {
        if (q) out += ' ';
        out += pauli_char(p.ops[q]);
    }
    return out;
}

inline PauliString parse_pauli_string(const std::string& text) {
    std::size_t pos = 0;
    int sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
    }
    int phase_pow = sign == 1 ? 0 : 2;
    if (pos < text.size() && text[pos] == 'i') {
        phase_pow = (phase_pow + 1) % 4;
        ++pos;
    }
    std::vector<Pauli> ops;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == ' ' || c == '\t') continue;
        switch (c) {
            case 'I': ops.push_back(Pauli::I); break;
            case 'X': ops.push_back(Pauli::X); break;
            case 'Y': ops.push_back(Pauli::Y); break;
            case 'Z': ops.push_back(Pauli::Z); break;
            default:
                throw std::invalid_argument(std::string("parse_pauli_string: unexpected character '") + c + "'");
        }
    }
    if (ops.empty()) throw std::invalid_argument("parse_pauli_string: no operators found");
    return PauliString(phase_pow, std::move(ops));
}

// Restriction of a string to a subset of sites (order given by `sites`);
// keeps the phase. Useful for reading stabilizer products on a plaquette.
inline PauliString restrict_to(const PauliString& p, const std::vector<std::size_t>& sites) {
    PauliString out;
    out.phase_power = p.phase_power;
    out.ops.reserve(sites.size());
    for (std::size_t s : sites) {
        if (s >= p.size()) throw std::out_of_range("restrict_to: site out of range");
        out.ops.push_back(p.ops[s]);
    }
    return out;
}

}  // namespace parityq
