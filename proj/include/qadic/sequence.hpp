#pragma once

// Cyclotomic partition of Z_2p and the quaternary sequence built on it.
//
// Z_2p splits (disjointly) as
//   D0(2p) u D1(2p) u 2*D0(p) u 2*D1(p) u {0, p}
// where D0(2p) = <g^2> is the square class of Z_2p^* for a primitive root g,
// D1(2p) = g*D0(2p), and D0(p)/D1(p) are the quadratic residues and
// non-residues of Z_p^*. The sequence assigns 0/1 on the odd classes and
// 2/3 on the even ones, with a(0) = 0 and a(p) = 2.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "numtheory.hpp"

namespace qadic {

// Malformed sequence text; position() is the byte offset of the offense.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// The five-part decomposition of {0, ..., 2p-1}. Each class is kept as a
// sorted index list so serialized forms compare canonically.
struct CyclotomicPartition {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> d0_2p;     // squares of Z_2p^*
    std::vector<std::uint64_t> d1_2p;     // non-squares of Z_2p^*
    std::vector<std::uint64_t> two_d0_p;  // 2a for quadratic residues a mod p
    std::vector<std::uint64_t> two_d1_p;  // 2a for non-residues a mod p
    std::vector<std::uint64_t> special;   // {0, p}
};

// The squares of Z_2p^* computed without any primitive root: an odd i != p
// is a square mod 2p exactly when i mod p is a square mod p (CRT view).
// Serves as the independent cross-check for build_partition's subgroup route.
inline std::vector<std::uint64_t> squares_mod_2p(const OddPrimeParam& prime) {
    std::vector<std::uint64_t> out;
    out.reserve((prime.p - 1) / 2);
    for (std::uint64_t i = 1; i < prime.n_period; i += 2) {
        if (i == prime.p) continue;
        if (legendre_symbol(static_cast<std::int64_t>(i % prime.p), prime.p) == 1)
            out.push_back(i);
    }
    return out;
}

inline CyclotomicPartition build_partition(const OddPrimeParam& prime) {
    const std::uint64_t p = prime.p;
    const std::uint64_t m = prime.n_period;

    CyclotomicPartition part;
    part.p = p;

    // D0(2p) = <g^2>, D1(2p) = g * D0(2p)
    const std::uint64_t g = primitive_root_mod_2p(p);
    const std::uint64_t g2 = detail::mul_mod(g, g, m);
    std::uint64_t x = 1;
    do {
        part.d0_2p.push_back(x);
        part.d1_2p.push_back(detail::mul_mod(g, x, m));
        x = detail::mul_mod(x, g2, m);
    } while (x != 1);

    // even classes from the Legendre classification of Z_p^*
    for (std::uint64_t a = 1; a < p; ++a) {
        auto& cls = legendre_symbol(static_cast<std::int64_t>(a), p) == 1
                        ? part.two_d0_p
                        : part.two_d1_p;
        cls.push_back(detail::mul_mod(2, a, m));
    }

    part.special = {0, p};

    std::sort(part.d0_2p.begin(), part.d0_2p.end());
    std::sort(part.d1_2p.begin(), part.d1_2p.end());
    std::sort(part.two_d0_p.begin(), part.two_d0_p.end());
    std::sort(part.two_d1_p.begin(), part.two_d1_p.end());
    return part;
}

// Period-2p word over {0,1,2,3}.
struct QuaternarySequence {
    std::uint64_t p = 0;
    std::vector<std::uint8_t> symbols;

    bool operator==(const QuaternarySequence&) const = default;
};

inline QuaternarySequence generate_sequence(const OddPrimeParam& prime) {
    const CyclotomicPartition part = build_partition(prime);

    constexpr std::uint8_t unset = 0xFF;
    QuaternarySequence seq;
    seq.p = prime.p;
    seq.symbols.assign(prime.n_period, unset);

    auto assign = [&](std::uint64_t i, std::uint8_t v) {
        if (seq.symbols[i] != unset)
            throw std::logic_error("generate_sequence: index assigned twice");
        seq.symbols[i] = v;
    };

    assign(0, 0);
    assign(prime.p, 2);
    for (std::uint64_t i : part.d0_2p) assign(i, 0);
    for (std::uint64_t i : part.two_d0_p) assign(i, 2);
    for (std::uint64_t i : part.d1_2p) assign(i, 1);
    for (std::uint64_t i : part.two_d1_p) assign(i, 3);

    for (std::uint8_t s : seq.symbols)
        if (s == unset)
            throw std::logic_error("generate_sequence: partition missed an index");
    return seq;
}

// One ASCII digit per symbol, no separators.
inline std::string sequence_to_text(const QuaternarySequence& seq) {
    std::string out;
    out.reserve(seq.symbols.size());
    for (std::uint8_t s : seq.symbols)
        out.push_back(static_cast<char>('0' + s));
    return out;
}

// Inverse of sequence_to_text; a single trailing newline is tolerated.
inline QuaternarySequence sequence_from_text(std::string_view text,
                                             const OddPrimeParam& prime) {
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);

    const std::size_t expected = prime.n_period;
    QuaternarySequence seq;
    seq.p = prime.p;
    seq.symbols.reserve(expected);

    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i >= expected)
            throw parse_error("sequence longer than period 2p = " +
                                  std::to_string(expected),
                              expected);
        const char c = text[i];
        if (c < '0' || c > '9')
            throw parse_error(std::string("non-digit character '") + c + "'", i);
        if (c > '3')
            throw parse_error(std::string("symbol ") + c + " outside {0,1,2,3}", i);
        seq.symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (seq.symbols.size() != expected)
        throw parse_error("sequence shorter than period 2p = " +
                              std::to_string(expected),
                          text.size());
    return seq;
}

}  // namespace qadic
