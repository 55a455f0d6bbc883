#include <catch2/catch_amalgamated.hpp>

#include <qadic/sequence.hpp>

#include <array>
#include <set>

#include "oracles.hpp"

using namespace qadic;

namespace {

std::set<std::uint64_t> as_set(const std::vector<std::uint64_t>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("partition for p = 3") {
    const CyclotomicPartition part = build_partition(OddPrimeParam(3));
    CHECK(part.d0_2p == std::vector<std::uint64_t>{1});
    CHECK(part.d1_2p == std::vector<std::uint64_t>{5});
    CHECK(part.two_d0_p == std::vector<std::uint64_t>{2});
    CHECK(part.two_d1_p == std::vector<std::uint64_t>{4});
    CHECK(part.special == std::vector<std::uint64_t>{0, 3});
}

TEST_CASE("partition class sizes and coverage for p = 5") {
    const CyclotomicPartition part = build_partition(OddPrimeParam(5));
    CHECK(part.d0_2p.size() == 2);
    CHECK(part.d1_2p.size() == 2);
    CHECK(part.two_d0_p.size() == 2);
    CHECK(part.two_d1_p.size() == 2);

    std::set<std::uint64_t> all;
    for (const auto* cls :
         {&part.d0_2p, &part.d1_2p, &part.two_d0_p, &part.two_d1_p, &part.special})
        all.insert(cls->begin(), cls->end());
    CHECK(all == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("partition even classes for p = 7") {
    const CyclotomicPartition part = build_partition(OddPrimeParam(7));
    CHECK(part.two_d0_p == std::vector<std::uint64_t>{2, 4, 8});  // squares mod 7 = {1,2,4}
}

TEST_CASE("partition is disjoint, covering, and structured, p <= 199") {
    for (std::uint64_t p : oracle::odd_primes_upto(199)) {
        const CyclotomicPartition part = build_partition(OddPrimeParam(p));
        const std::size_t half = (p - 1) / 2;
        REQUIRE(part.d0_2p.size() == half);
        REQUIRE(part.d1_2p.size() == half);
        REQUIRE(part.two_d0_p.size() == half);
        REQUIRE(part.two_d1_p.size() == half);
        REQUIRE(part.special == std::vector<std::uint64_t>{0, p});

        std::set<std::uint64_t> all;
        std::size_t total = 0;
        for (const auto* cls : {&part.d0_2p, &part.d1_2p, &part.two_d0_p,
                                &part.two_d1_p, &part.special}) {
            all.insert(cls->begin(), cls->end());
            total += cls->size();
        }
        REQUIRE(total == 2 * p);       // disjoint
        REQUIRE(all.size() == 2 * p);  // covering
        REQUIRE(*all.rbegin() == 2 * p - 1);

        for (std::uint64_t i : part.d0_2p) REQUIRE((i % 2 == 1 && i != p));
        for (std::uint64_t i : part.d1_2p) REQUIRE((i % 2 == 1 && i != p));
        for (std::uint64_t i : part.two_d0_p) REQUIRE((i % 2 == 0 && i != 0));
        for (std::uint64_t i : part.two_d1_p) REQUIRE((i % 2 == 0 && i != 0));
    }
}

TEST_CASE("square class equals the Legendre characterization, p <= 97") {
    for (std::uint64_t p : oracle::odd_primes_upto(97)) {
        const OddPrimeParam prime(p);
        const CyclotomicPartition part = build_partition(prime);

        // library route two: CRT characterization
        REQUIRE(part.d0_2p == squares_mod_2p(prime));

        // test-local route three: square enumeration only
        const auto squares = oracle::squares_by_enumeration(p);
        std::vector<std::uint64_t> enumerated;
        for (std::uint64_t i = 1; i < 2 * p; i += 2)
            if (i != p && squares.count(i % p)) enumerated.push_back(i);
        REQUIRE(part.d0_2p == enumerated);
    }
}

TEST_CASE("partition does not depend on the primitive root, p <= 97") {
    for (std::uint64_t p : oracle::odd_primes_upto(97)) {
        const std::uint64_t m = 2 * p;
        const CyclotomicPartition part = build_partition(OddPrimeParam(p));
        const auto d0 = as_set(part.d0_2p);
        const auto d1 = as_set(part.d1_2p);

        for (std::uint64_t g : oracle::all_primitive_roots_mod_2p(p)) {
            std::set<std::uint64_t> sub, coset;
            const std::uint64_t g2 =
                static_cast<std::uint64_t>(static_cast<unsigned __int128>(g) * g % m);
            std::uint64_t x = 1;
            do {
                sub.insert(x);
                coset.insert(static_cast<std::uint64_t>(
                    static_cast<unsigned __int128>(g) * x % m));
                x = static_cast<std::uint64_t>(
                    static_cast<unsigned __int128>(x) * g2 % m);
            } while (x != 1);
            REQUIRE(sub == d0);
            REQUIRE(coset == d1);
        }
    }
}

TEST_CASE("sequence for p = 3") {
    const QuaternarySequence seq = generate_sequence(OddPrimeParam(3));
    CHECK(seq.symbols == std::vector<std::uint8_t>{0, 0, 2, 2, 3, 1});
}

TEST_CASE("sequences for p = 5 and p = 7") {
    CHECK(sequence_to_text(generate_sequence(OddPrimeParam(5))) == "0021323120");
    CHECK(sequence_to_text(generate_sequence(OddPrimeParam(7))) == "00212132203031");
}

TEST_CASE("sequence symbol balance and fixed positions, p <= 199") {
    for (std::uint64_t p : oracle::odd_primes_upto(199)) {
        const QuaternarySequence seq = generate_sequence(OddPrimeParam(p));
        REQUIRE(seq.symbols.size() == 2 * p);
        REQUIRE(seq.symbols[0] == 0);
        REQUIRE(seq.symbols[p] == 2);

        std::array<std::size_t, 4> counts{};
        for (std::uint8_t s : seq.symbols) {
            REQUIRE(s <= 3);
            ++counts[s];
        }
        REQUIRE(counts[0] == (p + 1) / 2);
        REQUIRE(counts[2] == (p + 1) / 2);
        REQUIRE(counts[1] == (p - 1) / 2);
        REQUIRE(counts[3] == (p - 1) / 2);
    }
}

TEST_CASE("sequence text round trip") {
    const OddPrimeParam three(3);
    const QuaternarySequence seq = generate_sequence(three);
    CHECK(sequence_to_text(seq) == "002231");
    CHECK(sequence_from_text("002231", three) == seq);
    CHECK(sequence_from_text("002231\n", three) == seq);

    for (std::uint64_t p : {5ull, 17ull, 101ull}) {
        const OddPrimeParam prime(p);
        const QuaternarySequence s = generate_sequence(prime);
        REQUIRE(sequence_from_text(sequence_to_text(s), prime) == s);
    }
}

TEST_CASE("sequence text parse errors carry positions") {
    const OddPrimeParam three(3);

    auto position_of = [&](std::string_view text) -> std::size_t {
        try {
            sequence_from_text(text, three);
        } catch (const parse_error& e) {
            return e.position();
        }
        FAIL("expected parse_error");
        return static_cast<std::size_t>(-1);
    };

    CHECK(position_of("00223") == 5);     // too short
    CHECK(position_of("") == 0);
    CHECK(position_of("0022313") == 6);   // too long
    CHECK(position_of("002231002231") == 6);
    CHECK(position_of("00x231") == 2);    // non-digit
    CHECK(position_of("002\n31") == 3);   // newline only allowed at the end
    CHECK(position_of("004231") == 2);    // digit outside the alphabet
    CHECK(position_of("00223180") == 6);  // length error reported before digit check
}
