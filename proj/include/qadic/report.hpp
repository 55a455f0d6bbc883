#pragma once

// Range verification and report serialization. One row per odd prime,
// rows always sorted ascending by p, schema fixed so downstream diffs of
// CSV/JSON output stay stable.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "adic.hpp"

namespace qadic {

struct ReportRow {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    mpz_class d_plus;
    mpz_class d_minus;
    mpz_class d_total;
    mpz_class d_predicted;
    bool lemma2_1 = false;
    bool lemma2_2 = false;
    bool theorem_ok = false;
    std::int64_t elapsed_ms = 0;

    bool all_ok() const { return lemma2_1 && lemma2_2 && theorem_ok; }
};

inline ReportRow to_report_row(const VerificationRecord& rec) {
    ReportRow row;
    row.p = rec.p;
    row.n = 2 * rec.p;
    row.d_plus = rec.d_plus;
    row.d_minus = rec.d_minus;
    row.d_total = rec.d_total;
    row.d_predicted = rec.d_predicted;
    row.lemma2_1 = rec.lemma2_1;
    row.lemma2_2 = rec.lemma2_2;
    row.theorem_ok = rec.theorem_ok;
    row.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(rec.elapsed).count();
    return row;
}

inline std::vector<std::uint64_t> odd_primes_in(std::uint64_t p_min,
                                                std::uint64_t p_max) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = p_min | 1; n <= p_max; n += 2)
        if (n >= 3 && is_prime(n)) primes.push_back(n);
    return primes;
}

// Verifies every odd prime in [p_min, p_max]. Each prime is an independent
// task; with workers > 1 they are claimed off an atomic counter and each
// record lands in its slot by index, so the row set is identical to a
// serial run.
inline std::vector<ReportRow> verify_range(std::uint64_t p_min,
                                           std::uint64_t p_max,
                                           unsigned workers = 1,
                                           std::uint64_t max_p = default_max_prime) {
    if (p_min < 3)
        throw std::invalid_argument("verify_range: p_min must be >= 3");
    if (p_min > p_max)
        throw std::invalid_argument("verify_range: empty range, p_min > p_max");
    if (p_max > max_p)
        throw std::invalid_argument("verify_range: p_max exceeds the supported limit " +
                                    std::to_string(max_p));

    const std::vector<std::uint64_t> primes = odd_primes_in(p_min, p_max);
    std::vector<ReportRow> rows(primes.size());

    auto run_one = [&](std::size_t i) {
        rows[i] = to_report_row(verify_prime(OddPrimeParam(primes[i], max_p)));
    };

    if (workers <= 1 || primes.size() <= 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) run_one(i);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= primes.size() || failed.load()) return;
            try {
                run_one(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const unsigned count =
        static_cast<unsigned>(std::min<std::size_t>(workers, primes.size()));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

inline constexpr std::string_view report_csv_header =
    "p,N,d_plus,d_minus,d_total,d_predicted,lemma2_1,lemma2_2,theorem_ok,elapsed_ms";

inline void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
    auto flag = [](bool b) { return b ? "true" : "false"; };
    out << report_csv_header << '\n';
    for (const ReportRow& r : rows) {
        out << r.p << ',' << r.n << ',' << r.d_plus.get_str() << ','
            << r.d_minus.get_str() << ',' << r.d_total.get_str() << ','
            << r.d_predicted.get_str() << ',' << flag(r.lemma2_1) << ','
            << flag(r.lemma2_2) << ',' << flag(r.theorem_ok) << ','
            << r.elapsed_ms << '\n';
    }
}

namespace detail {

// d values are 1 or 5 whenever the claims hold, but a discrepancy row can
// carry an arbitrarily large gcd, so fall back to a decimal string.
inline nlohmann::ordered_json json_mpz(const mpz_class& v) {
    if (v.fits_ulong_p())
        return static_cast<std::uint64_t>(v.get_ui());
    return v.get_str();
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(std::span<const ReportRow> rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ReportRow& r : rows) {
        arr.push_back({{"p", r.p},
                       {"N", r.n},
                       {"d_plus", detail::json_mpz(r.d_plus)},
                       {"d_minus", detail::json_mpz(r.d_minus)},
                       {"d_total", detail::json_mpz(r.d_total)},
                       {"d_predicted", detail::json_mpz(r.d_predicted)},
                       {"lemma2_1", r.lemma2_1},
                       {"lemma2_2", r.lemma2_2},
                       {"theorem_ok", r.theorem_ok},
                       {"elapsed_ms", r.elapsed_ms}});
    }
    return arr;
}

inline void write_report_json(std::ostream& out, std::span<const ReportRow> rows) {
    out << report_to_json(rows).dump(2) << '\n';
}

struct ReportSummary {
    std::size_t rows = 0;
    std::size_t failures = 0;

    bool all_ok() const { return failures == 0; }
};

inline ReportSummary summarize(std::span<const ReportRow> rows) {
    ReportSummary s;
    s.rows = rows.size();
    for (const ReportRow& r : rows)
        if (!r.all_ok()) ++s.failures;
    return s;
}

}  // namespace qadic
