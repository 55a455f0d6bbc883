// qadic: quaternary cyclotomic sequences of period 2p and their exact
// m-adic complexity.
//
// Subcommands:
//   gen          write the period-2p sequence for a prime p
//   complexity   exact m-adic complexity of a sequence (file or --p)
//   verify       check the complexity claims for every odd prime in a range
//   lemma-check  print the ring values behind the two congruence identities
//
// Exit codes: 0 all checks pass, 1 mathematical discrepancy found,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <qadic/adic.hpp>
#include <qadic/numtheory.hpp>
#include <qadic/report.hpp>
#include <qadic/sequence.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_discrepancy = 1;
constexpr int exit_usage = 2;

std::uint64_t max_prime_limit() {
    const char* env = std::getenv("QADIC_MAX_P");
    if (env == nullptr || *env == '\0') return qadic::default_max_prime;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v < 3)
        throw std::invalid_argument(
            "QADIC_MAX_P must be an integer >= 3, got: " + std::string(env));
    return static_cast<std::uint64_t>(v);
}

// "3..199" -> {3, 199}
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("range must look like MIN..MAX, got: " + text);
    std::size_t used = 0;
    const std::string lo = text.substr(0, sep), hi = text.substr(sep + 2);
    const std::uint64_t p_min = std::stoull(lo, &used);
    if (used != lo.size()) throw std::invalid_argument("bad range bound: " + lo);
    const std::uint64_t p_max = std::stoull(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("bad range bound: " + hi);
    return {p_min, p_max};
}

// Writes to the path, or to stdout for "-".
void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::string read_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string mpz_str(const mpz_class& v, bool hex) {
    return hex ? "0x" + v.get_str(16) : v.get_str();
}

int run_gen(std::uint64_t p, const std::string& format, const std::string& out_path) {
    const qadic::OddPrimeParam prime(p, max_prime_limit());
    const qadic::QuaternarySequence seq = qadic::generate_sequence(prime);

    if (format == "text") {
        write_output(out_path, qadic::sequence_to_text(seq) + "\n");
    } else {
        nlohmann::ordered_json doc;
        doc["p"] = seq.p;
        doc["symbols"] = seq.symbols;
        write_output(out_path, doc.dump(2) + "\n");
    }
    return exit_ok;
}

int run_complexity(std::optional<std::uint64_t> p_flag,
                   const std::string& input_path, unsigned long m, bool as_json) {
    const std::uint64_t limit = max_prime_limit();

    qadic::QuaternarySequence seq;
    if (p_flag) {
        seq = qadic::generate_sequence(qadic::OddPrimeParam(*p_flag, limit));
    } else {
        const std::string text = read_input_file(input_path);
        std::string_view body = text;
        if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
        if (body.empty() || body.size() % 2 != 0)
            throw std::invalid_argument(
                "sequence file length must be 2p for an odd prime p, got length " +
                std::to_string(body.size()));
        seq = qadic::sequence_from_text(
            text, qadic::OddPrimeParam(body.size() / 2, limit));
    }

    const qadic::ComplexityResult res = qadic::adic_complexity(seq, m);

    if (as_json) {
        nlohmann::ordered_json doc;
        doc["p"] = seq.p;
        doc["N"] = res.n_period;
        doc["m"] = res.m;
        doc["s_value"] = res.s_value.get_str();
        doc["d"] = res.d.get_str();
        doc["exact_form"] = res.exact_form();
        doc["approx_bits"] = res.approx_bits;
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << "N = " << res.n_period << "\n"
                  << "d = " << res.d.get_str() << "\n"
                  << "complexity = " << res.exact_form() << "\n"
                  << "approx_bits = " << res.approx_bits << "\n";
    }
    return exit_ok;
}

int run_verify(const std::string& range, const std::string& format,
               const std::string& out_path, unsigned workers) {
    const auto [p_min, p_max] = parse_range(range);
    const std::vector<qadic::ReportRow> rows =
        qadic::verify_range(p_min, p_max, workers, max_prime_limit());

    std::ostringstream report;
    if (format == "csv")
        qadic::write_report_csv(report, rows);
    else
        qadic::write_report_json(report, rows);
    write_output(out_path, report.str());

    const qadic::ReportSummary summary = qadic::summarize(rows);
    std::ostream& console = out_path == "-" ? std::cerr : std::cout;
    console << "verified " << summary.rows << " primes in [" << p_min << ", "
            << p_max << "]: " << (summary.rows - summary.failures) << " ok, "
            << summary.failures << " discrepancies\n";
    return summary.all_ok() ? exit_ok : exit_discrepancy;
}

int run_lemma_check(std::uint64_t p, bool hex) {
    const qadic::OddPrimeParam prime(p, max_prime_limit());

    const mpz_class s = qadic::s_a(qadic::generate_sequence(prime), 4);
    const qadic::RingElement closed = qadic::s_a_closed_form(prime);
    const qadic::RingElement g = qadic::gauss_sum(prime);
    const bool part1 = qadic::check_s_a_closed_form(prime);
    const bool part2 = qadic::check_gauss_square(prime);

    std::cout << "p = " << prime.p << ", N = " << prime.n_period << "\n"
              << "S_A(4)      = " << mpz_str(s, hex) << "\n"
              << "closed_form = " << mpz_str(closed.value(), hex) << "\n"
              << "G_p         = " << mpz_str(g.value(), hex) << "\n"
              << "G_p^2       = " << mpz_str((g * g).value(), hex) << "\n"
              << "lemma2_1 = " << (part1 ? "true" : "false") << "\n"
              << "lemma2_2 = " << (part2 ? "true" : "false") << "\n";
    return part1 && part2 ? exit_ok : exit_discrepancy;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternary cyclotomic sequences of period 2p: generation, "
                 "exact m-adic complexity, and congruence verification"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate the period-2p sequence");
    std::uint64_t gen_p = 0;
    std::string gen_format = "text";
    std::string gen_out = "-";
    gen->add_option("--p", gen_p, "odd prime p")->required();
    gen->add_option("--format", gen_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    gen->add_option("--out", gen_out, "output path, - for stdout");

    // complexity
    auto* cpx = app.add_subcommand("complexity", "exact m-adic complexity");
    std::uint64_t cpx_p = 0;
    std::string cpx_in;
    unsigned long cpx_m = 4;
    bool cpx_json = false;
    auto* cpx_p_opt = cpx->add_option("--p", cpx_p, "odd prime p (self-generate)");
    auto* cpx_in_opt =
        cpx->add_option("input", cpx_in, "sequence text file (digits 0..3)");
    cpx->add_option("--m", cpx_m, "base m >= 2")->check(CLI::Range(2ul, 1000000ul));
    cpx->add_flag("--json", cpx_json, "machine-readable output");
    cpx_p_opt->excludes(cpx_in_opt);

    // verify
    auto* ver = app.add_subcommand(
        "verify", "verify the complexity claims over a prime range");
    std::string ver_range = "3..199";
    std::string ver_format = "csv";
    std::string ver_out = "-";
    unsigned ver_workers = 1;
    ver->add_option("--range", ver_range, "prime range MIN..MAX (default 3..199)");
    ver->add_option("--format", ver_format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    ver->add_option("--out", ver_out, "report path, - for stdout");
    ver->add_option("--workers", ver_workers, "parallel workers (default 1)")
        ->check(CLI::Range(1u, 256u));

    // lemma-check
    auto* lem = app.add_subcommand(
        "lemma-check", "print the ring values behind the congruence identities");
    std::uint64_t lem_p = 0;
    bool lem_hex = false;
    lem->add_option("--p", lem_p, "odd prime p")->required();
    lem->add_flag("--hex", lem_hex, "print ring values in hex");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_usage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_p, gen_format, gen_out);
        if (cpx->parsed()) {
            if (!*cpx_p_opt && !*cpx_in_opt)
                throw std::invalid_argument(
                    "complexity needs a sequence file or --p");
            return run_complexity(
                *cpx_p_opt ? std::optional<std::uint64_t>(cpx_p) : std::nullopt,
                cpx_in, cpx_m, cpx_json);
        }
        if (ver->parsed()) return run_verify(ver_range, ver_format, ver_out, ver_workers);
        if (lem->parsed()) return run_lemma_check(lem_p, lem_hex);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
