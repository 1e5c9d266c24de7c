// Command-line front end: every library operation behind one binary.
//
// Exit codes: 0 success / clean verification, 1 witness-search failure or
// certificate mismatch, 2 input or parse errors, 3 resource-budget errors.
// Error text goes to stderr only; --json emits exactly one JSON document
// on stdout per run.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "egz/egz.hpp"

namespace {

using nlohmann::ordered_json;

int default_threads() {
    if (const char* env = std::getenv("EGZ_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t >= 1) return t;
        } catch (...) {
        }
    }
    return 1;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

ordered_json sequence_rows(const egz::GSequence& seq) {
    ordered_json rows = ordered_json::array();
    for (const egz::ZVector& v : seq.items()) {
        ordered_json row = ordered_json::array();
        for (std::uint32_t c : v) row.push_back(c);
        rows.push_back(std::move(row));
    }
    return rows;
}

struct CommonFlags {
    bool json = false;
    int threads = default_threads();
};

void add_json_flag(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_flag("--json", flags.json, "machine-readable output: one JSON document");
}

constexpr const char* kAsymptoticNote = "asymptotic reference, not a guarantee at finite n";

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    CommonFlags common;
    std::string certificate_path;
    std::string sequence_path;
    std::int64_t length = -1;
    std::string method;
    std::uint64_t state_budget = egz::VerifierOptions{}.state_budget;
};

int run_verify(const VerifyArgs& args) {
    egz::VerifierOptions vopts;
    vopts.state_budget = args.state_budget;
    if (!args.method.empty()) vopts.method = egz::parse_method(args.method);

    if (!args.certificate_path.empty()) {
        egz::WitnessCertificate cert = egz::read_certificate_file(args.certificate_path);
        const std::int64_t L = cert.subsequence_length;
        bool recomputed_free;
        std::string method_used = "enumeration";
        if (cert.sequence_length < L) {
            recomputed_free = true; // vacuous: no length-L subsequence exists
        } else {
            egz::VerifyReport report = egz::has_zero_sum_subsequence(cert.sequence, L, vopts);
            recomputed_free = !report.has_zero_sum;
            method_used = egz::method_name(report.method);
        }
        egz::SamplerConfig config(cert.params, cert.q, cert.sequence_length, cert.seed,
                                  cert.attempt_index + 1);
        egz::GSequence regenerated = egz::sample_sequence(config, cert.attempt_index);
        const bool reproducible = regenerated.items() == cert.sequence.items();
        const bool verdict_ok = recomputed_free == cert.verified_no_zero_sum;
        const bool consistent = reproducible && verdict_ok;
        if (args.common.json) {
            ordered_json doc;
            doc["command"] = "verify";
            doc["mode"] = "certificate";
            doc["n"] = cert.params.n;
            doc["r"] = cert.params.r;
            doc["k"] = cert.params.k;
            doc["q"] = egz::fraction_string(cert.q);
            doc["N"] = cert.sequence_length;
            doc["subsequence_length"] = L;
            doc["claimed_no_zero_sum"] = cert.verified_no_zero_sum;
            doc["recomputed_no_zero_sum"] = recomputed_free;
            doc["method"] = method_used;
            doc["sequence_reproducible"] = reproducible;
            doc["certificate_consistent"] = consistent;
            emit(doc);
        } else {
            std::cout << "mode: certificate\n"
                      << "params: n=" << cert.params.n << " r=" << cert.params.r
                      << " k=" << cert.params.k << "\n"
                      << "q: " << egz::fraction_string(cert.q) << "\n"
                      << "N: " << cert.sequence_length << "\n"
                      << "subsequence_length: " << L << "\n"
                      << "claimed_no_zero_sum: " << (cert.verified_no_zero_sum ? "true" : "false")
                      << "\n"
                      << "recomputed_no_zero_sum: " << (recomputed_free ? "true" : "false") << "\n"
                      << "method: " << method_used << "\n"
                      << "sequence_reproducible: " << (reproducible ? "true" : "false") << "\n"
                      << "certificate_consistent: " << (consistent ? "true" : "false") << "\n";
        }
        return consistent ? 0 : 1;
    }

    // bare sequence + --length
    if (args.length < 0) throw egz::InputError("verify: --length is required with --sequence");
    egz::GSequence seq = egz::sequence_from_text(egz::read_text_file(args.sequence_path));
    egz::VerifyReport report = egz::has_zero_sum_subsequence(seq, args.length, vopts);
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "verify";
        doc["mode"] = "sequence";
        doc["n"] = seq.params().n;
        doc["r"] = seq.params().r;
        doc["N"] = static_cast<std::int64_t>(seq.size());
        doc["length"] = args.length;
        doc["has_zero_sum"] = report.has_zero_sum;
        if (report.witness_indices) {
            ordered_json w = ordered_json::array();
            for (std::size_t ix : *report.witness_indices) w.push_back(ix);
            doc["witness"] = std::move(w);
        } else {
            doc["witness"] = nullptr;
        }
        doc["method"] = egz::method_name(report.method);
        doc["states_explored"] = report.states_explored;
        emit(doc);
    } else {
        std::cout << "mode: sequence\n"
                  << "params: n=" << seq.params().n << " r=" << seq.params().r << "\n"
                  << "N: " << seq.size() << "\n"
                  << "length: " << args.length << "\n"
                  << "has_zero_sum: " << (report.has_zero_sum ? "true" : "false") << "\n";
        if (report.witness_indices) {
            std::cout << "witness:";
            for (std::size_t ix : *report.witness_indices) std::cout << ' ' << ix;
            std::cout << "\n";
        }
        std::cout << "method: " << egz::method_name(report.method) << "\n"
                  << "states_explored: " << report.states_explored << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
    CommonFlags common;
    std::int64_t n = 0, r = 0, k = 0;
    std::string q;
    std::int64_t N = -1;
    std::uint64_t seed = 0;
    std::int64_t attempts = 100;
    std::int64_t budget = 1000;
    std::string out;
};

int run_sample(const SampleArgs& args) {
    egz::GroupParams params(args.n, args.r, args.k);
    egz::Rational q;
    if (!args.q.empty()) {
        q = egz::parse_rational(args.q);
    } else {
        q = egz::optimize_q(params, args.budget).q;
    }
    std::int64_t N = args.N;
    if (N < 0) N = egz::max_admissible_sequence_length(params, q);
    egz::SamplerConfig config(params, q, N, args.seed, args.attempts);
    egz::WitnessSearchResult result = egz::find_witness(config, {}, args.common.threads);

    if (result.success()) {
        const egz::WitnessCertificate& cert = *result.certificate;
        const std::string text = egz::certificate_to_string(cert);
        if (!args.out.empty()) egz::write_text_file(args.out, text);
        if (args.common.json) {
            ordered_json doc;
            doc["command"] = "sample";
            doc["status"] = "success";
            doc["q"] = egz::fraction_string(q);
            doc["N"] = N;
            doc["seed"] = args.seed;
            doc["attempt_index"] = cert.attempt_index;
            doc["attempts_tried"] = result.attempts_tried;
            doc["verifier_method"] = egz::method_name(cert.verifier_method);
            if (!args.out.empty())
                doc["certificate_path"] = args.out;
            else
                doc["certificate"] = egz::certificate_to_json(cert);
            emit(doc);
        } else {
            std::cout << "status: success\n"
                      << "q: " << egz::fraction_string(q) << "\n"
                      << "N: " << N << "\n"
                      << "seed: " << args.seed << "\n"
                      << "attempt_index: " << cert.attempt_index << "\n"
                      << "attempts_tried: " << result.attempts_tried << "\n"
                      << "verifier_method: " << egz::method_name(cert.verifier_method) << "\n";
            if (!args.out.empty())
                std::cout << "certificate: " << args.out << "\n";
            else
                std::cout << text;
        }
        return 0;
    }
    const std::string ez = egz::fraction_string(*result.expected_count);
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "sample";
        doc["status"] = "failure";
        doc["q"] = egz::fraction_string(q);
        doc["N"] = N;
        doc["seed"] = args.seed;
        doc["attempts_tried"] = result.attempts_tried;
        doc["expected_Z"] = ez;
        emit(doc);
    } else {
        std::cout << "status: failure\n"
                  << "q: " << egz::fraction_string(q) << "\n"
                  << "N: " << N << "\n"
                  << "attempts_tried: " << result.attempts_tried << "\n"
                  << "expected_Z: " << ez << "\n";
    }
    return 1;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
    CommonFlags common;
    std::int64_t n = 0, r = 0, k = 0;
    std::string q;
    std::int64_t budget = 1000;
};

int run_bound(const BoundArgs& args) {
    egz::GroupParams params(args.n, args.r, args.k);
    egz::Rational q = args.q.empty() ? egz::optimize_q(params, args.budget).q
                                     : egz::parse_rational(args.q);
    egz::Rational Q = egz::coordinate_zero_prob(params, q);
    std::int64_t maxN = egz::max_admissible_sequence_length(params, q);
    egz::Rational ez = egz::expected_zero_sum_count(params, q, maxN).expected_count;
    const double reference = egz::asymptotic_reference_bound(params);
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "bound";
        doc["n"] = params.n;
        doc["r"] = params.r;
        doc["k"] = params.k;
        doc["q"] = egz::fraction_string(q);
        doc["Q"] = egz::fraction_string(Q);
        doc["max_admissible_N"] = maxN;
        doc["expected_Z_at_max_admissible_N"] = egz::fraction_string(ez);
        doc["asymptotic_reference"] = egz::decimal_string(reference);
        doc["asymptotic_reference_note"] = kAsymptoticNote;
        emit(doc);
    } else {
        std::cout << "params: n=" << params.n << " r=" << params.r << " k=" << params.k << "\n"
                  << "q: " << egz::fraction_string(q) << "\n"
                  << "Q: " << egz::fraction_string(Q) << "\n"
                  << "max_admissible_N: " << maxN << "\n"
                  << "expected_Z_at_max_admissible_N: " << egz::fraction_string(ez) << "\n"
                  << "asymptotic_reference: " << egz::decimal_string(reference) << " ("
                  << kAsymptoticNote << ")\n";
    }
    return 0;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
    CommonFlags common;
    std::int64_t n = 0, r = 0, k = 0;
    std::int64_t budget = 1000;
};

int run_optimize(const OptimizeArgs& args) {
    egz::GroupParams params(args.n, args.r, args.k);
    egz::OptimizeResult result = egz::optimize_q(params, args.budget);
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "optimize";
        doc["n"] = params.n;
        doc["r"] = params.r;
        doc["k"] = params.k;
        doc["budget"] = args.budget;
        doc["q_star"] = egz::fraction_string(result.q);
        doc["N_star"] = result.max_length;
        emit(doc);
    } else {
        std::cout << "q_star: " << egz::fraction_string(result.q) << "\n"
                  << "N_star: " << result.max_length << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
    CommonFlags common;
    std::int64_t n = 0, r = 0, k = 0;
    std::int64_t cap = 0;
    std::uint64_t work_budget = egz::OracleOptions{}.work_budget;
};

int run_oracle(const OracleArgs& args) {
    egz::GroupParams params(args.n, args.r, args.k);
    egz::OracleOptions opts;
    opts.work_budget = args.work_budget;
    egz::OracleResult result = egz::egz_constant(params, args.cap, opts);
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "oracle";
        doc["n"] = params.n;
        doc["r"] = params.r;
        doc["k"] = params.k;
        doc["cap"] = result.cap;
        doc["status"] = result.exact ? "exact" : "exceeds_cap";
        if (result.exact)
            doc["value"] = result.value;
        else
            doc["value"] = nullptr;
        doc["extremal_length"] = static_cast<std::int64_t>(result.extremal_sequence.size());
        doc["extremal_sequence"] = sequence_rows(result.extremal_sequence);
        doc["work_counter"] = result.work_counter;
        emit(doc);
    } else {
        std::cout << "params: n=" << params.n << " r=" << params.r << " k=" << params.k << "\n"
                  << "cap: " << result.cap << "\n";
        if (result.exact)
            std::cout << "value: " << result.value << "\n";
        else
            std::cout << "value: exceeds cap\n";
        std::cout << "work_counter: " << result.work_counter << "\n"
                  << "extremal_length: " << result.extremal_sequence.size() << "\n"
                  << "extremal_sequence:\n"
                  << egz::sequence_to_text(result.extremal_sequence);
    }
    return 0;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    CommonFlags common;
    std::int64_t n = 0, r = 0, k = 0;
    std::string q;
    std::int64_t N = 0;
    std::int64_t trials = 10000;
    std::uint64_t seed = 0;
};

int run_estimate(const EstimateArgs& args) {
    egz::GroupParams params(args.n, args.r, args.k);
    egz::Rational q = egz::parse_rational(args.q);
    if (args.trials < 2) throw egz::InputError("estimate: --trials must be >= 2");
    const std::int64_t L = params.subsequence_length();
    egz::SamplerConfig config(params, q, args.N, args.seed, args.trials);
    egz::BigInt sum = 0, sum_sq = 0;
    for (std::int64_t t = 0; t < args.trials; ++t) {
        egz::GSequence seq = egz::sample_sequence(config, t);
        egz::BigInt z = 0;
        if (args.N >= L) z = egz::count_zero_sum_subsequences(seq, L).total;
        sum += z;
        sum_sq += z * z;
    }
    const egz::BigInt T(args.trials);
    egz::Rational mean(sum, T);
    mean.canonicalize();
    egz::Rational se_sq(T * sum_sq - sum * sum, T * T * (T - 1));
    se_sq.canonicalize();
    egz::Rational exact = egz::expected_zero_sum_count(params, q, args.N).expected_count;
    egz::Rational dev = mean - exact;
    const bool within = dev * dev <= egz::Rational(16) * se_sq;
    const double se = std::sqrt(se_sq.get_d());
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "estimate";
        doc["n"] = params.n;
        doc["r"] = params.r;
        doc["k"] = params.k;
        doc["q"] = egz::fraction_string(q);
        doc["N"] = args.N;
        doc["trials"] = args.trials;
        doc["seed"] = args.seed;
        doc["exact_expected_Z"] = egz::fraction_string(exact);
        doc["sample_mean"] = egz::fraction_string(mean);
        doc["standard_error_squared"] = egz::fraction_string(se_sq);
        doc["within_4_standard_errors"] = within;
        doc["sample_mean_display"] = egz::decimal_string(mean.get_d());
        doc["standard_error_display"] = egz::decimal_string(se);
        emit(doc);
    } else {
        std::cout << "trials: " << args.trials << "\n"
                  << "seed: " << args.seed << "\n"
                  << "exact_expected_Z: " << egz::fraction_string(exact) << " (~"
                  << egz::decimal_string(exact.get_d()) << ")\n"
                  << "sample_mean: " << egz::fraction_string(mean) << " (~"
                  << egz::decimal_string(mean.get_d()) << ")\n"
                  << "standard_error: " << egz::decimal_string(se) << "\n"
                  << "within_4_standard_errors: " << (within ? "true" : "false") << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- harborth

struct HarborthArgs {
    CommonFlags common;
    std::int64_t p = 0, r = 0;
    bool check = false;
    std::string out;
};

int run_harborth(const HarborthArgs& args) {
    egz::GSequence seq = egz::harborth_construction(args.p, args.r);
    bool has_zero_sum = false;
    if (args.check)
        has_zero_sum = egz::has_zero_sum_subsequence(seq, args.p).has_zero_sum;
    const std::string text = egz::sequence_to_text(seq);
    if (!args.out.empty()) egz::write_text_file(args.out, text);
    if (args.common.json) {
        ordered_json doc;
        doc["command"] = "harborth";
        doc["p"] = args.p;
        doc["r"] = args.r;
        doc["length"] = static_cast<std::int64_t>(seq.size());
        doc["checked"] = args.check;
        if (args.check)
            doc["has_zero_sum"] = has_zero_sum;
        else
            doc["has_zero_sum"] = nullptr;
        if (!args.out.empty())
            doc["sequence_path"] = args.out;
        else
            doc["sequence"] = sequence_rows(seq);
        emit(doc);
    } else {
        std::cout << "p: " << args.p << "\n"
                  << "r: " << args.r << "\n"
                  << "length: " << seq.size() << "\n";
        if (args.check)
            std::cout << "has_zero_sum: " << (has_zero_sum ? "true" : "false") << "\n";
        if (!args.out.empty())
            std::cout << "sequence: " << args.out << "\n";
        else
            std::cout << text;
    }
    return args.check && has_zero_sum ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-sum subsequence bounds over C_n^r: exact first moments, "
                 "certified random witnesses, brute-force constants"};
    app.require_subcommand(1);
    int rc = 0;

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "re-check a certificate or a sequence file");
    verify->add_option("--certificate", verify_args.certificate_path, "certificate JSON file");
    verify->add_option("--sequence", verify_args.sequence_path, "sequence text file");
    verify->add_option("--length", verify_args.length, "subsequence length L for --sequence");
    verify->add_option("--method", verify_args.method, "force verifier method: enumeration|dp");
    verify->add_option("--state-budget", verify_args.state_budget, "DP state budget");
    add_json_flag(verify, verify_args.common);
    verify->callback([&]() {
        if (verify_args.certificate_path.empty() == verify_args.sequence_path.empty())
            throw egz::InputError("verify: exactly one of --certificate or --sequence");
        rc = run_verify(verify_args);
    });

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "search for a certified witness sequence");
    sample->add_option("--n", sample_args.n, "modulus")->required();
    sample->add_option("--r", sample_args.r, "rank")->required();
    sample->add_option("--k", sample_args.k, "length multiplier")->required();
    sample->add_option("--q", sample_args.q, "Bernoulli parameter num/den (default: optimized)");
    sample->add_option("--N", sample_args.N, "sequence length (default: max admissible)");
    sample->add_option("--seed", sample_args.seed, "RNG seed");
    sample->add_option("--attempts", sample_args.attempts, "maximum attempts");
    sample->add_option("--budget", sample_args.budget, "denominator budget for optimized q");
    sample->add_option("--out", sample_args.out, "write the certificate to this file");
    sample->add_option("--threads", sample_args.common.threads,
                       "parallel attempts (default: EGZ_THREADS or 1)");
    add_json_flag(sample, sample_args.common);
    sample->callback([&]() { rc = run_sample(sample_args); });

    BoundArgs bound_args;
    CLI::App* bound = app.add_subcommand("bound", "exact Q, E[Z] and the admissible length");
    bound->add_option("--n", bound_args.n, "modulus")->required();
    bound->add_option("--r", bound_args.r, "rank")->required();
    bound->add_option("--k", bound_args.k, "length multiplier")->required();
    bound->add_option("--q", bound_args.q, "Bernoulli parameter num/den (default: optimized)");
    bound->add_option("--budget", bound_args.budget, "denominator budget for optimized q");
    add_json_flag(bound, bound_args.common);
    bound->callback([&]() { rc = run_bound(bound_args); });

    OptimizeArgs optimize_args;
    CLI::App* optimize = app.add_subcommand("optimize", "grid-search q maximizing the bound");
    optimize->add_option("--n", optimize_args.n, "modulus")->required();
    optimize->add_option("--r", optimize_args.r, "rank")->required();
    optimize->add_option("--k", optimize_args.k, "length multiplier")->required();
    optimize->add_option("--budget", optimize_args.budget, "denominator budget");
    add_json_flag(optimize, optimize_args.common);
    optimize->callback([&]() { rc = run_optimize(optimize_args); });

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force the exact constant (tiny cases)");
    oracle->add_option("--n", oracle_args.n, "modulus")->required();
    oracle->add_option("--r", oracle_args.r, "rank")->required();
    oracle->add_option("--k", oracle_args.k, "length multiplier")->required();
    oracle->add_option("--cap", oracle_args.cap, "search cap")->required();
    oracle->add_option("--work-budget", oracle_args.work_budget, "verifier-call budget");
    add_json_flag(oracle, oracle_args.common);
    oracle->callback([&]() { rc = run_oracle(oracle_args); });

    EstimateArgs estimate_args;
    CLI::App* estimate = app.add_subcommand("estimate", "Monte Carlo mean of Z vs exact E[Z]");
    estimate->add_option("--n", estimate_args.n, "modulus")->required();
    estimate->add_option("--r", estimate_args.r, "rank")->required();
    estimate->add_option("--k", estimate_args.k, "length multiplier")->required();
    estimate->add_option("--q", estimate_args.q, "Bernoulli parameter num/den")->required();
    estimate->add_option("--N", estimate_args.N, "sequence length")->required();
    estimate->add_option("--trials", estimate_args.trials, "number of sampled sequences");
    estimate->add_option("--seed", estimate_args.seed, "RNG seed");
    add_json_flag(estimate, estimate_args.common);
    estimate->callback([&]() { rc = run_estimate(estimate_args); });

    HarborthArgs harborth_args;
    CLI::App* harborth = app.add_subcommand("harborth", "emit the deterministic construction");
    harborth->add_option("--p", harborth_args.p, "modulus")->required();
    harborth->add_option("--r", harborth_args.r, "rank")->required();
    harborth->add_flag("--check", harborth_args.check, "verify no zero-sum p-subsequence");
    harborth->add_option("--out", harborth_args.out, "write the sequence to this file");
    add_json_flag(harborth, harborth_args.common);
    harborth->callback([&]() { rc = run_harborth(harborth_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const egz::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const egz::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
