#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "egz/moment.hpp"
#include "egz/sampler.hpp"
#include "egz/sequence_io.hpp"
#include "egz/verifier.hpp"

namespace egz {

/// A self-contained, independently re-checkable witness: the sequence plus
/// everything needed to (a) re-run the verifier on it and (b) regenerate it
/// from (seed, attempt_index).
struct WitnessCertificate {
    std::int64_t format_version = 1;
    GroupParams params;
    Rational q;
    std::uint64_t seed = 0;
    std::int64_t attempt_index = 0;
    std::int64_t sequence_length = 0; // N
    GSequence sequence;
    Method verifier_method = Method::enumeration;
    bool verified_no_zero_sum = false;
    std::int64_t subsequence_length = 0; // L = k*n
};

inline nlohmann::ordered_json certificate_to_json(const WitnessCertificate& cert) {
    nlohmann::ordered_json doc;
    doc["format_version"] = cert.format_version;
    doc["params"] = {{"n", cert.params.n}, {"r", cert.params.r}, {"k", cert.params.k}};
    doc["q"] = fraction_string(cert.q);
    doc["seed"] = cert.seed;
    doc["attempt_index"] = cert.attempt_index;
    doc["N"] = cert.sequence_length;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ZVector& v : cert.sequence.items()) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::uint32_t c : v) row.push_back(c);
        rows.push_back(std::move(row));
    }
    doc["sequence"] = std::move(rows);
    doc["verifier_method"] = method_name(cert.verifier_method);
    doc["verified_no_zero_sum"] = cert.verified_no_zero_sum;
    doc["subsequence_length"] = cert.subsequence_length;
    return doc;
}

inline std::string certificate_to_string(const WitnessCertificate& cert) {
    return certificate_to_json(cert).dump(2) + "\n";
}

inline WitnessCertificate certificate_from_json(const nlohmann::json& doc) {
    try {
        WitnessCertificate cert;
        cert.format_version = doc.at("format_version").get<std::int64_t>();
        if (cert.format_version != 1)
            throw InputError("certificate: unsupported format_version " +
                             std::to_string(cert.format_version));
        const auto& p = doc.at("params");
        cert.params = GroupParams(p.at("n").get<std::int64_t>(), p.at("r").get<std::int64_t>(),
                                  p.at("k").get<std::int64_t>());
        cert.q = parse_rational(doc.at("q").get<std::string>());
        if (cert.q < 0 || cert.q > 1) throw InputError("certificate: q outside [0, 1]");
        cert.seed = doc.at("seed").get<std::uint64_t>();
        cert.attempt_index = doc.at("attempt_index").get<std::int64_t>();
        cert.sequence_length = doc.at("N").get<std::int64_t>();
        std::vector<ZVector> items;
        for (const auto& row : doc.at("sequence")) {
            std::vector<long long> vals;
            for (const auto& x : row) vals.push_back(x.get<long long>());
            items.push_back(reduce_row(vals, cert.params.n));
        }
        cert.sequence = GSequence(cert.params, std::move(items));
        if (static_cast<std::int64_t>(cert.sequence.size()) != cert.sequence_length)
            throw InputError("certificate: N does not match the number of sequence rows");
        cert.verifier_method = parse_method(doc.at("verifier_method").get<std::string>());
        cert.verified_no_zero_sum = doc.at("verified_no_zero_sum").get<bool>();
        cert.subsequence_length = doc.at("subsequence_length").get<std::int64_t>();
        if (cert.subsequence_length != cert.params.subsequence_length())
            throw InputError("certificate: subsequence_length does not equal k*n");
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("certificate: malformed document: ") + e.what());
    }
}

inline WitnessCertificate read_certificate_file(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError("certificate: invalid JSON in " + path + ": " + e.what());
    }
    return certificate_from_json(doc);
}

struct WitnessSearchResult {
    std::optional<WitnessCertificate> certificate; // engaged on success
    std::int64_t attempts_tried = 0;
    // Engaged on failure: exact E[Z], the first-moment bound on the
    // per-attempt failure probability.
    std::optional<Rational> expected_count;

    bool success() const { return certificate.has_value(); }
};

namespace detail {

inline std::optional<WitnessCertificate> try_attempt(const SamplerConfig& config,
                                                     std::int64_t attempt,
                                                     const VerifierOptions& vopts) {
    const std::int64_t L = config.params.subsequence_length();
    GSequence seq = sample_sequence(config, attempt);
    Method method = Method::enumeration;
    bool free_of_zero_sum;
    if (config.length < L) {
        free_of_zero_sum = true; // vacuous: no length-L subsequence exists
    } else {
        VerifyReport report = has_zero_sum_subsequence(seq, L, vopts);
        method = report.method;
        free_of_zero_sum = !report.has_zero_sum;
    }
    if (!free_of_zero_sum) return std::nullopt;
    WitnessCertificate cert;
    cert.params = config.params;
    cert.q = config.q;
    cert.seed = config.seed;
    cert.attempt_index = attempt;
    cert.sequence_length = config.length;
    cert.sequence = std::move(seq);
    cert.verifier_method = method;
    cert.verified_no_zero_sum = true;
    cert.subsequence_length = L;
    return cert;
}

} // namespace detail

/// Samples attempts 0, 1, ... and returns the certificate for the lowest
/// attempt index whose sequence has no zero-sum kn-subsequence. Attempts
/// are independent, so they may run on several threads; the lowest-index
/// rule keeps the result identical under any schedule.
inline WitnessSearchResult find_witness(const SamplerConfig& config,
                                        const VerifierOptions& vopts = {}, int threads = 1) {
    WitnessSearchResult result;
    const std::int64_t attempts = config.max_attempts;
    if (threads <= 1) {
        for (std::int64_t a = 0; a < attempts; ++a) {
            auto cert = detail::try_attempt(config, a, vopts);
            result.attempts_tried = a + 1;
            if (cert) {
                result.certificate = std::move(cert);
                return result;
            }
        }
    } else {
        std::atomic<std::int64_t> next{0};
        std::atomic<std::int64_t> best{attempts};
        std::mutex mu;
        std::map<std::int64_t, WitnessCertificate> winners;
        std::exception_ptr error;
        auto worker = [&]() {
            while (true) {
                const std::int64_t a = next.fetch_add(1);
                if (a >= attempts || a > best.load()) return;
                try {
                    auto cert = detail::try_attempt(config, a, vopts);
                    if (cert) {
                        std::int64_t cur = best.load();
                        while (a < cur && !best.compare_exchange_weak(cur, a)) {
                        }
                        std::lock_guard<std::mutex> lock(mu);
                        winners.emplace(a, std::move(*cert));
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                    best.store(-1); // stop everyone
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
        const std::int64_t won = best.load();
        if (won < attempts) {
            result.attempts_tried = won + 1;
            result.certificate = std::move(winners.at(won));
            return result;
        }
        result.attempts_tried = attempts;
    }
    result.attempts_tried = attempts;
    result.expected_count =
        expected_zero_sum_count(config.params, config.q, config.length).expected_count;
    return result;
}

} // namespace egz
