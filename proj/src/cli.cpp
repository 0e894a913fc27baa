#include "romanoff/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "romanoff/analysis.hpp"
#include "romanoff/covering.hpp"
#include "romanoff/errors.hpp"
#include "romanoff/fib.hpp"
#include "romanoff/numtheory.hpp"
#include "romanoff/parallel.hpp"
#include "romanoff/pisano.hpp"
#include "romanoff/represent.hpp"

namespace romanoff::cli {

namespace {

using json = nlohmann::ordered_json;

// The 16 period claims checked by `verify periods`, aligned with primes_m.
constexpr std::array<u64, 16> kClaimedPeriods = {3,   8,  16,  36,    18,   32,   72,   256,
                                                 128, 64, 128, 12288, 6144, 2048, 1024, 512};

unsigned resolve_threads(unsigned flag_value) {
    if (const char* env = std::getenv("ROMANOFF_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return flag_value == 0 ? default_thread_count() : flag_value;
}

std::function<void(u64, u64)> progress_sink(std::ostream& err, const std::string& label) {
    return [&err, label](u64 done, u64 total) {
        double pct = total == 0 ? 100.0 : 100.0 * static_cast<double>(done) / static_cast<double>(total);
        err << label << ": " << std::fixed << std::setprecision(1) << pct << "% (" << done << "/"
            << total << ")\n"
            << std::defaultfloat;
    };
}

struct Job {
    std::string command;
    json parameters = json::object();
    json payload = json::object();
    bool pass = true;
    bool errored = false;
};

int emit(const Job& job, std::ostream& out,
         std::chrono::steady_clock::time_point start) {
    using namespace std::chrono;
    json report = json::object();
    report["command"] = job.command;
    report["parameters"] = job.parameters;
    report["status"] = job.errored ? "error" : (job.pass ? "pass" : "fail");
    report["payload"] = job.payload;
    report["elapsed_ms"] = duration_cast<milliseconds>(steady_clock::now() - start).count();
    out << report.dump(2) << "\n";
    if (job.errored) return 1;
    return job.pass ? 0 : 1;
}

json pair_list(const std::vector<ClassPair>& pairs) {
    json list = json::array();
    for (const ClassPair& p : pairs) list.push_back(json::array({p.a, p.b}));
    return list;
}

void run_verify_periods(Job& job) {
    const CoveringConstants& c = load_constants();
    json table = json::array();
    bool all_ok = true;
    for (unsigned j = 0; j < 16; ++j) {
        u64 computed = pisano_period(c.primes_m[j]);
        bool ok = computed == kClaimedPeriods[j];
        all_ok = all_ok && ok;
        table.push_back(json{{"q", c.primes_m[j]},
                             {"expected", kClaimedPeriods[j]},
                             {"computed", computed},
                             {"ok", ok}});
    }
    job.payload["periods"] = table;
    job.payload["failures"] = all_ok ? 0 : 1;
    job.pass = all_ok;
}

void run_verify_constants(Job& job) {
    const CoveringConstants& c = load_constants(); // CRT + product integrity checks
    ConstantsReport r = constants_report();     // scalar assertions
    job.payload["m_decimal"] = c.m.get_str();
    job.payload["n0_decimal"] = c.n0.get_str();
    job.payload["p0_decimal"] = c.p0.get_str();
    job.payload["m1_decimal"] = c.m1.get_str();
    job.payload["alpha"] = r.alpha;
    job.payload["log_alpha"] = r.log_alpha;
    job.payload["inv_two_log_alpha"] = r.inv_two_log_alpha;
    job.payload["theorem3_margin"] = r.theorem3_margin;
    job.payload["euler_gamma"] = r.euler_gamma;
    job.payload["pi_sq_over_8"] = r.pi_sq_over_8;
    job.payload["margin_exceeds_2"] = r.theorem3_margin > 2.0;
    job.pass = true; // load_constants/constants_report throw on any mismatch
}

void run_verify_e2(Job& job) {
    Eq2Report report = verify_eq2_exclusion();
    job.payload["pairs_checked"] = report.pairs_checked;
    json bad = json::array();
    for (const auto& [a, b, rho] : report.counterexamples)
        bad.push_back(json::array({a, b, rho}));
    job.payload["counterexamples"] = bad;
    job.pass = report.ok();
}

void run_verify_theorem2(Job& job, u64 modulus, unsigned threads, std::ostream& err) {
    CoveringOptions options;
    options.threads = threads;
    options.progress = progress_sink(err, "theorem2 scan");
    CoveringReport report = verify_theorem2_covering(modulus, options);

    const CoveringConstants& c = load_constants();
    job.payload["check_modulus"] = report.check_modulus;
    job.payload["pairs_scanned"] = report.pairs_scanned;
    job.payload["allowed_pairs"] = report.allowed_pairs;
    json hist = json::object();
    json miss = json::object();
    for (unsigned j = 0; j < 16; ++j) {
        hist[std::to_string(c.primes_m[j])] = report.witness_histogram[j];
        miss[std::to_string(c.primes_m[j])] = report.allowed_miss_histogram[j];
    }
    job.payload["witness_histogram"] = hist;
    job.payload["failure_count"] = report.failure_count;
    job.payload["failures"] = pair_list(report.failures);
    job.payload["allowed_failure_count"] = report.allowed_failure_count;
    job.payload["allowed_failures"] = pair_list(report.allowed_failures);
    job.payload["allowed_miss_histogram"] = miss;
    job.payload["reduced_table_checked"] = report.reduced_table_checked;
    job.pass = report.valid();
}

void run_verify_theorem1(Job& job) {
    Theorem1Report report = verify_theorem1_extension();
    job.payload["u769"] = report.u769;
    job.payload["period_ok"] = report.period_ok;
    job.payload["congruence_ok"] = report.congruence_ok;
    job.payload["mod7_ok"] = report.mod7_ok;
    job.payload["coprime_ok"] = report.coprime_ok;
    job.payload["projection_ok"] = report.projection_ok;
    job.payload["n1_decimal"] = report.n1.get_str();
    job.payload["m1_decimal"] = report.m1.get_str();
    job.payload["failed_checks"] = report.failed_checks;
    job.pass = report.ok();
}

void run_verify_lemma2(Job& job, u64 k_max, unsigned threads) {
    std::vector<u64> max_count_per_worker(threads == 0 ? default_thread_count() : threads, 0);
    std::vector<double> max_ratio_per_worker(max_count_per_worker.size(), 0.0);
    std::vector<json> violations_per_worker(max_count_per_worker.size(), json::array());

    run_workers(static_cast<unsigned>(max_count_per_worker.size()), [&](unsigned w, unsigned nw) {
        for (u64 k = 1 + w; k <= k_max; k += nw) {
            const double bound = 4.0 * std::sqrt(static_cast<double>(k));
            for (u64 a = 0; a < k; ++a) {
                u64 count = count_sqrt_solutions(a, k);
                if (count > max_count_per_worker[w]) max_count_per_worker[w] = count;
                double ratio = static_cast<double>(count) / std::sqrt(static_cast<double>(k));
                if (ratio > max_ratio_per_worker[w]) max_ratio_per_worker[w] = ratio;
                if (static_cast<double>(count) > bound)
                    violations_per_worker[w].push_back(json::array({a, k, count}));
            }
        }
    });

    u64 max_count = 0;
    double max_ratio = 0.0;
    json violations = json::array();
    for (std::size_t w = 0; w < max_count_per_worker.size(); ++w) {
        max_count = std::max(max_count, max_count_per_worker[w]);
        max_ratio = std::max(max_ratio, max_ratio_per_worker[w]);
        for (const auto& v : violations_per_worker[w]) violations.push_back(v);
    }
    job.payload["k_max"] = k_max;
    job.payload["max_count"] = max_count;
    job.payload["max_ratio_to_sqrt_k"] = max_ratio;
    job.payload["violations"] = violations;
    job.pass = violations.empty();
}

void run_verify_lemma4(Job& job, u64 d_max) {
    std::vector<u64> checkpoints;
    for (u64 c : {u64{100}, u64{1000}, d_max})
        if (c <= d_max && (checkpoints.empty() || checkpoints.back() != c)) checkpoints.push_back(c);

    json list = json::array();
    bool monotone = true;
    bool below = true;
    double prev = -1.0;
    for (u64 c : checkpoints) {
        SeriesPartialSum s = lemma4_partial_sum(c);
        list.push_back(json{{"d_max", s.d_max}, {"value", s.value}, {"terms", s.terms_counted}});
        monotone = monotone && s.value >= prev;
        below = below && s.value < kSeriesBound;
        prev = s.value;
    }

    json envelope_violations = json::array();
    double worst = 0.0;
    for (u64 n = 7; n <= 60; ++n) {
        double value = period_restricted_sum(n);
        double env = period_sum_envelope(n);
        worst = std::max(worst, value / env);
        if (!(value < env)) envelope_violations.push_back(json{{"n", n}, {"value", value}, {"envelope", env}});
    }

    job.payload["checkpoints"] = list;
    job.payload["monotone"] = monotone;
    job.payload["below_bound"] = below;
    job.payload["bound"] = kSeriesBound;
    job.payload["envelope_violations"] = envelope_violations;
    job.payload["envelope_worst_ratio"] = worst;
    job.pass = monotone && below && envelope_violations.empty();
}

void run_verify_bd(Job& job, u64 p_max) {
    PrimeSieve sieve = sieve_primes(std::max<u64>(p_max, 2));
    u64 max_fiber = 0;
    u64 primes_checked = 0;
    json violations = json::array();
    for (u64 p = 2; p <= p_max; ++p) {
        if (!sieve.is_prime(p)) continue;
        ++primes_checked;
        std::vector<u64> hist = fib_residue_histogram(p);
        u64 total = 0;
        for (u64 c = 0; c < p; ++c) {
            total += hist[c];
            if (hist[c] > max_fiber) max_fiber = hist[c];
            if (hist[c] > 4) violations.push_back(json::array({p, c, hist[c]}));
        }
        if (total != pisano_period(p))
            violations.push_back(json{{"p", p}, {"error", "fiber sizes do not sum to the period"}});
    }
    job.payload["p_max"] = p_max;
    job.payload["primes_checked"] = primes_checked;
    job.payload["max_fiber"] = max_fiber;
    job.payload["violations"] = violations;
    job.pass = violations.empty();
}

void run_sieve_json(Job& job, u64 limit, u64 prefix_cap, unsigned threads, std::ostream& err) {
    RepresentOptions options;
    options.threads = threads;
    options.progress = progress_sink(err, "sieve");
    PrimeSieve sieve = sieve_primes(limit, u64{1} << 20, threads);
    ReprHistogram h = histogram(limit, prefix_cap, sieve, options);
    job.payload["x"] = h.x;
    job.payload["count_r0"] = h.count_r0;
    job.payload["count_r1"] = h.count_r1;
    job.payload["count_r2plus"] = h.count_r2plus;
    job.payload["sum_r"] = h.sum_r;
    job.payload["sum_r2"] = h.sum_r2;
    job.payload["mean_r"] = static_cast<double>(h.sum_r) / static_cast<double>(h.x);
    job.payload["prefix_cap"] = h.prefix_cap;
    job.payload["nonrep_prefix"] = h.nonrep_prefix;
    job.pass = true;
}

int run_sieve_csv(u64 limit, unsigned threads, std::ostream& out) {
    PrimeSieve sieve = sieve_primes(limit, u64{1} << 20, threads);
    SummandTable tab = build_summands(limit);
    out << "n,r\n";
    out << "1,0\n";
    for (u64 n = 2; n <= limit; ++n) out << n << ',' << r_count(n, sieve, tab) << '\n';
    return 0;
}

void run_nonrep(Job& job, u64 limit, unsigned terms, u64 count, unsigned threads,
                std::ostream& err) {
    RepresentOptions options;
    options.threads = threads;
    options.progress = progress_sink(err, "nonrep");
    PrimeSieve sieve = sieve_primes(limit, u64{1} << 20, threads);
    Counterexamples result = least_counterexamples(limit, terms, count, sieve, options);
    job.payload["limit"] = limit;
    job.payload["terms"] = terms;
    job.payload["count_requested"] = count;
    job.payload["counterexamples"] = result.values;
    job.payload["exhausted"] = result.exhausted;
    job.pass = true;
}

void run_series(Job& job, u64 d_max) {
    SeriesPartialSum s = lemma4_partial_sum(d_max);
    job.payload["d_max"] = s.d_max;
    job.payload["value"] = s.value;
    job.payload["terms_counted"] = s.terms_counted;
    job.payload["bound"] = kSeriesBound;
    job.payload["below_bound"] = s.value < kSeriesBound;
    json table = json::array();
    for (u64 n = 7; n <= 60; ++n) {
        double value = period_restricted_sum(n);
        table.push_back(json{{"n", n}, {"value", value}, {"envelope", period_sum_envelope(n)}});
    }
    job.payload["period_restricted"] = table;
    job.pass = s.value < kSeriesBound;
}

void run_pisano_single(Job& job, u64 q) {
    job.payload["q"] = q;
    job.payload["period"] = pisano_period(q);
    job.pass = true;
}

void run_pisano_upto(Job& job, u64 upto) {
    PrimeSieve sieve = sieve_primes(std::max<u64>(upto, 2));
    json table = json::array();
    for (u64 q = 2; q <= upto; ++q)
        if (sieve.is_prime(q)) table.push_back(json{{"q", q}, {"period", pisano_period(q)}});
    job.payload["upto"] = upto;
    job.payload["table"] = table;
    job.pass = true;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2))
        if (n % d == 0) return false;
    return true;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"checks the finite claims and computational experiments around "
                 "representations n = p + f_{k1^2} + f_{k2^2}"};
    app.require_subcommand(1);
    unsigned threads_flag = 0;
    app.add_option("--threads", threads_flag, "worker cap (default: all cores; env ROMANOFF_THREADS overrides)");

    auto* verify = app.add_subcommand("verify", "run one verification job");
    verify->fallthrough();
    std::string subject;
    verify->add_option("subject", subject,
                       "one of: constants, e2, theorem2, theorem1, periods, lemma2, lemma4, bd")
        ->required();
    u64 modulus = 36864;
    verify->add_option("--modulus", modulus, "check modulus for theorem2 (18432 or k*36864)");
    u64 verify_dmax = 10'000;
    verify->add_option("--dmax", verify_dmax, "series cutoff for lemma4");
    u64 pmax = 0;
    verify->add_option("--pmax", pmax, "cap for lemma2 (moduli K) / bd (primes)");

    auto* sieve_cmd = app.add_subcommand("sieve", "representation histogram over [1, limit]");
    sieve_cmd->fallthrough();
    u64 sieve_limit = 0;
    sieve_cmd->add_option("--limit", sieve_limit, "upper end of the range")->required();
    std::string sieve_out = "json";
    sieve_cmd->add_option("--out", sieve_out, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    u64 prefix_cap = 10'000;
    sieve_cmd->add_option("--prefix-cap", prefix_cap, "list non-representable n up to this cap");

    auto* nonrep_cmd = app.add_subcommand("nonrep", "least non-representable integers for t terms");
    nonrep_cmd->fallthrough();
    u64 nonrep_limit = 0;
    nonrep_cmd->add_option("--limit", nonrep_limit, "scan (1, limit]")->required();
    unsigned terms = 0;
    nonrep_cmd->add_option("--terms", terms, "number of Fibonacci-square summands, in [1, 8]")->required();
    u64 count = 3;
    nonrep_cmd->add_option("--count", count, "how many counterexamples to collect");

    auto* series_cmd = app.add_subcommand("series", "series partial sum and period-restricted table");
    series_cmd->fallthrough();
    u64 series_dmax = 0;
    series_cmd->add_option("--dmax", series_dmax, "series cutoff")->required();

    auto* pisano_cmd = app.add_subcommand("pisano", "Pisano period of a prime, or a table");
    pisano_cmd->fallthrough();
    u64 pisano_q = 0;
    auto* q_opt = pisano_cmd->add_option("q", pisano_q, "prime argument");
    u64 pisano_upto = 0;
    auto* upto_opt = pisano_cmd->add_option("--upto", pisano_upto, "tabulate u(q) for primes q <= N");
    q_opt->excludes(upto_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    const unsigned threads = resolve_threads(threads_flag);

    Job job;
    job.parameters["threads"] = threads;

    try {
        if (verify->parsed()) {
            job.command = "verify " + subject;
            if (subject == "periods") {
                run_verify_periods(job);
            } else if (subject == "constants") {
                run_verify_constants(job);
            } else if (subject == "e2") {
                run_verify_e2(job);
            } else if (subject == "theorem2") {
                if (modulus != 18432 && (modulus == 0 || modulus % 36864 != 0)) {
                    err << "usage error: --modulus must be 18432 or a positive multiple of 36864\n";
                    return 2;
                }
                job.parameters["modulus"] = modulus;
                run_verify_theorem2(job, modulus, threads, err);
            } else if (subject == "theorem1") {
                run_verify_theorem1(job);
            } else if (subject == "lemma2") {
                u64 k_max = pmax == 0 ? 2000 : pmax;
                if (k_max > 100'000) {
                    err << "usage error: lemma2 --pmax must be <= 100000\n";
                    return 2;
                }
                job.parameters["k_max"] = k_max;
                run_verify_lemma2(job, k_max, threads);
            } else if (subject == "lemma4") {
                if (verify_dmax < 1 || verify_dmax > 100'000) {
                    err << "usage error: lemma4 --dmax must be in [1, 100000]\n";
                    return 2;
                }
                job.parameters["d_max"] = verify_dmax;
                run_verify_lemma4(job, verify_dmax);
            } else if (subject == "bd") {
                u64 p_max = pmax == 0 ? 10'000 : pmax;
                if (p_max > 100'000) {
                    err << "usage error: bd --pmax must be <= 100000\n";
                    return 2;
                }
                job.parameters["p_max"] = p_max;
                run_verify_bd(job, p_max);
            } else {
                err << "usage error: unknown verify subject '" << subject << "'\n";
                return 2;
            }
        } else if (sieve_cmd->parsed()) {
            job.command = "sieve";
            if (sieve_limit < 2 || sieve_limit > 1'000'000'000) {
                err << "usage error: --limit must be in [2, 1000000000]\n";
                return 2;
            }
            if (sieve_out == "csv") return run_sieve_csv(sieve_limit, threads, out);
            job.parameters["limit"] = sieve_limit;
            job.parameters["prefix_cap"] = prefix_cap;
            job.parameters["out"] = sieve_out;
            run_sieve_json(job, sieve_limit, prefix_cap, threads, err);
        } else if (nonrep_cmd->parsed()) {
            job.command = "nonrep";
            if (nonrep_limit < 2 || nonrep_limit > 1'000'000'000) {
                err << "usage error: --limit must be in [2, 1000000000]\n";
                return 2;
            }
            if (terms < 1 || terms > 8) {
                err << "usage error: --terms must be in [1, 8]\n";
                return 2;
            }
            if (count < 1) {
                err << "usage error: --count must be >= 1\n";
                return 2;
            }
            job.parameters["limit"] = nonrep_limit;
            job.parameters["terms"] = terms;
            job.parameters["count"] = count;
            run_nonrep(job, nonrep_limit, terms, count, threads, err);
        } else if (series_cmd->parsed()) {
            job.command = "series";
            if (series_dmax < 1 || series_dmax > 100'000) {
                err << "usage error: --dmax must be in [1, 100000]\n";
                return 2;
            }
            job.parameters["d_max"] = series_dmax;
            run_series(job, series_dmax);
        } else if (pisano_cmd->parsed()) {
            job.command = "pisano";
            if (*upto_opt) {
                if (pisano_upto < 2 || pisano_upto > 100'000) {
                    err << "usage error: --upto must be in [2, 100000]\n";
                    return 2;
                }
                job.parameters["upto"] = pisano_upto;
                run_pisano_upto(job, pisano_upto);
            } else if (*q_opt) {
                if (!is_prime_u64(pisano_q)) {
                    err << "usage error: pisano argument must be prime\n";
                    return 2;
                }
                if (pisano_q > 10'000'000) {
                    err << "usage error: pisano argument must be <= 10000000\n";
                    return 2;
                }
                job.parameters["q"] = pisano_q;
                run_pisano_single(job, pisano_q);
            } else {
                err << "usage error: pisano needs a prime argument or --upto N\n";
                return 2;
            }
        }
    } catch (const resource_error& e) {
        job.errored = true;
        job.payload = json{{"error", "resource"}, {"message", e.what()}};
    } catch (const integrity_error& e) {
        job.errored = true;
        job.payload = json{{"error", "integrity"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        job.errored = true;
        job.payload = json{{"error", "runtime"}, {"message", e.what()}};
    }

    return emit(job, out, start);
}

} // namespace romanoff::cli
