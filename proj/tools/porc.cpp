// porc: command-line front end for the class-2 Lie ring census and its supporting counts.
//
// Exit codes: 0 ok, 1 selftest failure, 2 bad input, 3 refused (over a size cap),
// 4 internal inconsistency.

#include "porc/acceptance.hpp"
#include "porc/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

using namespace porc;

namespace {

enum Exit { kOk = 0, kSelftestFailed = 1, kBadInput = 2, kRefused = 3, kInconsistent = 4 };

struct Options {
    std::string format = "json";
    std::string out;
    std::uint64_t cap_group = limits().group_size;
    std::uint64_t cap_module = limits().module_size;
    std::uint64_t cap_tables = limits().table_count;
    unsigned threads = 1;
    bool no_timing = false;

    int n = -1;
    std::vector<std::uint64_t> primes;
    std::string engine = "typed";
    std::string input;
    std::uint64_t modulus = 1;
    int degmax = 0;
    bool search = false;
    std::string lambda, mu, nu;
    std::uint64_t q = 0;
    std::string ring;
    bool polynomial = false;
    std::vector<std::string> matrices;
    std::vector<int> criteria;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw DomainError("cannot write " + o.out);
    f << text;
}

std::string render(const Options& o, const ResultRecord& rec) { return o.format == "csv" ? to_csv(rec) : rec.dump(); }

Dvr ring_for(const Options& o, int K) {
    std::uint64_t p;
    unsigned d;
    if (!prime_power(o.q, p, d)) throw DomainError("q must be a prime power");
    const std::string kind = o.ring.empty() ? (d == 1 ? "integers" : "series") : o.ring;
    if (kind == "integers") {
        if (d != 1) throw DomainError("Z/p^K needs a prime q; use --ring series");
        return Dvr::integers(o.q, std::max(1, K));
    }
    if (kind == "series") return Dvr::power_series(o.q, std::max(1, K));
    throw DomainError("--ring must be 'integers' or 'series'");
}

Mat parse_matrix(const Field& F, const std::string& s, std::uint64_t q) {
    std::vector<std::vector<std::int64_t>> rows;
    std::stringstream rs(s);
    std::string row;
    while (std::getline(rs, row, ';')) {
        rows.emplace_back();
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) rows.back().push_back(std::stoll(cell));
    }
    const int n = static_cast<int>(rows.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) throw DomainError("matrix must be square: " + s);
        for (int j = 0; j < n; ++j) {
            const auto v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (F.degree() == 1)
                m.at(i, j) = F.from_int(v);
            else if (v < 0 || static_cast<std::uint64_t>(v) >= q)
                throw DomainError("entries over F_q (q not prime) are element codes 0..q-1");
            else
                m.at(i, j) = static_cast<Field::Elem>(v);
        }
    }
    return m;
}

ResultRecord cmd_census(const Options& o) {
    if (o.n < 0) throw DomainError("--n must be nonnegative");
    if (o.primes.empty()) throw DomainError("--primes is required");
    for (auto p : o.primes)
        if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    const Engine engine = o.engine == "naive" ? Engine::Naive : Engine::Typed;
    if (o.engine != "naive" && o.engine != "typed") throw DomainError("--engine must be 'typed' or 'naive'");
    Census census(engine);
    // Primes are independent; workers take them in turn and rows keep input order.
    std::vector<Census::Row> rows(o.primes.size());
    std::vector<std::exception_ptr> errors(o.primes.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i; (i = next++) < o.primes.size();) try {
                rows[i] = census.census(o.n, o.primes[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(o.threads, o.primes.size()); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    ResultRecord rec;
    rec.command = "census";
    rec.inputs["n"] = o.n;
    rec.inputs["primes"] = o.primes;
    rec.inputs["engine"] = engine_name(engine);
    for (const auto& r : rows) rec.results.push_back(census_row_json(r));
    rec.diagnostics["engine"] = engine_name(engine);
    return rec;
}

ResultRecord cmd_porc_fit(const Options& o) {
    std::ifstream f(o.input);
    if (!f) throw DomainError("cannot read " + o.input);
    const ResultRecord in = ResultRecord::parse(std::string(std::istreambuf_iterator<char>(f), {}));
    int n = o.n;
    if (n < 0) {
        std::set<int> ns;
        for (const auto& r : in.results) ns.insert(r.at("n").get<int>());
        if (ns.size() != 1) throw DomainError("input holds several orders; pick one with --n");
        n = *ns.begin();
    }
    const auto samples = census_samples(in, n);
    const PorcFormula fit = o.search ? porc_fit_search(samples, o.modulus, o.degmax) : porc_fit(samples, o.modulus, o.degmax);
    ResultRecord rec;
    rec.command = "porc-fit";
    rec.inputs["input"] = o.input;
    rec.inputs["n"] = n;
    rec.inputs["modulus"] = o.modulus;
    rec.inputs["degmax"] = o.degmax;
    rec.inputs["search"] = o.search;
    rec.results.push_back(porc_formula_json(fit));
    return rec;
}

ResultRecord cmd_hall(const Options& o) {
    const Partition lambda = parse_partition(o.lambda), mu = parse_partition(o.mu), nu = parse_partition(o.nu);
    const Dvr R = ring_for(o, lambda.largest());
    ResultRecord rec;
    rec.command = "hall";
    rec.inputs["lambda"] = lambda.str();
    rec.inputs["mu"] = mu.str();
    rec.inputs["nu"] = nu.str();
    rec.inputs["q"] = o.q;
    rec.inputs["ring"] = R.str();
    Json row;
    row["lambda"] = lambda.str();
    row["mu"] = mu.str();
    row["nu"] = nu.str();
    row["q"] = o.q;
    row["count"] = std::to_string(hall_number(lambda, mu, nu, R));
    if (o.polynomial) row["polynomial"] = hall_polynomial(lambda, mu, nu).coefficient_strings();
    rec.results.push_back(row);
    return rec;
}

ResultRecord cmd_autcount(const Options& o) {
    const Partition lambda = parse_partition(o.lambda);
    const Dvr R = ring_for(o, lambda.largest());
    const BigInt formula = aut_order_formula(lambda, BigInt(o.q));
    const bool enumerate = formula <= limits().group_size;
    const BigInt count = enumerate ? aut_order(lambda, R) : formula;
    if (enumerate && count != formula) throw InternalInconsistency("enumerated automorphism count disagrees with the closed form");
    ResultRecord rec;
    rec.command = "autcount";
    rec.inputs["lambda"] = lambda.str();
    rec.inputs["q"] = o.q;
    rec.inputs["ring"] = R.str();
    Json row;
    row["lambda"] = lambda.str();
    row["q"] = o.q;
    row["count"] = count.str();
    row["method"] = enumerate ? "enumeration" : "closed form";
    if (o.polynomial) row["polynomial"] = aut_polynomial(lambda).coefficient_strings();
    rec.results.push_back(row);
    return rec;
}

ResultRecord cmd_typeof(const Options& o) {
    if (o.matrices.empty()) throw DomainError("give at least one --matrix");
    std::uint64_t p;
    unsigned d;
    if (!prime_power(o.q, p, d)) throw DomainError("q must be a prime power");
    const Field& F = Field::get(o.q);
    std::vector<Mat> tuple;
    for (const auto& s : o.matrices) {
        tuple.push_back(parse_matrix(F, s, o.q));
        if (!mat::invertible(F, tuple.back())) throw DomainError("matrix is not invertible: " + s);
    }
    const TypeKey t = type_of_tuple(F, tuple);
    ResultRecord rec;
    rec.command = "typeof";
    rec.inputs["q"] = o.q;
    rec.inputs["matrices"] = o.matrices;
    for (const auto& col : t.cols) {
        Json row;
        row["degree"] = col.degree;
        std::string parts;
        for (std::size_t i = 0; i < col.parts.size(); ++i) parts += (i ? "|" : "") + col.parts[i].str();
        row["partitions"] = parts;
        rec.results.push_back(row);
    }
    rec.diagnostics["type"] = t.str();
    return rec;
}

ResultRecord cmd_oracle(const Options& o) {
    if (o.n < 0) throw DomainError("--n must be nonnegative");
    if (o.primes.empty()) throw DomainError("--primes is required");
    ResultRecord rec;
    rec.command = "oracle";
    rec.inputs["n"] = o.n;
    rec.inputs["primes"] = o.primes;
    for (auto p : o.primes) rec.results.push_back(oracle_json(enumerate_lie_rings(o.n, p)));
    rec.diagnostics["engine"] = "oracle";
    return rec;
}

int cmd_selftest(const Options& o) {
    const std::set<int> only(o.criteria.begin(), o.criteria.end());
    const bool text = o.format != "json" || !o.out.empty();
    const auto results = run_acceptance(only, [&](const CriterionResult& r) {
        if (text) std::cout << format_criterion(r) << std::endl;
    });
    int failed = 0;
    ResultRecord rec;
    rec.command = "selftest";
    rec.inputs["criteria"] = o.criteria;
    for (const auto& r : results) {
        failed += !r.pass;
        Json row;
        row["id"] = r.id;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        rec.results.push_back(row);
    }
    if (text)
        std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed" << std::endl;
    if (o.format == "json") emit(o, rec.dump());
    return failed ? kSelftestFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counts of class-2 Lie rings of order p^n with central Frattini ideal"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->envname("PORC_FORMAT");
    app.add_option("--out", o.out, "write output here instead of stdout")->envname("PORC_OUT");
    app.add_option("--cap-group-size", o.cap_group, "largest group enumeration")->check(CLI::PositiveNumber)->envname("PORC_CAP_GROUP_SIZE");
    app.add_option("--cap-module-size", o.cap_module, "largest module whose submodules are enumerated")->check(CLI::PositiveNumber)->envname("PORC_CAP_MODULE_SIZE");
    app.add_option("--cap-table-count", o.cap_tables, "most bracket tables the oracle visits")->check(CLI::PositiveNumber)->envname("PORC_CAP_TABLE_COUNT");
    app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber)->envname("PORC_THREADS");
    app.add_flag("--no-timing", o.no_timing, "omit wall time from diagnostics")->envname("PORC_NO_TIMING");

    auto* census = app.add_subcommand("census", "count rings of order p^n for each prime");
    census->add_option("--n", o.n, "exponent n")->required();
    census->add_option("--primes", o.primes, "comma-separated primes")->required()->delimiter(',');
    census->add_option("--engine", o.engine, "typed or naive");

    auto* fit = app.add_subcommand("porc-fit", "fit a polynomial-on-residue-classes formula to census output");
    fit->add_option("--input", o.input, "census JSON")->required();
    fit->add_option("--n", o.n, "order exponent to fit (default: the only one present)");
    fit->add_option("--modulus", o.modulus, "modulus N")->check(CLI::PositiveNumber);
    fit->add_option("--degmax", o.degmax, "polynomial degree")->check(CLI::NonNegativeNumber);
    fit->add_flag("--search", o.search, "try every divisor of N and every degree up to degmax");

    auto* hall = app.add_subcommand("hall", "Hall number g^lambda_{mu nu}");
    hall->add_option("--lambda", o.lambda)->required();
    hall->add_option("--mu", o.mu)->required();
    hall->add_option("--nu", o.nu)->required();
    hall->add_option("--q", o.q, "residue field size")->required();
    hall->add_option("--ring", o.ring, "integers (Z/p^K) or series (F_q[t]/(t^K))");
    hall->add_flag("--polynomial", o.polynomial, "also give the Hall polynomial");

    auto* autc = app.add_subcommand("autcount", "order of Aut(M_lambda)");
    autc->add_option("--lambda", o.lambda)->required();
    autc->add_option("--q", o.q, "residue field size")->required();
    autc->add_option("--ring", o.ring, "integers or series");
    autc->add_flag("--polynomial", o.polynomial, "also give a_lambda as a polynomial in q");

    auto* typ = app.add_subcommand("typeof", "type of a tuple of invertible matrices over F_q");
    typ->add_option("--q", o.q)->required();
    typ->add_option("--matrix", o.matrices, "rows separated by ';', entries by ','")->required();

    auto* orc = app.add_subcommand("oracle", "brute-force enumeration of the same rings");
    orc->add_option("--n", o.n)->required();
    orc->add_option("--primes", o.primes)->required()->delimiter(',');

    auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
    self->add_option("--criteria", o.criteria, "subset of criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    limits().group_size = o.cap_group;
    limits().module_size = o.cap_module;
    limits().table_count = o.cap_tables;

    const std::string command = app.get_subcommands().front()->get_name();
    const auto t0 = std::chrono::steady_clock::now();
    const auto fail = [&](const std::string& status, const std::string& message, const BigInt* estimate, int code) {
        std::cerr << "porc " << command << ": " << status << ": " << message << "\n";
        ResultRecord rec;
        rec.command = command;
        rec.diagnostics["status"] = status;
        rec.diagnostics["message"] = message;
        if (estimate) rec.diagnostics["estimate"] = estimate->str();
        if (o.format == "json") emit(o, rec.dump());
        return code;
    };
    try {
        if (command == "selftest") return cmd_selftest(o);
        ResultRecord rec;
        if (command == "census") rec = cmd_census(o);
        else if (command == "porc-fit") rec = cmd_porc_fit(o);
        else if (command == "hall") rec = cmd_hall(o);
        else if (command == "autcount") rec = cmd_autcount(o);
        else if (command == "typeof") rec = cmd_typeof(o);
        else rec = cmd_oracle(o);
        rec.diagnostics["status"] = "ok";
        rec.diagnostics["artifact_version"] = kArtifactVersion;
        if (!o.no_timing)
            rec.diagnostics["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        emit(o, render(o, rec));
        return kOk;
    } catch (const Refusal& e) {
        return fail("refused", e.what(), &e.estimate(), kRefused);
    } catch (const DomainError& e) {
        return fail("bad input", e.what(), nullptr, kBadInput);
    } catch (const InternalInconsistency& e) {
        return fail("internal inconsistency", e.what(), nullptr, kInconsistent);
    } catch (const std::exception& e) {
        return fail("bad input", e.what(), nullptr, kBadInput);
    }
}
