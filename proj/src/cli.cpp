#include "entlab/cli.hpp"

#include "entlab/analysis.hpp"
#include "entlab/asymptotics.hpp"
#include "entlab/blocks.hpp"
#include "entlab/entropy.hpp"
#include "entlab/oracle.hpp"
#include "entlab/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace entlab::cli {
namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// One output record. Absent fields print empty in CSV and null in JSON.
struct Row {
    std::optional<long> n;
    std::optional<double> alpha;
    std::optional<double> value;
    std::optional<double> prediction;
    std::optional<double> error;
    std::string regime; // empty = absent
    std::optional<double> seconds;
};

struct Sink {
    std::string command;
    std::string format = "csv";
    std::optional<unsigned long long> seed; // echoed for the check commands
    std::vector<Row> rows;

    void flush(std::ostream& out) const {
        if (format == "json") {
            flush_json(out);
            return;
        }
        out << "n,alpha,command,value,prediction,error,regime,seconds\n";
        if (seed) out << ",," << command << ",,,,seed=" << *seed << ",\n";
        for (const auto& r : rows) {
            if (r.n) out << *r.n;
            out << ',';
            if (r.alpha) out << fmt17(*r.alpha);
            out << ',' << command << ',';
            if (r.value) out << fmt17(*r.value);
            out << ',';
            if (r.prediction) out << fmt17(*r.prediction);
            out << ',';
            if (r.error) out << fmt17(*r.error);
            out << ',' << r.regime << ',';
            if (r.seconds) out << fmt17(*r.seconds);
            out << '\n';
        }
    }

    void flush_json(std::ostream& out) const {
        auto num = [](const std::optional<double>& v) { return v ? fmt17(*v) : "null"; };
        out << "{\n  \"command\": \"" << command << "\",\n";
        if (seed) out << "  \"seed\": " << *seed << ",\n";
        out << "  \"records\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out << "    {\"n\": " << (r.n ? std::to_string(*r.n) : "null")
                << ", \"alpha\": " << num(r.alpha) << ", \"value\": " << num(r.value)
                << ", \"prediction\": " << num(r.prediction) << ", \"error\": " << num(r.error)
                << ", \"regime\": " << (r.regime.empty() ? "null" : '"' + r.regime + '"')
                << ", \"seconds\": " << num(r.seconds) << '}' << (i + 1 < rows.size() ? "," : "")
                << '\n';
        }
        out << "  ]\n}\n";
    }
};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::invalid_argument("jobspec." + path + ": " + msg);
}

long get_long(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

double get_double(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Rational get_rational(const json& j, const std::string& path) {
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return make_rational(j[0].get<long>(), j[1].get<long>());
    if (j.is_string()) {
        long num = 0, den = 0;
        if (std::sscanf(j.get<std::string>().c_str(), "%ld/%ld", &num, &den) == 2)
            return make_rational(num, den);
    }
    fail(path, "expected [num, den] or \"num/den\"");
}

std::vector<std::pair<long, long>> get_pairs(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of [start, end) pairs");
    std::vector<std::pair<long, long>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& p = j[i];
        std::string here = path + "[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 2) fail(here, "expected a [start, end) pair");
        out.push_back({get_long(p[0], here + "[0]"), get_long(p[1], here + "[1]")});
    }
    return out;
}

struct Job {
    std::vector<long> n_list;
    std::optional<std::vector<std::pair<long, long>>> sites_raw, modes_raw;
    std::optional<FamilyTemplate> family;
    std::vector<double> alpha_list;

    Path path = Path::automatic;
    std::string regime = "general";
    long grid_resolution = 16;
    int kmax = 2;
    std::vector<double> nu_candidates;
    unsigned long long seed = 0;
    long count = 25;
    long n_max = 0; // 0 -> per-command default
    double tolerance = 0.0; // 0 -> per-command default
    long max_count = 16;
    bool timings = false;
    std::optional<double> exponent_hint;
    std::string law = "error";
    std::string kind = "entanglement";
    int threads = 1;
    std::string format = "csv";
};

Job parse_job(const json& spec) {
    if (!spec.is_object()) throw std::invalid_argument("jobspec: expected a JSON object");
    static const std::vector<std::string> top_keys = {"n",     "n_list", "sites",      "modes",
                                                      "family", "r",     "s",          "gamma_x",
                                                      "gamma_p", "alpha", "alpha_list", "options"};
    for (auto it = spec.begin(); it != spec.end(); ++it)
        if (std::find(top_keys.begin(), top_keys.end(), it.key()) == top_keys.end())
            fail(it.key(), "unknown key");

    Job job;
    if (spec.contains("n")) job.n_list.push_back(get_long(spec["n"], "n"));
    if (spec.contains("n_list")) {
        if (!spec["n_list"].is_array()) fail("n_list", "expected an array of integers");
        for (std::size_t i = 0; i < spec["n_list"].size(); ++i)
            job.n_list.push_back(get_long(spec["n_list"][i], "n_list[" + std::to_string(i) + "]"));
    }
    if (spec.contains("sites")) job.sites_raw = get_pairs(spec["sites"], "sites");
    if (spec.contains("modes")) job.modes_raw = get_pairs(spec["modes"], "modes");

    const bool flat_family = spec.contains("r") || spec.contains("s") || spec.contains("gamma_x") ||
                             spec.contains("gamma_p");
    if (spec.contains("family") || flat_family) {
        const json& f = spec.contains("family") ? spec["family"] : spec;
        std::string base = spec.contains("family") ? "family." : "";
        for (const char* key : {"r", "s", "gamma_x", "gamma_p"})
            if (!f.contains(key)) fail(base + key, "missing symmetric-family parameter");
        FamilyTemplate fam;
        fam.r = get_long(f["r"], base + "r");
        fam.s = get_long(f["s"], base + "s");
        fam.gamma_x = get_rational(f["gamma_x"], base + "gamma_x");
        fam.gamma_p = get_rational(f["gamma_p"], base + "gamma_p");
        if (fam.r < 1 || fam.s < 1) fail(base + "r", "block counts must be >= 1");
        job.family = fam;
    }
    if (job.family && (job.sites_raw || job.modes_raw))
        fail("sites", "give either explicit intervals or a symmetric family, not both");

    if (spec.contains("alpha")) job.alpha_list.push_back(get_double(spec["alpha"], "alpha"));
    if (spec.contains("alpha_list")) {
        if (!spec["alpha_list"].is_array()) fail("alpha_list", "expected an array of numbers");
        for (std::size_t i = 0; i < spec["alpha_list"].size(); ++i)
            job.alpha_list.push_back(
                get_double(spec["alpha_list"][i], "alpha_list[" + std::to_string(i) + "]"));
    }

    if (spec.contains("options")) {
        const json& o = spec["options"];
        if (!o.is_object()) fail("options", "expected an object");
        static const std::vector<std::string> opt_keys = {
            "path",      "regime",  "grid_resolution", "kmax",    "nu_candidates",
            "seed",      "count",   "n_max",           "tolerance", "max_count",
            "timings",   "exponent_hint", "law",       "kind",    "threads",  "format"};
        for (auto it = o.begin(); it != o.end(); ++it)
            if (std::find(opt_keys.begin(), opt_keys.end(), it.key()) == opt_keys.end())
                fail("options." + it.key(), "unknown key");
        if (o.contains("path")) {
            std::string p = o["path"].is_string() ? o["path"].get<std::string>() : "";
            if (p == "direct") job.path = Path::direct;
            else if (p == "dual") job.path = Path::dual;
            else if (p == "auto" || p == "automatic") job.path = Path::automatic;
            else fail("options.path", "expected direct|dual|auto");
        }
        if (o.contains("regime")) {
            if (!o["regime"].is_string()) fail("options.regime", "expected a string");
            job.regime = o["regime"].get<std::string>();
        }
        if (o.contains("grid_resolution")) job.grid_resolution = get_long(o["grid_resolution"], "options.grid_resolution");
        if (o.contains("kmax")) job.kmax = int(get_long(o["kmax"], "options.kmax"));
        if (o.contains("nu_candidates")) {
            if (!o["nu_candidates"].is_array()) fail("options.nu_candidates", "expected an array of numbers");
            for (std::size_t i = 0; i < o["nu_candidates"].size(); ++i)
                job.nu_candidates.push_back(get_double(o["nu_candidates"][i],
                                                       "options.nu_candidates[" + std::to_string(i) + "]"));
        }
        if (o.contains("seed")) {
            if (!o["seed"].is_number_integer()) fail("options.seed", "expected a nonnegative integer");
            if (!o["seed"].is_number_unsigned() && o["seed"].get<long long>() < 0)
                fail("options.seed", "expected a nonnegative integer");
            job.seed = o["seed"].get<unsigned long long>();
        }
        if (o.contains("count")) job.count = get_long(o["count"], "options.count");
        if (o.contains("n_max")) job.n_max = get_long(o["n_max"], "options.n_max");
        if (o.contains("tolerance")) job.tolerance = get_double(o["tolerance"], "options.tolerance");
        if (o.contains("max_count")) job.max_count = get_long(o["max_count"], "options.max_count");
        if (o.contains("timings")) {
            if (!o["timings"].is_boolean()) fail("options.timings", "expected a boolean");
            job.timings = o["timings"].get<bool>();
        }
        if (o.contains("exponent_hint")) job.exponent_hint = get_double(o["exponent_hint"], "options.exponent_hint");
        if (o.contains("law")) {
            if (!o["law"].is_string()) fail("options.law", "expected a string");
            job.law = o["law"].get<std::string>();
        }
        if (o.contains("kind")) {
            if (!o["kind"].is_string()) fail("options.kind", "expected a string");
            job.kind = o["kind"].get<std::string>();
        }
        if (o.contains("threads")) job.threads = int(get_long(o["threads"], "options.threads"));
        if (o.contains("format")) {
            if (!o["format"].is_string()) fail("options.format", "expected a string");
            job.format = o["format"].get<std::string>();
        }
    }
    if (job.format != "csv" && job.format != "json") fail("options.format", "expected csv or json");
    if (job.count < 1) fail("options.count", "must be >= 1");
    if (job.threads < 1) fail("options.threads", "must be >= 1");
    return job;
}

Configuration config_at(const Job& job, long n) {
    if (job.family) return job.family->at(n);
    if (!job.sites_raw) fail("sites", "missing (give sites+modes intervals or a symmetric family)");
    if (!job.modes_raw) fail("modes", "missing (give sites+modes intervals or a symmetric family)");
    return {n, canonicalize(*job.sites_raw, n), canonicalize(*job.modes_raw, n)};
}

void require_n(const Job& job) {
    if (job.n_list.empty()) fail("n", "missing (give n or n_list)");
}

void require_alpha(const Job& job) {
    if (job.alpha_list.empty()) fail("alpha_list", "missing (give alpha, alpha_list or --alpha)");
}

FamilyTemplate require_family(const Job& job) {
    if (!job.family) fail("family", "this command needs symmetric-family parameters r,s,gamma_x,gamma_p");
    return *job.family;
}

double now_minus(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Seeded configuration draws for the check commands. Raw mt19937_64 words
// reduced by modulo keep the stream identical across standard libraries
// (std::uniform_int_distribution is not portable).
struct DetRng {
    std::mt19937_64 gen;
    explicit DetRng(unsigned long long seed) : gen(seed) {}
    long uniform(long lo, long hi) { return lo + long(gen() % (unsigned long long)(hi - lo + 1)); }
};

BlockSet random_blockset(DetRng& rng, long n) {
    long kcap = std::max(1L, std::min(4L, n / 4));
    long k = rng.uniform(1, kcap);
    std::vector<long> cuts;
    for (int attempt = 0; attempt < 1000 && long(cuts.size()) < 2 * k; ++attempt) {
        long c = rng.uniform(0, n - 1);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    if (long(cuts.size()) < 2 * k) return canonicalize({{0, n / 2}}, n);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<long, long>> raw;
    for (long i = 0; i < k; ++i) raw.push_back({cuts[2 * i], cuts[2 * i + 1]});
    return canonicalize(raw, n);
}

Configuration random_config(DetRng& rng, long n_min, long n_max) {
    long n = rng.uniform(n_min, n_max);
    return {n, random_blockset(rng, n), random_blockset(rng, n)};
}

Prediction predict(const Configuration& cfg, double alpha, const std::string& regime) {
    auto [gx, gp] = densities(cfg);
    if (regime == "general") return general_asymptotic(cfg, alpha);
    if (regime == "finite_density_single") return single_block_asymptotic(cfg.n, gx.value(), gp.value(), alpha);
    if (regime == "multiblock_position") return multiblock_position_asymptotic(angles(cfg.sites), cfg.n, gp.value(), alpha);
    if (regime == "multiblock_momentum") return multiblock_momentum_asymptotic(angles(cfg.modes), cfg.n, gx.value(), alpha);
    if (regime == "fisher_hartwig") {
        if (cfg.sites.intervals.size() != 1) fail("options.regime", "fisher_hartwig needs a single site block");
        return fisher_hartwig_asymptotic(cfg.sites.total_length(), angles(cfg.modes), alpha);
    }
    if (regime == "cft") {
        if (cfg.modes.intervals.size() != 1) fail("options.regime", "cft needs a single mode block");
        return cft_asymptotic(angles(cfg.sites), cfg.n, gp.value(), alpha);
    }
    if (regime == "infinite_chain") {
        std::vector<std::pair<long, long>> uv;
        for (const auto& iv : cfg.sites.intervals) uv.push_back({iv.start, iv.start + iv.length});
        return infinite_chain_asymptotic(uv, angles(cfg.modes), alpha);
    }
    fail("options.regime", "unknown regime '" + regime + "'");
}

long cmd_exact(const Job& job, Sink& sink) {
    require_n(job);
    require_alpha(job);
    for (long n : job.n_list) {
        auto cfg = config_at(job, n);
        for (double alpha : job.alpha_list) {
            auto t0 = std::chrono::steady_clock::now();
            Row r;
            r.n = n;
            r.alpha = alpha;
            r.value = renyi(cfg, alpha, job.path);
            if (job.timings) r.seconds = now_minus(t0);
            sink.rows.push_back(r);
        }
    }
    return 0;
}

long cmd_asym(const Job& job, Sink& sink) {
    require_n(job);
    require_alpha(job);
    for (long n : job.n_list) {
        auto cfg = config_at(job, n);
        for (double alpha : job.alpha_list) {
            auto t0 = std::chrono::steady_clock::now();
            Prediction p = predict(cfg, alpha, job.regime);
            Row r;
            r.n = n;
            r.alpha = alpha;
            r.prediction = p.value;
            r.regime = regime_name(p.regime);
            if (job.timings) r.seconds = now_minus(t0);
            sink.rows.push_back(r);
        }
    }
    return 0;
}

long cmd_spectrum(const Job& job, Sink& sink) {
    require_n(job);
    if (job.kind != "entanglement" && job.kind != "occupation")
        fail("options.kind", "expected entanglement or occupation");
    for (long n : job.n_list) {
        auto cfg = config_at(job, n);
        std::vector<double> vals;
        if (job.kind == "occupation") vals = occupation_spectrum(correlation_matrix(cfg)).values;
        else vals = entanglement_spectrum(cfg, job.max_count);
        for (double v : vals) {
            Row r;
            r.n = n;
            r.value = v;
            r.regime = job.kind;
            sink.rows.push_back(r);
        }
    }
    return 0;
}

std::vector<double> check_alphas(const Job& job, bool oracle) {
    if (!job.alpha_list.empty()) return job.alpha_list;
    return oracle ? std::vector<double>{0.5, 1.0, 2.0, 3.0} : std::vector<double>{1.0, 2.0, 3.0};
}

long cmd_duality_check(const Job& job, Sink& sink) {
    sink.seed = job.seed;
    const double tol = job.tolerance > 0 ? job.tolerance : 1e-8;
    const long n_max = job.n_max > 0 ? job.n_max : 128;
    if (n_max < 16) fail("options.n_max", "must be >= 16");
    DetRng rng(job.seed);
    long violations = 0;
    for (long i = 0; i < job.count; ++i) {
        auto cfg = random_config(rng, 16, n_max);
        Configuration swapped{cfg.n, cfg.modes, cfg.sites};
        for (double alpha : check_alphas(job, false)) {
            auto t0 = std::chrono::steady_clock::now();
            Row r;
            r.n = cfg.n;
            r.alpha = alpha;
            r.value = renyi(cfg, alpha, Path::direct);
            r.prediction = renyi(swapped, alpha, Path::direct);
            r.error = *r.value - *r.prediction;
            if (std::abs(*r.error) >= tol) ++violations;
            if (job.timings) r.seconds = now_minus(t0);
            sink.rows.push_back(r);
        }
    }
    return violations;
}

long cmd_complement_check(const Job& job, Sink& sink) {
    sink.seed = job.seed;
    const double tol = job.tolerance > 0 ? job.tolerance : 1e-8;
    const long n_max = job.n_max > 0 ? job.n_max : 128;
    if (n_max < 16) fail("options.n_max", "must be >= 16");
    DetRng rng(job.seed);
    long violations = 0;
    for (long i = 0; i < job.count; ++i) {
        auto cfg = random_config(rng, 16, n_max);
        Configuration site_comp{cfg.n, complement(cfg.sites), cfg.modes};
        Configuration mode_comp{cfg.n, cfg.sites, complement(cfg.modes)};
        for (double alpha : check_alphas(job, false)) {
            double base = renyi(cfg, alpha);
            for (int side = 0; side < 2; ++side) {
                auto t0 = std::chrono::steady_clock::now();
                Row r;
                r.n = cfg.n;
                r.alpha = alpha;
                r.value = base;
                r.prediction = renyi(side == 0 ? site_comp : mode_comp, alpha);
                r.error = *r.value - *r.prediction;
                r.regime = side == 0 ? "sites" : "modes";
                if (std::abs(*r.error) >= tol) ++violations;
                if (job.timings) r.seconds = now_minus(t0);
                sink.rows.push_back(r);
            }
        }
    }
    return violations;
}

long cmd_oracle_check(const Job& job, Sink& sink) {
    sink.seed = job.seed;
    const double tol = job.tolerance > 0 ? job.tolerance : 1e-9;
    long n_max = job.n_max > 0 ? job.n_max : 12;
    if (n_max > oracle_site_cap) fail("options.n_max", "oracle is capped at 14 sites");
    if (n_max < 6) fail("options.n_max", "must be >= 6");
    DetRng rng(job.seed);
    long violations = 0;
    for (long i = 0; i < job.count; ++i) {
        auto cfg = random_config(rng, 6, n_max);
        auto state = fock_state(cfg.n, cfg.modes);
        for (double alpha : check_alphas(job, true)) {
            auto t0 = std::chrono::steady_clock::now();
            Row r;
            r.n = cfg.n;
            r.alpha = alpha;
            r.value = renyi(cfg, alpha);
            r.prediction = renyi_oracle(state, cfg.sites, alpha);
            r.error = *r.value - *r.prediction;
            if (std::abs(*r.error) >= tol) ++violations;
            if (job.timings) r.seconds = now_minus(t0);
            sink.rows.push_back(r);
        }
    }
    return violations;
}

long cmd_scan(const Job& job, Sink& sink) {
    require_n(job);
    require_alpha(job);
    FamilyTemplate fam = require_family(job);
    for (double alpha : job.alpha_list) {
        ScanSeries s = error_scan(fam, job.n_list, alpha, job.threads);
        for (const auto& rec : s.records) {
            Row r;
            r.n = rec.n;
            r.alpha = rec.alpha;
            r.value = rec.exact;
            r.prediction = rec.prediction;
            r.error = rec.error;
            r.regime = "general";
            if (job.timings) r.seconds = rec.wall_time;
            sink.rows.push_back(r);
        }
    }
    return 0;
}

long cmd_fit(const Job& job, Sink& sink) {
    require_n(job);
    require_alpha(job);
    FamilyTemplate fam = require_family(job);
    if (job.law != "error" && job.law != "central-charge")
        fail("options.law", "expected error or central-charge");
    for (double alpha : job.alpha_list) {
        ScanSeries s = error_scan(fam, job.n_list, alpha, job.threads);
        if (job.law == "central-charge") {
            Row r;
            r.alpha = alpha;
            r.value = central_charge_fit(s);
            r.prediction = double(fam.r * fam.s);
            r.error = *r.value - *r.prediction;
            r.regime = "central_charge";
            sink.rows.push_back(r);
            continue;
        }
        std::vector<double> cands = job.nu_candidates;
        if (cands.empty()) cands = frequency_candidates(nu0(fam), fam.r * fam.s);
        ErrorFit fit = fit_error_law(s, job.exponent_hint, cands, job.kmax);
        auto push = [&](const std::string& label, double v) {
            Row r;
            r.alpha = alpha;
            r.value = v;
            r.regime = label;
            sink.rows.push_back(r);
        };
        push("exponent", fit.exponent);
        push("nu", fit.nu);
        for (std::size_t k = 0; k < fit.coefficients.size(); ++k)
            push("a" + std::to_string(k), fit.coefficients[k]);
        push("residual_rms", fit.residual_rms);
    }
    return 0;
}

long cmd_maximize(const Job& job, Sink& sink) {
    FamilyTemplate fam = require_family(job);
    MaximizeResult res = maximize_geometric_factor(fam.r, fam.s, fam.gamma_x, fam.gamma_p,
                                                   job.grid_resolution);
    Row g;
    g.n = res.n_ref;
    g.value = res.g;
    g.regime = "g";
    sink.rows.push_back(g);
    for (int side = 0; side < 2; ++side)
        for (const auto& iv : (side == 0 ? res.sites : res.modes).intervals) {
            Row r;
            r.n = res.n_ref;
            r.value = double(iv.start);
            r.prediction = double(iv.start + iv.length);
            r.regime = side == 0 ? "site_block" : "mode_block";
            sink.rows.push_back(r);
        }
    return 0;
}

long cmd_constants(const Job& job, Sink& sink) {
    require_alpha(job);
    for (double alpha : job.alpha_list) {
        AsymptoticConstants k = constants_for(alpha);
        Row b;
        b.alpha = alpha;
        b.value = k.b;
        b.regime = "b_alpha";
        sink.rows.push_back(b);
        Row c;
        c.alpha = alpha;
        c.value = k.c;
        c.regime = "c_alpha";
        sink.rows.push_back(c);
    }
    return 0;
}

} // namespace

int run(const std::string& command, const json& jobspec, std::ostream& out) {
    try {
        Job job = parse_job(jobspec);
        Sink sink;
        sink.command = command;
        sink.format = job.format;
        long violations = 0;
        if (command == "exact") violations = cmd_exact(job, sink);
        else if (command == "asym") violations = cmd_asym(job, sink);
        else if (command == "spectrum") violations = cmd_spectrum(job, sink);
        else if (command == "duality-check") violations = cmd_duality_check(job, sink);
        else if (command == "complement-check") violations = cmd_complement_check(job, sink);
        else if (command == "oracle-check") violations = cmd_oracle_check(job, sink);
        else if (command == "scan") violations = cmd_scan(job, sink);
        else if (command == "fit") violations = cmd_fit(job, sink);
        else if (command == "maximize") violations = cmd_maximize(job, sink);
        else if (command == "constants") violations = cmd_constants(job, sink);
        else throw std::invalid_argument("unknown command '" + command + "'");
        sink.flush(out);
        return violations > 0 ? 2 : 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"exact and asymptotic entanglement entropies of free-fermion chains"};
    std::string command, config_path, format, alpha_csv, out_path;
    unsigned long long seed = 0;
    int threads = 0;
    app.add_option("command", command,
                   "exact | asym | spectrum | duality-check | complement-check | oracle-check | "
                   "scan | fit | maximize | constants")
        ->required();
    app.add_option("--config", config_path, "JSON job file");
    app.add_option("--format", format, "csv or json (default csv)");
    app.add_option("--alpha", alpha_csv, "comma-separated Renyi indices, overrides the job file");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed for the check commands");
    auto* threads_opt = app.add_option("--threads", threads, "scan parallelism (env ENTROPY_LAB_THREADS)");
    app.add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    json jobspec = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file '" << config_path << "'\n";
            return 1;
        }
        try {
            jobspec = json::parse(in);
        } catch (const json::parse_error& e) {
            std::cerr << "error: " << config_path << ": " << e.what() << '\n';
            return 1;
        }
    }

    if (!alpha_csv.empty()) {
        std::vector<double> alphas;
        std::size_t pos = 0;
        while (pos <= alpha_csv.size()) {
            std::size_t next = alpha_csv.find(',', pos);
            if (next == std::string::npos) next = alpha_csv.size();
            try {
                std::size_t used = 0;
                std::string tok = alpha_csv.substr(pos, next - pos);
                double v = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                alphas.push_back(v);
            } catch (const std::exception&) {
                std::cerr << "error: --alpha: cannot parse '" << alpha_csv << "'\n";
                return 1;
            }
            pos = next + 1;
        }
        try {
            jobspec["alpha_list"] = alphas;
            jobspec.erase("alpha");
        } catch (const json::exception& e) {
            std::cerr << "error: jobspec: " << e.what() << '\n';
            return 1;
        }
    }
    try {
        if (seed_opt->count() > 0) jobspec["options"]["seed"] = seed;
        if (threads_opt->count() > 0) {
            jobspec["options"]["threads"] = threads;
        } else if (const char* env = std::getenv("ENTROPY_LAB_THREADS")) {
            try {
                jobspec["options"]["threads"] = std::stoi(env);
            } catch (const std::exception&) {
                std::cerr << "error: ENTROPY_LAB_THREADS: cannot parse '" << env << "'\n";
                return 1;
            }
        }
        if (!format.empty()) jobspec["options"]["format"] = format;
    } catch (const json::exception& e) {
        std::cerr << "error: jobspec.options: " << e.what() << '\n';
        return 1;
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return 1;
        }
        return run(command, jobspec, out);
    }
    return run(command, jobspec, std::cout);
}

} // namespace entlab::cli
