// gqtm: command-line front end over the C API.
//
//   gqtm word      --n 6 --source simulate|substitution [--markers 3,3,3] [--single-marker --limit L]
//   gqtm verify    [--n-max 10] [--inject-fault]
//   gqtm spectrum  [word options] --gamma G [--K K] [--sites N]
//   gqtm transmit  [word options] --gamma G --energies a:b:step
//   gqtm evolve    [word options] --gamma G --t T [--frames F] [--site s] [--method exact|stepper]
//
// Exit codes: 0 success, 1 verification failure, 2 usage or runtime error.

#include "gqtm/gqtm.h"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct ApiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(gqtm_status status) {
    if (status != GQTM_OK)
        throw ApiError(std::string(gqtm_status_name(status)) + ": " + gqtm_last_error());
}

struct WordDeleter {
    void operator()(gqtm_word* w) const { gqtm_word_free(w); }
};
struct ChainDeleter {
    void operator()(gqtm_chain* c) const { gqtm_chain_free(c); }
};
using WordPtr = std::unique_ptr<gqtm_word, WordDeleter>;
using ChainPtr = std::unique_ptr<gqtm_chain, ChainDeleter>;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct WordOptions {
    int n = 6;
    std::vector<int> markers;
    bool single_marker = false;
    std::size_t limit = 0;
    std::string source = "simulate";
    double gamma = 0.5;
    double K = 1.0;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--n", n, "Counter width n (markers at 0 and n+1)")->check(CLI::Range(0, 40));
        cmd.add_option("--markers", markers, "Counter widths n_1,n_2,... for several markers")->delimiter(',');
        cmd.add_flag("--single-marker", single_marker, "Single marker: count without halting (needs --limit)");
        cmd.add_option("--limit", limit, "Truncate or zero-pad the word to this many bits");
        cmd.add_option("--source", source, "Word source")->check(CLI::IsMember({"simulate", "substitution"}));
        cmd.add_option("--gamma", gamma, "Weight of read-1 steps, in (0, 1]");
        cmd.add_option("--K", K, "Energy scale K > 0");
    }

    ordered_json to_json() const {
        ordered_json j;
        j["source"] = source;
        if (single_marker) {
            j["single_marker"] = true;
        } else if (!markers.empty()) {
            j["markers"] = markers;
        } else {
            j["n"] = n;
        }
        j["limit"] = limit;
        j["gamma"] = gamma;
        j["K"] = K;
        return j;
    }

    WordPtr build() const {
        gqtm_word* raw = nullptr;
        if (single_marker) {
            if (limit == 0) throw CLI::ValidationError("--single-marker requires --limit");
            check(source == "simulate" ? gqtm_word_simulate_single(limit, gamma, &raw) : gqtm_word_stream(limit, &raw));
            return WordPtr(raw);
        }
        const std::vector<int> ns = markers.empty() ? std::vector<int>{n} : markers;
        check(source == "simulate" ? gqtm_word_simulate(ns.data(), ns.size(), gamma, &raw)
                                   : gqtm_word_substitution(ns.data(), ns.size(), &raw));
        WordPtr word(raw);
        if (limit > 0) check(gqtm_word_resize(word.get(), limit));
        return word;
    }
};

std::string word_string(const gqtm_word* word) {
    std::string bits(gqtm_word_length(word) + 1, '\0');
    check(gqtm_word_bits(word, bits.data(), bits.size()));
    bits.pop_back();
    return bits;
}

class Run {
public:
    Run(std::string command, std::string prefix) : command_(std::move(command)), prefix_(std::move(prefix)) {}

    ordered_json& parameters() { return parameters_; }

    void write(const std::string& extension, const std::string& payload) {
        const std::string path = prefix_ + extension;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << payload;
        artifacts_.push_back({{"file", path}, {"bytes", payload.size()}, {"sha256", sha256_hex(payload)}});
    }

    void finish() {
        ordered_json manifest;
        manifest["tool"] = "gqtm";
        manifest["version"] = gqtm_version();
        manifest["command"] = command_;
        manifest["parameters"] = parameters_;
        manifest["artifacts"] = artifacts_;
        manifest["started_utc"] = started_utc_;
        manifest["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ofstream out(prefix_ + ".manifest.json");
        out << manifest.dump(2) << '\n';
    }

private:
    std::string command_;
    std::string prefix_;
    ordered_json parameters_ = ordered_json::object();
    ordered_json artifacts_ = ordered_json::array();
    std::string started_utc_ = utc_now();
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_word(const WordOptions& opts, const std::string& prefix) {
    Run run("word", prefix);
    run.parameters() = opts.to_json();
    const auto word = opts.build();
    const std::string bits = word_string(word.get());

    std::size_t runs = 0, trailing = 0;
    check(gqtm_word_run_profile(word.get(), nullptr, 0, &runs, &trailing));
    std::vector<std::size_t> pairs(2 * runs);
    check(gqtm_word_run_profile(word.get(), pairs.data(), pairs.size(), &runs, &trailing));

    ordered_json profile;
    profile["length"] = bits.size();
    profile["ones"] = static_cast<std::size_t>(std::count(bits.begin(), bits.end(), '1'));
    profile["runs"] = ordered_json::array();
    for (std::size_t i = 0; i < runs; ++i) profile["runs"].push_back({pairs[2 * i], pairs[2 * i + 1]});
    profile["trailing_gap"] = trailing;
    std::vector<std::size_t> gaps;
    for (std::size_t i = 0; i < gqtm_word_gap_count(word.get()); ++i) gaps.push_back(gqtm_word_gap(word.get(), i));
    if (!gaps.empty()) profile["block_gaps"] = gaps;

    run.write(".word.txt", bits + "\n");
    run.write(".profile.json", profile.dump(2) + "\n");
    run.finish();
    std::cout << bits << '\n';
    return kExitOk;
}

int cmd_verify(int n_max, bool inject_fault) {
    int passed = 0;
    char* report = nullptr;
    check(gqtm_verify(n_max, inject_fault ? 1 : 0, &passed, &report));
    std::cout << report << '\n';
    gqtm_string_free(report);
    return passed ? kExitOk : kExitVerifyFailed;
}

ChainPtr make_chain(const WordOptions& opts, std::size_t sites) {
    auto word = opts.build();
    if (sites > 0) check(gqtm_word_resize(word.get(), sites - 1));
    gqtm_chain* raw = nullptr;
    check(gqtm_chain_create(word.get(), opts.K, opts.gamma, &raw));
    return ChainPtr(raw);
}

int cmd_spectrum(const WordOptions& opts, std::size_t sites, const std::string& prefix) {
    Run run("spectrum", prefix);
    run.parameters() = opts.to_json();
    run.parameters()["sites"] = sites;
    const auto chain = make_chain(opts, sites);
    std::vector<double> values(gqtm_chain_sites(chain.get()));
    check(gqtm_chain_spectrum(chain.get(), values.data(), values.size()));
    std::string csv = "index,eigenvalue\n";
    for (std::size_t i = 0; i < values.size(); ++i) csv += std::to_string(i) + "," + fmt_double(values[i]) + "\n";
    run.write(".spectrum.csv", csv);
    run.finish();
    std::cout << "wrote " << values.size() << " eigenvalues to " << prefix << ".spectrum.csv\n";
    return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw CLI::ValidationError("--energies must look like start:stop:step");
    if (!(step > 0.0) || hi < lo) throw CLI::ValidationError("--energies needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

int cmd_transmit(const WordOptions& opts, const std::string& energies, const std::string& prefix) {
    Run run("transmit", prefix);
    run.parameters() = opts.to_json();
    run.parameters()["energies"] = energies;
    const auto grid = parse_grid(energies);
    const auto word = opts.build();
    std::string csv = "energy,transmission\n";
    for (double E : grid) {
        double t2 = 0.0, r2 = 0.0;
        check(gqtm_transmission(word.get(), E, opts.K, opts.gamma, &t2, &r2));
        csv += fmt_double(E) + "," + fmt_double(t2) + "\n";
    }
    run.write(".transmit.csv", csv);
    run.finish();
    std::cout << "wrote " << grid.size() << " energies to " << prefix << ".transmit.csv\n";
    return kExitOk;
}

int cmd_evolve(const WordOptions& opts, std::size_t sites, double t, std::size_t frames, std::size_t site,
               const std::string& method, const std::string& prefix) {
    Run run("evolve", prefix);
    run.parameters() = opts.to_json();
    run.parameters()["sites"] = sites;
    run.parameters()["t"] = t;
    run.parameters()["frames"] = frames;
    run.parameters()["site"] = site;
    run.parameters()["method"] = method;
    if (frames < 1) throw CLI::ValidationError("--frames must be >= 1");
    const auto chain = make_chain(opts, sites);
    const std::size_t n = gqtm_chain_sites(chain.get());
    if (site >= n) throw CLI::ValidationError("--site lies outside the chain");
    const auto m = method == "stepper" ? GQTM_EVOLVE_CHECKED_STEPPER : GQTM_EVOLVE_EXACT_DIAG;

    std::string csv = "time,site,probability\n";
    for (std::size_t f = 0; f <= frames; ++f) {
        const double time = t * static_cast<double>(f) / static_cast<double>(frames);
        std::vector<double> re(n, 0.0), im(n, 0.0);
        re[site] = 1.0;
        check(gqtm_chain_evolve(chain.get(), re.data(), im.data(), n, time, m));
        const std::string time_s = fmt_double(time);
        for (std::size_t i = 0; i < n; ++i)
            csv += time_s + "," + std::to_string(i) + "," + fmt_double(re[i] * re[i] + im[i] * im[i]) + "\n";
    }
    run.write(".evolve.csv", csv);
    run.finish();
    std::cout << "wrote " << frames + 1 << " frames of " << n << " sites to " << prefix << ".evolve.csv\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting-machine potential words and tight-binding numerics"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(gqtm_version()));
    std::string prefix = "gqtm";
    app.add_option("--out", prefix, "Output file prefix")->capture_default_str();

    WordOptions word_opts;
    auto* word = app.add_subcommand("word", "Emit the potential word");
    word_opts.add_to(*word);

    int n_max = 10;
    bool inject_fault = false;
    auto* verify = app.add_subcommand("verify", "Run the oracle suite");
    verify->add_option("--n-max", n_max, "Largest counter width")->check(CLI::Range(1, 20));
    verify->add_flag("--inject-fault", inject_fault, "Corrupt one oracle bit (self-test)");

    WordOptions num_opts;
    std::size_t sites = 0;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the chain");
    num_opts.add_to(*spectrum);
    spectrum->add_option("--sites", sites, "Chain length (word truncated or zero-padded)");

    std::string energies = "0.1:3.9:0.1";
    auto* transmit = app.add_subcommand("transmit", "Transmission through the word between leads");
    num_opts.add_to(*transmit);
    transmit->add_option("--energies", energies, "Energy grid start:stop:step")->capture_default_str();

    double t = 1.0;
    std::size_t frames = 10, site = 0;
    std::string method = "exact";
    auto* evolve = app.add_subcommand("evolve", "Time evolution of a site-localized state");
    num_opts.add_to(*evolve);
    evolve->add_option("--sites", sites, "Chain length (word truncated or zero-padded)");
    evolve->add_option("--t", t, "Final time");
    evolve->add_option("--frames", frames, "Number of time intervals");
    evolve->add_option("--site", site, "Initial site");
    evolve->add_option("--method", method)->check(CLI::IsMember({"exact", "stepper"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*word) return cmd_word(word_opts, prefix);
        if (*verify) return cmd_verify(n_max, inject_fault);
        if (*spectrum) return cmd_spectrum(num_opts, sites, prefix);
        if (*transmit) return cmd_transmit(num_opts, energies, prefix);
        if (*evolve) return cmd_evolve(num_opts, sites, t, frames, site, method, prefix);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
