// Command-line front end: every algorithm plus circuit execution, with seeded
// reproducibility and machine-readable JSON output.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsim/algorithms.hpp"
#include "qsim/circuit.hpp"
#include "qsim/measure.hpp"
#include "qsim/numtheory.hpp"
#include "qsim/transforms.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qsim;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    bool json = false;
    bool state = false;
    bool force = false;
    bool quiet = false;
    std::string dump_distribution;
};

// Captures traced states for narration, --state and --dump-distribution.
struct StateObserver {
    const GlobalOpts& opts;
    std::optional<StateVector> last_state;
    std::vector<double> last_distribution;

    explicit StateObserver(const GlobalOpts& o) : opts(o) {}

    void narrate(const std::string& label, const StateVector& s) const {
        std::vector<std::uint64_t> order(s.dim());
        for (std::uint64_t j = 0; j < s.dim(); ++j) order[j] = j;
        const std::size_t top = std::min<std::size_t>(8, order.size());
        std::partial_sort(order.begin(), order.begin() + top, order.end(),
                          [&](std::uint64_t a, std::uint64_t b) {
                              return std::norm(s.amp(a)) > std::norm(s.amp(b));
                          });
        std::cout << "  " << label << " (" << s.n_qubits() << " qubits):";
        for (std::size_t i = 0; i < top; ++i) {
            const std::uint64_t j = order[i];
            const cdouble a = s.amp(j);
            if (std::norm(a) < 1e-12) break;
            std::cout << "  (" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i)|" << j
                      << ">";
        }
        std::cout << "\n";
    }

    TraceFn make_trace(bool narrating) {
        const bool capture = opts.state || !opts.dump_distribution.empty();
        if (!narrating && !capture) return {};
        return [this, narrating, capture](const std::string& label, const StateVector& s) {
            if (narrating) narrate(label, s);
            if (capture && s.n_qubits() <= 20) {
                if (opts.state) last_state = s;
                if (!opts.dump_distribution.empty()) last_distribution = probabilities(s);
            }
        };
    }
};

ordered_json state_to_json(const StateVector& s) {
    ordered_json amps = ordered_json::array();
    for (std::uint64_t j = 0; j < s.dim(); ++j)
        amps.push_back({s.amp(j).real(), s.amp(j).imag()});
    return {{"n", s.n_qubits()}, {"amps", std::move(amps)}};
}

void write_distribution_csv(const std::string& path, const std::vector<double>& dist) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write distribution file: " + path);
    out << "index,probability\n";
    for (std::size_t j = 0; j < dist.size(); ++j) out << j << "," << dist[j] << "\n";
}

// One algorithm invocation: the record plus the headline outcome used by
// histogram mode (nullopt = failed run).
struct RunOutcome {
    RunRecord record;
    std::optional<std::uint64_t> primary;
    std::string human;
};

int finish(const GlobalOpts& opts, StateObserver& observer,
           const std::function<RunOutcome(RngStream&, const TraceFn&)>& run) {
    if (opts.shots > 0) {
        // Histogram mode: independent seeded reruns, aggregated by outcome.
        RngStream root(opts.seed);
        std::map<std::uint64_t, std::uint64_t> counts;
        std::uint64_t failures = 0;
        for (std::uint64_t shot = 0; shot < opts.shots; ++shot) {
            RngStream rng = root.derived(shot);
            const RunOutcome out = run(rng, {});
            if (out.primary)
                ++counts[*out.primary];
            else
                ++failures;
        }
        ordered_json jcounts = ordered_json::object();
        for (const auto& [k, v] : counts) jcounts[std::to_string(k)] = v;
        ordered_json j{{"shots", opts.shots}, {"counts", std::move(jcounts)}};
        if (failures) j["failures"] = failures;
        if (opts.json)
            std::cout << j.dump() << "\n";
        else
            std::cout << j.dump(2) << "\n";
        return failures == opts.shots ? 1 : 0;
    }

    RngStream rng(opts.seed);
    const bool narrating = !opts.json && !opts.quiet;
    const RunOutcome out = run(rng, observer.make_trace(narrating));

    if (!opts.dump_distribution.empty() && !observer.last_distribution.empty())
        write_distribution_csv(opts.dump_distribution, observer.last_distribution);

    if (opts.json) {
        ordered_json j = out.record.to_json();
        if (opts.state && observer.last_state) {
            if (observer.last_state->n_qubits() > 16 && !opts.force) {
                std::cerr << "state dump refused for n > 16 (use --force)\n";
                return 2;
            }
            j["state"] = state_to_json(*observer.last_state);
        }
        std::cout << j.dump() << "\n";
    } else {
        if (!opts.quiet) {
            for (const auto& [reg, outcome] : out.record.measurements)
                std::cout << "  measured " << reg << " = " << outcome << "\n";
        }
        std::cout << out.human << "\n";
        if (opts.state && observer.last_state) {
            if (observer.last_state->n_qubits() > 16 && !opts.force) {
                std::cerr << "state dump refused for n > 16 (use --force)\n";
                return 2;
            }
            std::cout << state_to_json(*observer.last_state).dump() << "\n";
        }
    }
    return out.record.failed() ? 1 : 0;
}

std::string factor_line(const ShorFactorResult& r) {
    if (!r.factors) return "no factors found";
    return std::to_string(r.factors->first) + " x " + std::to_string(r.factors->second) + " (x = " +
           std::to_string(r.x) + ", order = " + std::to_string(r.order) + ")";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"State-vector quantum algorithm runner"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "RNG seed (default 0)");
    app.add_option("--shots", opts.shots, "histogram over this many seeded reruns");
    app.add_flag("--json", opts.json, "machine-readable output");
    app.add_flag("--state", opts.state, "dump the last traced state");
    app.add_flag("--force", opts.force, "allow large state dumps");
    app.add_flag("--quiet", opts.quiet, "suppress step narration");
    app.add_option("--dump-distribution", opts.dump_distribution,
                   "write the last traced distribution as CSV");

    std::string oracle_path, circuit_path, lambda_str;
    std::uint64_t big_n = 0;
    std::uint64_t forced_x = 0;
    int attempts = 8, max_rounds = 0, counter_qubits = 0, max_outer = 16;
    double lambda = 1.2;
    bool multi = false;
    std::uint64_t max_iters = 0;
    std::vector<std::string> table_args;

    auto* deutsch_cmd = app.add_subcommand("deutsch", "single-query constant/balanced test (1 bit)");
    deutsch_cmd->add_option("--oracle", oracle_path, "truth table file")->required();

    auto* dj_cmd = app.add_subcommand("dj", "single-query constant/balanced test (n bits)");
    dj_cmd->add_option("--oracle", oracle_path, "truth table file")->required();

    auto* simon_cmd = app.add_subcommand("simon", "xor-mask recovery");
    simon_cmd->add_option("--oracle", oracle_path, "truth table file")->required();
    simon_cmd->add_option("--max-rounds", max_rounds, "sampling budget (default 10n)");

    auto* shor_cmd = app.add_subcommand("shor", "integer factoring via order finding");
    shor_cmd->add_option("--n", big_n, "odd composite to factor")->required();
    shor_cmd->add_option("--x", forced_x, "fixed witness (default: drawn per round)");
    shor_cmd->add_option("--attempts", attempts, "order-finding attempts per witness");
    shor_cmd->add_option("--max-outer", max_outer, "witness rounds before giving up");

    auto* grover_cmd = app.add_subcommand("grover", "unstructured search");
    grover_cmd->add_option("--oracle", oracle_path, "truth table file")->required();
    grover_cmd->add_flag("--multi", multi, "unknown solution count variant");
    grover_cmd->add_option("--lambda", lambda, "growth factor in (1, 4/3)");
    grover_cmd->add_option("--max-iters", max_iters, "cutoff before the no-solution verdict");

    auto* count_cmd = app.add_subcommand("count", "estimate the number of solutions");
    count_cmd->add_option("--oracle", oracle_path, "truth table file")->required();
    count_cmd->add_option("--p", counter_qubits, "counter qubits (default n + 2)");

    auto* run_cmd = app.add_subcommand("run", "execute a circuit file");
    run_cmd->add_option("circuit", circuit_path, "circuit (.qc) file")->required();
    run_cmd->add_option("--table", table_args, "oracle binding name=path (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits 0; any usage problem exits 2
    }

    StateObserver observer(opts);
    try {
        if (deutsch_cmd->parsed()) {
            const ClassicalOracle f = ClassicalOracle::from_file(oracle_path);
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                DeutschResult r = deutsch(f, rng, t);
                return RunOutcome{std::move(r.record),
                                  r.record.measurements.empty() ? 0 : r.record.measurements[0].second,
                                  std::string("verdict: ") + (r.constant ? "constant" : "balanced")};
            });
        }
        if (dj_cmd->parsed()) {
            const ClassicalOracle f = ClassicalOracle::from_file(oracle_path);
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                DeutschJozsaResult r = deutsch_jozsa(f, rng, t);
                return RunOutcome{std::move(r.record), r.k_measured,
                                  std::string("verdict: ") + (r.constant ? "constant" : "balanced")};
            });
        }
        if (simon_cmd->parsed()) {
            const ClassicalOracle f = ClassicalOracle::from_file(oracle_path);
            const int budget = max_rounds > 0 ? max_rounds : 10 * f.in_bits;
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                SimonResult r = simon(f, budget, rng, t);
                return RunOutcome{std::move(r.record), r.s,
                                  r.s ? "xor-mask s = " + std::to_string(*r.s)
                                      : std::string("failed to reach rank n-1")};
            });
        }
        if (shor_cmd->parsed()) {
            const std::optional<std::uint64_t> x =
                forced_x ? std::optional<std::uint64_t>(forced_x) : std::nullopt;
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                ShorFactorResult r = shor_factor(big_n, max_outer, rng, x, attempts, t);
                return RunOutcome{std::move(r.record),
                                  r.factors ? std::optional<std::uint64_t>(r.factors->first)
                                            : std::nullopt,
                                  std::to_string(big_n) + " = " + factor_line(r)};
            });
        }
        if (grover_cmd->parsed()) {
            const ClassicalOracle f = ClassicalOracle::from_file(oracle_path);
            if (multi) {
                const std::uint64_t cutoff =
                    max_iters > 0 ? max_iters : default_grover_cutoff(f.in_bits);
                return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                    GroverUnknownResult r = grover_unknown(f, lambda, cutoff, rng, t);
                    return RunOutcome{std::move(r.record), r.found,
                                      r.found ? "found: " + std::to_string(*r.found)
                                              : std::string("no solution")};
                });
            }
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                GroverResult r = grover_known(f, rng, t);
                return RunOutcome{std::move(r.record),
                                  r.hit ? std::optional<std::uint64_t>(r.found) : std::nullopt,
                                  "found: " + std::to_string(r.found) +
                                      (r.hit ? " (verified)" : " (miss; rerun with another seed)")};
            });
        }
        if (count_cmd->parsed()) {
            const ClassicalOracle f = ClassicalOracle::from_file(oracle_path);
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                CountResult r = quantum_count(f, counter_qubits, rng, t);
                return RunOutcome{std::move(r.record), r.estimate.l_measured,
                                  "t estimate: " + std::to_string(r.estimate.t_tilde) +
                                      " (error bound " + std::to_string(r.estimate.error_bound) +
                                      ")"};
            });
        }
        if (run_cmd->parsed()) {
            const Circuit c = parse_circuit_file(circuit_path);
            std::map<std::string, ClassicalOracle> tables;
            for (const std::string& binding : table_args) {
                const auto eq = binding.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "--table expects name=path\n";
                    return 2;
                }
                tables.emplace(binding.substr(0, eq),
                               ClassicalOracle::from_file(binding.substr(eq + 1)));
            }
            return finish(opts, observer, [&](RngStream& rng, const TraceFn& t) {
                RunRecord rec = execute(c, tables, rng, t);
                std::optional<std::uint64_t> primary;
                if (!rec.measurements.empty()) primary = rec.measurements.back().second;
                std::string human = "circuit done";
                for (const auto& [reg, outcome] : rec.measurements)
                    human += "; " + reg + " = " + std::to_string(outcome);
                return RunOutcome{std::move(rec), primary, std::move(human)};
            });
        }
    } catch (const OracleLoadError& e) {
        std::cerr << "oracle table error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "circuit parse error: " << e.what() << "\n";
        return 2;
    } catch (const ExecError& e) {
        std::cerr << "circuit execution error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
