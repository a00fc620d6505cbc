#include "qsim/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsim/gates.hpp"
#include "qsim/measure.hpp"

namespace qsim {

namespace {

struct Token {
    std::string text;  // lowercased
    int column;        // 1-based byte offset
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        std::string t = line.substr(start, i - start);
        for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out.push_back({std::move(t), static_cast<int>(start) + 1});
    }
    return out;
}

int parse_int(const Token& tok, int line, const std::string& what) {
    if (tok.text.empty() || !std::all_of(tok.text.begin(), tok.text.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw ParseError(line, tok.column, "expected " + what + ", got '" + tok.text + "'");
    long v = 0;
    for (char c : tok.text) {
        v = v * 10 + (c - '0');
        if (v > 1'000'000) throw ParseError(line, tok.column, what + " out of range");
    }
    return static_cast<int>(v);
}

int parse_qubit(const Token& tok, int line, int n_qubits) {
    const int q = parse_int(tok, line, "qubit index");
    if (q >= n_qubits)
        throw ParseError(line, tok.column,
                         "qubit index " + std::to_string(q) + " out of range (n = " +
                             std::to_string(n_qubits) + ")");
    return q;
}

std::pair<int, int> parse_range(const Token& tok, int line, int n_qubits) {
    const auto dots = tok.text.find("..");
    if (dots == std::string::npos)
        throw ParseError(line, tok.column, "expected range 'lo..hi', got '" + tok.text + "'");
    const Token lo_tok{tok.text.substr(0, dots), tok.column};
    const Token hi_tok{tok.text.substr(dots + 2), tok.column + static_cast<int>(dots) + 2};
    const int lo = parse_qubit(lo_tok, line, n_qubits);
    const int hi = parse_qubit(hi_tok, line, n_qubits);
    if (hi < lo) throw ParseError(line, tok.column, "range hi below lo");
    return {lo, hi};
}

void expect_argc(const std::vector<Token>& toks, std::size_t argc, int line,
                 const std::string& usage) {
    if (toks.size() != argc + 1)
        throw ParseError(line, toks[0].column, "usage: " + usage);
}

}  // namespace

Circuit parse_circuit(const std::string& source) {
    Circuit c;
    bool have_qubits = false;
    std::vector<bool> gate_seen;  // per qubit: a gate already acted on it
    std::istringstream in(source);
    std::string raw;
    int lineno = 0;

    auto touch = [&](int lo, int hi) {
        for (int q = lo; q <= hi; ++q) gate_seen[q] = true;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::vector<Token> toks = tokenize(raw);
        if (toks.empty()) continue;
        const std::string& op = toks[0].text;

        if (op == "qubits") {
            if (have_qubits)
                throw ParseError(lineno, toks[0].column, "duplicate qubits declaration");
            if (!c.instructions.empty())
                throw ParseError(lineno, toks[0].column, "qubits declaration must come first");
            expect_argc(toks, 1, lineno, "qubits <n>");
            const int n = parse_int(toks[1], lineno, "qubit count");
            if (n < 1 || n > max_qubits())
                throw ParseError(lineno, toks[1].column, "qubit count out of range");
            c.n_qubits = n;
            have_qubits = true;
            gate_seen.assign(n, false);
            continue;
        }
        if (!have_qubits)
            throw ParseError(lineno, toks[0].column, "qubits declaration required first");

        if (op == "h" || op == "x" || op == "y" || op == "z") {
            expect_argc(toks, 1, lineno, op + " <qubit>" + (op == "h" ? " | h all" : ""));
            if (op == "h" && toks[1].text == "all") {
                c.instructions.push_back({instr::Gate1{'h', -1}, lineno});
                touch(0, c.n_qubits - 1);
            } else {
                const int q = parse_qubit(toks[1], lineno, c.n_qubits);
                c.instructions.push_back({instr::Gate1{op[0], q}, lineno});
                touch(q, q);
            }
        } else if (op == "cnot") {
            expect_argc(toks, 2, lineno, "cnot <control> <target>");
            const int ctl = parse_qubit(toks[1], lineno, c.n_qubits);
            const int tgt = parse_qubit(toks[2], lineno, c.n_qubits);
            if (ctl == tgt)
                throw ParseError(lineno, toks[2].column, "control equals target");
            c.instructions.push_back({instr::Cnot{ctl, tgt}, lineno});
            touch(ctl, ctl);
            touch(tgt, tgt);
        } else if (op == "oracle") {
            expect_argc(toks, 4, lineno, "oracle <name> <lo>..<hi> -> <lo>..<hi>");
            if (toks[3].text != "->")
                throw ParseError(lineno, toks[3].column, "expected '->' between oracle ranges");
            const auto [ilo, ihi] = parse_range(toks[2], lineno, c.n_qubits);
            const auto [olo, ohi] = parse_range(toks[4], lineno, c.n_qubits);
            if (!(ihi < olo || ohi < ilo))
                throw ParseError(lineno, toks[4].column,
                                 "oracle input and output ranges overlap");
            c.instructions.push_back({instr::OracleApp{toks[1].text, ilo, ihi, olo, ohi}, lineno});
            touch(ilo, ihi);
            touch(olo, ohi);
        } else if (op == "load") {
            if (toks.size() != 3)
                throw ParseError(lineno, toks[0].column, "usage: load <name> <path>");
            // The path keeps its original case.
            const std::string path = raw.substr(toks[2].column - 1, toks[2].text.size());
            c.instructions.push_back({instr::Load{toks[1].text, path}, lineno});
        } else if (op == "qft" || op == "iqft") {
            expect_argc(toks, 1, lineno, op + " <lo>..<hi>");
            const auto [lo, hi] = parse_range(toks[1], lineno, c.n_qubits);
            c.instructions.push_back({instr::Qft{lo, hi, op == "iqft"}, lineno});
            touch(lo, hi);
        } else if (op == "diffuse") {
            expect_argc(toks, 1, lineno, "diffuse <lo>..<hi>");
            const auto [lo, hi] = parse_range(toks[1], lineno, c.n_qubits);
            c.instructions.push_back({instr::Diffuse{lo, hi}, lineno});
            touch(lo, hi);
        } else if (op == "measure") {
            expect_argc(toks, 3, lineno, "measure <lo>..<hi> as <label> | measure all as <label>");
            if (toks[2].text != "as")
                throw ParseError(lineno, toks[2].column, "expected 'as' before the label");
            const std::string& label = toks[3].text;
            if (std::find(c.labels.begin(), c.labels.end(), label) != c.labels.end())
                throw ParseError(lineno, toks[3].column, "duplicate measurement label");
            c.labels.push_back(label);
            if (toks[1].text == "all") {
                c.instructions.push_back(
                    {instr::Measure{0, c.n_qubits - 1, true, label}, lineno});
            } else {
                const auto [lo, hi] = parse_range(toks[1], lineno, c.n_qubits);
                c.instructions.push_back({instr::Measure{lo, hi, false, label}, lineno});
            }
        } else if (op == "set") {
            expect_argc(toks, 2, lineno, "set <qubit> 1");
            const int q = parse_qubit(toks[1], lineno, c.n_qubits);
            if (toks[2].text != "1")
                throw ParseError(lineno, toks[2].column, "set only supports the value 1");
            if (gate_seen[q])
                throw ParseError(lineno, toks[1].column,
                                 "set must precede any gate on qubit " + std::to_string(q));
            c.instructions.push_back({instr::SetOne{q}, lineno});
        } else {
            throw ParseError(lineno, toks[0].column, "unknown mnemonic '" + op + "'");
        }
    }
    if (!have_qubits) throw ParseError(lineno + 1, 1, "qubits declaration required first");
    return c;
}

Circuit parse_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ExecError("cannot open circuit file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Circuit c = parse_circuit(buf.str());
    // Relative load paths resolve against the circuit file's directory.
    const auto dir = std::filesystem::path(path).parent_path();
    for (Instruction& ins : c.instructions)
        if (auto* load = std::get_if<instr::Load>(&ins.op))
            if (!load->path.empty() && std::filesystem::path(load->path).is_relative())
                load->path = (dir / load->path).string();
    return c;
}

std::string to_text(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits << "\n";
    for (const Instruction& ins : c.instructions) {
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, instr::SetOne>) {
                    out << "set " << op.qubit << " 1";
                } else if constexpr (std::is_same_v<T, instr::Gate1>) {
                    out << op.gate << ' ';
                    if (op.qubit < 0)
                        out << "all";
                    else
                        out << op.qubit;
                } else if constexpr (std::is_same_v<T, instr::Cnot>) {
                    out << "cnot " << op.control << ' ' << op.target;
                } else if constexpr (std::is_same_v<T, instr::OracleApp>) {
                    out << "oracle " << op.name << ' ' << op.in_lo << ".." << op.in_hi << " -> "
                        << op.out_lo << ".." << op.out_hi;
                } else if constexpr (std::is_same_v<T, instr::Load>) {
                    out << "load " << op.name << ' ' << op.path;
                } else if constexpr (std::is_same_v<T, instr::Qft>) {
                    out << (op.inverse ? "iqft " : "qft ") << op.lo << ".." << op.hi;
                } else if constexpr (std::is_same_v<T, instr::Diffuse>) {
                    out << "diffuse " << op.lo << ".." << op.hi;
                } else if constexpr (std::is_same_v<T, instr::Measure>) {
                    out << "measure ";
                    if (op.all)
                        out << "all";
                    else
                        out << op.lo << ".." << op.hi;
                    out << " as " << op.label;
                }
            },
            ins.op);
        out << "\n";
    }
    return out.str();
}

namespace {

nlohmann::ordered_json state_json(const StateVector& s) {
    nlohmann::ordered_json amps = nlohmann::ordered_json::array();
    for (std::uint64_t j = 0; j < s.dim(); ++j)
        amps.push_back({s.amp(j).real(), s.amp(j).imag()});
    return {{"n", s.n_qubits()}, {"amps", std::move(amps)}};
}

}  // namespace

RunRecord execute(const Circuit& c, const std::map<std::string, ClassicalOracle>& oracles,
                  RngStream& rng, const TraceFn& trace) {
    // Resolve every oracle reference before touching the state.
    std::map<std::string, ClassicalOracle> tables = oracles;
    for (const Instruction& ins : c.instructions)
        if (const auto* load = std::get_if<instr::Load>(&ins.op))
            if (!tables.count(load->name)) tables.emplace(load->name, ClassicalOracle::from_file(load->path));
    for (const Instruction& ins : c.instructions)
        if (const auto* app = std::get_if<instr::OracleApp>(&ins.op)) {
            const auto it = tables.find(app->name);
            if (it == tables.end())
                throw ExecError("line " + std::to_string(ins.line) + ": oracle '" + app->name +
                                "' is not loaded");
            const int want_in = app->in_hi - app->in_lo + 1;
            const int want_out = app->out_hi - app->out_lo + 1;
            if (it->second.in_bits != want_in || it->second.out_bits != want_out)
                throw ExecError("line " + std::to_string(ins.line) + ": oracle '" + app->name +
                                "' arity " + std::to_string(it->second.in_bits) + "->" +
                                std::to_string(it->second.out_bits) +
                                " does not match the qubit ranges");
        }

    RunRecord rec;
    rec.algorithm = "circuit";
    rec.seed = rng.seed();

    std::uint64_t initial = 0;
    for (const Instruction& ins : c.instructions)
        if (const auto* set = std::get_if<instr::SetOne>(&ins.op))
            initial |= std::uint64_t{1} << (c.n_qubits - 1 - set->qubit);
    StateVector s = basis_state(c.n_qubits, initial);

    bool measured_all = false;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const Instruction& ins : c.instructions) {
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, instr::SetOne> || std::is_same_v<T, instr::Load>) {
                    // Handled before execution.
                } else if constexpr (std::is_same_v<T, instr::Gate1>) {
                    if (op.qubit < 0) {
                        apply_hadamard_all(s);
                    } else {
                        static const GateMatrix h = standard_gate("H"), x = standard_gate("X"),
                                                y = standard_gate("Y"), z = standard_gate("Z");
                        const GateMatrix& g = op.gate == 'h'   ? h
                                              : op.gate == 'x' ? x
                                              : op.gate == 'y' ? y
                                                               : z;
                        apply_1q(s, g, op.qubit);
                    }
                } else if constexpr (std::is_same_v<T, instr::Cnot>) {
                    apply_cnot(s, op.control, op.target);
                } else if constexpr (std::is_same_v<T, instr::OracleApp>) {
                    apply_oracle_blocks(s, tables.at(op.name), op.in_lo, op.out_lo);
                    ++rec.oracle_calls;
                } else if constexpr (std::is_same_v<T, instr::Qft>) {
                    apply_qft_block(s, op.lo, op.hi, op.inverse);
                } else if constexpr (std::is_same_v<T, instr::Diffuse>) {
                    apply_diffusion_block(s, op.lo, op.hi);
                } else if constexpr (std::is_same_v<T, instr::Measure>) {
                    std::vector<int> qs(op.hi - op.lo + 1);
                    for (int q = op.lo; q <= op.hi; ++q) qs[q - op.lo] = q;
                    const std::uint64_t outcome = measure_subset_inplace(s, qs, rng);
                    rec.measurements.emplace_back(op.label, outcome);
                    outputs[op.label] = outcome;
                    if (op.all) measured_all = true;
                }
            },
            ins.op);
        if (trace) trace("line " + std::to_string(ins.line), s);
    }
    rec.iterations["instructions"] = c.instructions.size();
    rec.result["outputs"] = std::move(outputs);
    if (!measured_all) rec.result["final_state"] = state_json(s);
    return rec;
}

}  // namespace qsim
