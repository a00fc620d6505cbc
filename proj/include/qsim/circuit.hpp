#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qsim/algorithms.hpp"
#include "qsim/transforms.hpp"

namespace qsim {

/// Diagnostic with a source location; thrown for every malformed input.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_) {}
};

struct ExecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace instr {

struct SetOne {
    int qubit;
};
struct Gate1 {
    char gate;  // 'h', 'x', 'y', 'z'
    int qubit;  // -1 means every qubit (h only)
};
struct Cnot {
    int control, target;
};
struct OracleApp {
    std::string name;
    int in_lo, in_hi;
    int out_lo, out_hi;
};
struct Load {
    std::string name;
    std::string path;
};
struct Qft {
    int lo, hi;
    bool inverse;
};
struct Diffuse {
    int lo, hi;
};
struct Measure {
    int lo, hi;  // lo = 0, hi = n-1 for `measure all`
    bool all;
    std::string label;
};

}  // namespace instr

struct Instruction {
    std::variant<instr::SetOne, instr::Gate1, instr::Cnot, instr::OracleApp, instr::Load,
                 instr::Qft, instr::Diffuse, instr::Measure>
        op;
    int line;  // source line for diagnostics
};

/// One instruction per line, '#' comments, case-insensitive mnemonics.
/// `qubits <n>` must come first; ranges are inclusive `lo..hi`; qubit 0 is
/// the most significant tensor factor.
struct Circuit {
    int n_qubits = 0;
    std::vector<Instruction> instructions;
    std::vector<std::string> labels;  // classical output slots, in order
};

Circuit parse_circuit(const std::string& source);
Circuit parse_circuit_file(const std::string& path);

/// Canonical text form; parse(to_text(c)) is structurally identical to c.
std::string to_text(const Circuit& c);

/// Runs the circuit. `oracles` supplies tables for names not covered by
/// `load` instructions (and overrides loads of the same name). The final
/// state lands in the record unless a `measure all` consumed it.
RunRecord execute(const Circuit& c, const std::map<std::string, ClassicalOracle>& oracles,
                  RngStream& rng, const TraceFn& trace = {});

}  // namespace qsim
