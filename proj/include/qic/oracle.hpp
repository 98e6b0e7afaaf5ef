#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qic/errors.hpp"

namespace qic {

// Cap on register width for exhaustive operations (2^24 entries).
inline constexpr std::uint32_t kDefaultQubitCap = 24;

inline std::uint64_t dimension(std::uint32_t n_qubits) {
  return std::uint64_t(1) << n_qubits;
}

// ---------------------------------------------------------------------------
// Bit strings
//
// Convention, fixed across the whole library: the leftmost bit of a ket
// label |b1 b2 ... bn> is the most significant bit of the basis index,
// i = sum b_k 2^(n-k). CNF variable k reads ket bit k.
// ---------------------------------------------------------------------------

struct BitString {
  std::uint32_t n = 0;
  std::uint64_t value = 0;
};

inline std::string to_bit_string(std::uint64_t value, std::uint32_t n) {
  std::string s(n, '0');
  for (std::uint32_t k = 0; k < n; ++k)
    if ((value >> (n - 1 - k)) & 1u) s[k] = '1';
  return s;
}

inline BitString parse_bit_string(std::string_view text) {
  BitString b{static_cast<std::uint32_t>(text.size()), 0};
  for (char c : text) {
    if (c != '0' && c != '1') throw Error("bit string must contain only 0/1: '" + std::string(text) + "'");
    b.value = (b.value << 1) | std::uint64_t(c == '1');
  }
  return b;
}

// ---------------------------------------------------------------------------
// CNF formulas and the DIMACS reader
// ---------------------------------------------------------------------------

struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<std::vector<std::int32_t>> clauses;  // signed 1-based literals

  bool operator==(const CnfFormula&) const = default;
};

// Variable k of an n-variable formula reads ket bit k (MSB-first index).
inline bool eval_cnf(const CnfFormula& f, std::uint64_t index) {
  for (const auto& clause : f.clauses) {
    bool satisfied = false;
    for (std::int32_t lit : clause) {
      const std::uint32_t var = static_cast<std::uint32_t>(lit > 0 ? lit : -lit);
      const bool bit = (index >> (f.num_vars - var)) & 1u;
      if (bit == (lit > 0)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

namespace detail {

inline bool parse_int(std::string_view tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t i = (tok[0] == '-') ? 1 : 0;
  if (i == tok.size()) return false;
  long long v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    v = v * 10 + (tok[i] - '0');
    if (v > std::numeric_limits<std::int32_t>::max()) return false;
  }
  out = (tok[0] == '-') ? -v : v;
  return true;
}

}  // namespace detail

// Standard DIMACS CNF: 'c' comment lines, a "p cnf <vars> <clauses>" header,
// then whitespace-separated signed literals with each clause terminated by 0.
// Clauses may span lines. LF and CRLF both accepted. The clause count must
// match the header exactly.
inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<std::int32_t> current;
  bool in_clause = false;
  std::size_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (line[pos] == 'c') continue;

    if (line[pos] == 'p') {
      if (have_header) throw DimacsSyntaxError(line_no, "duplicate header");
      std::istringstream hs(line.substr(pos));
      std::string p, fmt;
      long long vars = 0, clauses = 0;
      if (!(hs >> p >> fmt >> vars >> clauses) || p != "p" || fmt != "cnf" || vars <= 0 || clauses < 0)
        throw DimacsSyntaxError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      std::string rest;
      if (hs >> rest) throw DimacsSyntaxError(line_no, "trailing tokens after header");
      formula.num_vars = static_cast<std::uint32_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }

    if (!have_header) throw DimacsSyntaxError(line_no, "missing 'p cnf' header before clause data");

    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      long long lit;
      if (!detail::parse_int(tok, lit))
        throw DimacsSyntaxError(line_no, "expected integer literal, got '" + tok + "'");
      if (lit == 0) {
        if (current.empty()) throw DimacsSyntaxError(line_no, "empty clause");
        formula.clauses.push_back(current);
        current.clear();
        in_clause = false;
      } else {
        const long long var = lit > 0 ? lit : -lit;
        if (var > static_cast<long long>(formula.num_vars))
          throw DimacsLiteralOutOfRange(line_no, "literal " + std::to_string(lit) + " exceeds declared " +
                                                     std::to_string(formula.num_vars) + " variables");
        current.push_back(static_cast<std::int32_t>(lit));
        in_clause = true;
      }
    }
  }

  if (!have_header) throw DimacsSyntaxError(line_no == 0 ? 1 : line_no, "missing 'p cnf' header");
  if (in_clause) throw DimacsSyntaxError(line_no, "unterminated clause (no closing 0)");
  if (formula.clauses.size() != declared_clauses)
    throw DimacsHeaderMismatch("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                               std::to_string(formula.clauses.size()));
  return formula;
}

inline CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

inline std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (std::int32_t lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Oracles: the decision function f over n-bit strings
// ---------------------------------------------------------------------------

enum class BuiltinKind { AllTrue, AllFalse, Parity, SingleSolution, Eq7Demo };

class Oracle {
 public:
  struct Table {
    std::vector<bool> bits;  // length 2^arity
  };
  struct Builtin {
    BuiltinKind kind;
    std::uint64_t param = 0;  // solution index for SingleSolution
  };

  static Oracle from_truth_table(std::uint32_t arity, std::vector<bool> bits) {
    if (bits.size() != dimension(arity)) throw Error("truth table length must be 2^arity");
    return Oracle(arity, Table{std::move(bits)});
  }

  static Oracle from_cnf(CnfFormula f) {
    if (f.num_vars == 0) throw Error("formula needs at least one variable");
    for (const auto& clause : f.clauses) {
      if (clause.empty()) throw Error("empty clause");
      for (std::int32_t lit : clause) {
        const std::int64_t var = lit > 0 ? lit : -std::int64_t(lit);
        if (var < 1 || var > f.num_vars)
          throw Error("literal " + std::to_string(lit) + " out of range");
      }
    }
    const std::uint32_t arity = f.num_vars;
    return Oracle(arity, std::move(f));
  }

  static Oracle all_true(std::uint32_t arity) { return Oracle(arity, Builtin{BuiltinKind::AllTrue}); }
  static Oracle all_false(std::uint32_t arity) { return Oracle(arity, Builtin{BuiltinKind::AllFalse}); }
  // True iff the bit string has odd parity.
  static Oracle parity(std::uint32_t arity) { return Oracle(arity, Builtin{BuiltinKind::Parity}); }
  static Oracle single_solution(std::uint32_t arity, std::uint64_t index) {
    if (index >= dimension(arity)) throw Error("single-solution index out of range");
    return Oracle(arity, Builtin{BuiltinKind::SingleSolution, index});
  }
  // Three-qubit demo oracle with solutions |001> and |011>.
  static Oracle eq7_demo() { return Oracle(3, Builtin{BuiltinKind::Eq7Demo}); }

  std::uint32_t arity() const { return arity_; }

  bool eval_index(std::uint64_t index) const {
    return std::visit(
        [&](const auto& body) -> bool {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, Table>) {
            return body.bits[index];
          } else if constexpr (std::is_same_v<T, CnfFormula>) {
            return eval_cnf(body, index);
          } else {
            switch (body.kind) {
              case BuiltinKind::AllTrue: return true;
              case BuiltinKind::AllFalse: return false;
              case BuiltinKind::Parity: return (std::popcount(index) & 1) != 0;
              case BuiltinKind::SingleSolution: return index == body.param;
              case BuiltinKind::Eq7Demo: return index == 1 || index == 3;
            }
            return false;
          }
        },
        body_);
  }

  const CnfFormula* cnf() const { return std::get_if<CnfFormula>(&body_); }

  // Short human-readable tag for run manifests.
  std::string describe() const {
    return std::visit(
        [&](const auto& body) -> std::string {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, Table>) {
            return "table[arity=" + std::to_string(arity_) + "]";
          } else if constexpr (std::is_same_v<T, CnfFormula>) {
            return "cnf[vars=" + std::to_string(body.num_vars) +
                   ",clauses=" + std::to_string(body.clauses.size()) + "]";
          } else {
            switch (body.kind) {
              case BuiltinKind::AllTrue: return "builtin:all-true";
              case BuiltinKind::AllFalse: return "builtin:all-false";
              case BuiltinKind::Parity: return "builtin:parity";
              case BuiltinKind::SingleSolution:
                return "builtin:single:" + to_bit_string(body.param, arity_);
              case BuiltinKind::Eq7Demo: return "builtin:eq7demo";
            }
            return "builtin:?";
          }
        },
        body_);
  }

 private:
  template <class Body>
  Oracle(std::uint32_t arity, Body&& body) : arity_(arity), body_(std::forward<Body>(body)) {}

  std::uint32_t arity_;
  std::variant<Table, CnfFormula, Builtin> body_;
};

inline bool eval_oracle(const Oracle& oracle, BitString x) {
  if (x.n != oracle.arity()) throw ArityMismatch("bit string has " + std::to_string(x.n) +
                                                 " bits, oracle arity is " + std::to_string(oracle.arity()));
  return oracle.eval_index(x.value);
}

// Exhaustive evaluation over all 2^n inputs; the classical reference used to
// confirm sampled solutions and to check the interference pipeline.
inline std::vector<std::uint64_t> brute_force_solutions(const Oracle& oracle,
                                                        std::uint32_t cap = kDefaultQubitCap) {
  if (oracle.arity() > cap)
    throw CapExceeded("arity " + std::to_string(oracle.arity()) + " above cap " + std::to_string(cap));
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = dimension(oracle.arity());
  for (std::uint64_t i = 0; i < dim; ++i)
    if (oracle.eval_index(i)) out.push_back(i);
  return out;
}

inline std::vector<bool> compile_to_table(const Oracle& oracle, std::uint32_t cap = kDefaultQubitCap) {
  if (oracle.arity() > cap)
    throw CapExceeded("arity " + std::to_string(oracle.arity()) + " above cap " + std::to_string(cap));
  const std::uint64_t dim = dimension(oracle.arity());
  std::vector<bool> bits(dim);
  for (std::uint64_t i = 0; i < dim; ++i) bits[i] = oracle.eval_index(i);
  return bits;
}

// Builds an oracle from a CLI-style builtin name: all-true, all-false,
// parity, eq7demo, or single:<bits>.
inline Oracle make_builtin(std::string_view name, std::uint32_t arity) {
  if (name == "all-true") return Oracle::all_true(arity);
  if (name == "all-false") return Oracle::all_false(arity);
  if (name == "parity") return Oracle::parity(arity);
  if (name == "eq7demo") {
    if (arity != 3) throw Error("builtin eq7demo is fixed at 3 qubits");
    return Oracle::eq7_demo();
  }
  constexpr std::string_view prefix = "single:";
  if (name.starts_with(prefix)) {
    const BitString b = parse_bit_string(name.substr(prefix.size()));
    if (b.n != arity)
      throw Error("single:<bits> needs exactly " + std::to_string(arity) + " bits");
    return Oracle::single_solution(arity, b.value);
  }
  throw Error("unknown builtin oracle '" + std::string(name) + "'");
}

}  // namespace qic
