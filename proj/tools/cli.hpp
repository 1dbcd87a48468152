#pragma once

// Command-line front end. Exit codes:
//   0 success            4 formulas not equivalent   7 runtime contract violation
//   1 formula syntax     5 too many atoms            8 cannot write trace file
//   2 budget exceeded    6 well-formedness failed
//   3 --trace without --engine machine
// Usage errors are reported by CLI11 with its own (>= 100) codes.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cnfkit/cnfkit.hpp"

namespace cnf::cli {

enum ExitCode : int {
  kOk = 0,
  kSyntax = 1,
  kBudget = 2,
  kTraceEngine = 3,
  kNotEquivalent = 4,
  kTooManyAtoms = 5,
  kNotWellFormed = 6,
  kContract = 7,
  kIo = 8,
};

namespace detail {

struct ConvertArgs {
  std::string formula;
  std::string engine = "direct";
  bool dimacs = false;
  std::optional<std::string> trace;
  bool checked = false;
  std::size_t max_nodes = Options{}.max_nodes;
};

inline int convert(const ConvertArgs& args, std::ostream& out, std::ostream& err) {
  if (args.trace && args.engine != "machine") {
    err << "error: --trace requires --engine machine\n";
    return kTraceEngine;
  }
  Formula phi = parse(args.formula);

  Options options;
  options.checked = args.checked;
  options.max_nodes = args.max_nodes;

  std::ofstream trace_file;
  if (args.trace) {
    trace_file.open(*args.trace, std::ios::binary);
    if (!trace_file) {
      err << "error: cannot open trace file '" << *args.trace << "'\n";
      return kIo;
    }
  }

  std::optional<FormulaWI> result;
  if (args.engine == "cps") {
    result = cps::to_cnf_cps(phi, options);
  } else if (args.engine == "machine") {
    machine::TraceSink sink;
    if (args.trace) sink = machine::json_lines_sink(trace_file);
    result = machine::to_cnf_machine(phi, sink, options);
  } else {
    result = direct::to_cnf(phi, options);
  }

  if (args.trace) {
    trace_file.flush();
    if (!trace_file) {
      err << "error: failed writing trace file '" << *args.trace << "'\n";
      return kIo;
    }
  }

  if (args.dimacs) {
    out << to_dimacs(*result).str();
  } else {
    out << print(*result) << '\n';
  }
  return kOk;
}

inline int equiv(const std::string& lhs_text, const std::string& rhs_text, std::ostream& out) {
  const Formula lhs = parse(lhs_text);
  const Formula rhs = parse(rhs_text);
  const Equivalence eq = equivalent(lhs, rhs);
  if (eq) {
    out << "equivalent\n";
    return kOk;
  }
  std::vector<std::string> order = atoms(lhs);
  for (const std::string& a : atoms(rhs))
    if (std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
  out << format_valuation(*eq.counterexample, order) << '\n';
  return kNotEquivalent;
}

inline int check(const std::string& text, bool nnf, bool cnf_shape, std::ostream& out,
                 std::ostream& err) {
  const auto phi = narrow(parse(text));
  if (!phi) {
    err << "error: '->' is not allowed here; expected an implication-free formula\n";
    return kSyntax;
  }
  if (!nnf && !cnf_shape) nnf = cnf_shape = true;
  if (nnf) {
    if (!wf_negations_of_literals(*phi)) {
      out << "wf_negations_of_literals: fail\n";
      return kNotWellFormed;
    }
    out << "wf_negations_of_literals: pass\n";
  }
  if (cnf_shape) {
    if (!wf_conjunctions_of_disjunctions(*phi)) {
      out << "wf_conjunctions_of_disjunctions: fail\n";
      return kNotWellFormed;
    }
    out << "wf_conjunctions_of_disjunctions: pass\n";
  }
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Propositional formula to conjunctive normal form converter", "cnfkit"};
  app.require_subcommand(1);

  detail::ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "Convert a formula to conjunctive normal form");
  convert->add_option("formula", conv.formula, "Formula text")->required();
  convert->add_option("--engine", conv.engine, "Conversion engine")
      ->check(CLI::IsMember({"direct", "cps", "machine"}));
  convert->add_flag("--dimacs", conv.dimacs, "Print DIMACS CNF instead of formula text");
  convert->add_option("--trace", conv.trace, "Write the machine trace as JSON lines to FILE");
  convert->add_flag("--checked", conv.checked, "Verify contracts while converting");
  convert->add_option("--max-nodes", conv.max_nodes, "Formula node budget")
      ->check(CLI::PositiveNumber);

  std::string lhs, rhs;
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence by truth table");
  equiv->add_option("formula1", lhs, "First formula")->required();
  equiv->add_option("formula2", rhs, "Second formula")->required();

  std::string wf_text;
  bool want_nnf = false;
  bool want_cnf = false;
  auto* check = app.add_subcommand("check", "Check normal-form predicates");
  check->add_option("formula", wf_text, "Implication-free formula")->required();
  check->add_flag("--nnf", want_nnf, "Check negation normal form");
  check->add_flag("--cnf", want_cnf, "Check conjunctive normal form shape");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (convert->parsed()) return detail::convert(conv, out, err);
    if (equiv->parsed()) return detail::equiv(lhs, rhs, out);
    return detail::check(wf_text, want_nnf, want_cnf, out, err);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kSyntax;
  } catch (const OutputBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const DepthLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const TooManyAtoms& e) {
    err << "error: " << e.what() << '\n';
    return kTooManyAtoms;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kContract;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cnfkit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cnf::cli
