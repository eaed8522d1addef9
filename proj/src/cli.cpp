#include "xv/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "xv/chain_solver.hpp"
#include "xv/defaulting.hpp"
#include "xv/lang/eval.hpp"
#include "xv/lang/infer.hpp"
#include "xv/lang/parser.hpp"
#include "xv/rows.hpp"
#include "xv/solver.hpp"

namespace xv::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

struct Config {
  std::string command;
  std::string solver = "chains";
  bool generalized = false;
  bool no_default = false;
  bool expose = false;
  bool trace = false;
  std::string input;
  std::string inline_text;
};

SolverConfig solver_config(const Config& c, std::ostream& trace_out) {
  SolverConfig cfg;
  cfg.kind = *parse_solver_kind(c.solver);
  cfg.flags.generalized = c.generalized;
  if (c.trace)
    cfg.trace = [&trace_out](const TraceRecord& r) { trace_out << format_trace(r) << "\n"; };
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kUsage, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lang::Program parse_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return lang::parse_program(text);
  } catch (const lang::SyntaxError& e) {
    throw Failure{kUsage, path + ":" + e.what()};
  }
}

lang::CheckedProgram check(const Config& c, lang::Program prog, std::ostream& err) {
  lang::CheckOptions opts;
  opts.solver = solver_config(c, err);
  opts.defaulting = !c.no_default;
  opts.expose_constructors = c.expose;
  try {
    return lang::check_program(std::move(prog), opts);
  } catch (const lang::TypeError& e) {
    throw Failure{kTypeError, c.input + ":" + e.what()};
  } catch (const AmbiguityError& e) {
    throw Failure{kAmbiguous, c.input + ": " + e.what()};
  } catch (const ConflictError& e) {
    throw Failure{kAmbiguous, c.input + ": " + e.what()};
  } catch (const ResidualError& e) {
    throw Failure{kTypeError, c.input + ": " + e.what()};
  } catch (const DepthExceeded& e) {
    throw Failure{kTypeError, c.input + ": " + e.what()};
  }
}

int cmd_check(const Config& c, std::ostream& out, std::ostream& err) {
  lang::Program prog = parse_file(c.input);
  if (c.solver == "rows") {
    rows::RowResult r;
    try {
      r = rows::infer_rows(prog);
    } catch (const rows::RowError& e) {
      throw Failure{kTypeError, c.input + ":" + e.what()};
    }
    for (const auto& [name, text] : r.lets) out << text << "\n";
    if (r.main_type) out << "main : " << *r.main_type << "\n";
    return kOk;
  }
  lang::CheckedProgram cp = check(c, std::move(prog), err);
  for (const lang::LetInfo& l : cp.lets) out << lang::format_scheme(l.name, l.scheme) << "\n";
  if (cp.main) out << "main : " << lang::format_type_canonical(cp.main->type) << "\n";
  return kOk;
}

int cmd_run(const Config& c, std::ostream& out, std::ostream& err) {
  lang::Program prog = parse_file(c.input);
  if (!prog.main) throw Failure{kUsage, c.input + ": program has no main"};
  try {
    if (c.solver == "rows") {
      rows::RowResult r;
      try {
        r = rows::infer_rows(prog);
      } catch (const rows::RowError& e) {
        throw Failure{kTypeError, c.input + ":" + e.what()};
      }
      lang::Evaluator ev(prog, r.labels);
      out << lang::to_string(ev.eval_main()) << "\n";
      return kOk;
    }
    lang::CheckedProgram cp = check(c, std::move(prog), err);
    lang::Evaluator ev(cp);
    out << lang::to_string(ev.eval_main()) << "\n";
  } catch (const lang::PatternFailure& e) {
    throw Failure{kRuntime, std::string("pattern match failure: ") + e.what()};
  } catch (const lang::EvalError& e) {
    throw Failure{kRuntime, std::string("runtime error: ") + e.what()};
  }
  return kOk;
}

Type solver_type(const lang::TypeAst& t) {
  switch (t.tag) {
    case lang::TypeAst::Tag::Name: return Type::atom(t.name);
    case lang::TypeAst::Tag::Int: return Type::atom("Int");
    case lang::TypeAst::Tag::Bool: return Type::atom("Bool");
    case lang::TypeAst::Tag::Var: return Type::var(t.name);
    case lang::TypeAst::Tag::Coprod: return Type::coprod(solver_type(t.args[0]), solver_type(t.args[1]));
    default:
      throw Failure{kUsage, "predicates range over functors and coproducts, not " + lang::to_string(t)};
  }
}

int cmd_solve(const Config& c, std::ostream& out) {
  std::string text = c.inline_text.empty() ? c.input : c.inline_text;
  if (text.empty()) throw Failure{kUsage, "solve needs a predicate"};
  lang::PredAst ast;
  try {
    ast = lang::parse_pred(text);
  } catch (const lang::SyntaxError& e) {
    throw Failure{kUsage, std::string("predicate:") + e.what()};
  }
  Pred p{ast.kind, {}};
  for (const lang::TypeAst& a : ast.args) p.args.push_back(solver_type(a));
  bool explicit_out = p.kind == PredKind::Minus && !ast.open_output;
  if (p.kind == PredKind::Minus && ast.open_output) p.args.push_back(Type::var("?out"));
  SolverConfig cfg = solver_config(c, out);
  Solution s;
  try {
    s = solve(p, {}, cfg);
  } catch (const DepthExceeded& e) {
    throw Failure{kTypeError, e.what()};
  }
  if (explicit_out && is_holds(s) && std::get<Holds>(s).remainder) {
    try {
      improve(p, *std::get<Holds>(s).remainder, Subst{});
    } catch (const ImprovementConflict&) {
      s = Fails{};
    }
  }
  out << to_string(s) << "\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Extensible variants: solvers, checker and evaluator", "xv"};
  app.require_subcommand(1);
  auto add_flags = [&c](CLI::App* sub, bool program) {
    sub->add_option("--solver", c.solver, "chains | families | rows")
        ->check(CLI::IsMember({"chains", "families", "rows"}));
    sub->add_flag("--generalized", c.generalized, "enable the generalized :<: and :-: clauses");
    sub->add_flag("--trace", c.trace, "print one line per clause or equation attempt");
    if (program) {
      sub->add_flag("--no-default", c.no_default, "ignore default declarations");
      sub->add_flag("--expose-constructors", c.expose, "allow In/Inl/Inr patterns and .?.");
    }
  };
  CLI::App* check_cmd = app.add_subcommand("check", "print the inferred type of every binding");
  CLI::App* run_cmd = app.add_subcommand("run", "evaluate main");
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one predicate");
  for (CLI::App* sub : {check_cmd, run_cmd}) {
    add_flags(sub, true);
    sub->add_option("file", c.input, "program file")->required();
  }
  add_flags(solve_cmd, false);
  solve_cmd->add_option("predicate", c.input, "predicate text");
  solve_cmd->add_option("-e", c.inline_text, "predicate text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (c.generalized && c.solver == "families")
      throw Failure{kUsage, "--generalized has no type family translation"};
    if (c.generalized && c.solver == "rows")
      throw Failure{kUsage, "--generalized does not apply to the rows solver"};
    if (solve_cmd->parsed()) {
      if (c.solver == "rows") throw Failure{kUsage, "the rows solver only checks and runs programs"};
      return cmd_solve(c, out);
    }
    if (check_cmd->parsed()) return cmd_check(c, out, err);
    return cmd_run(c, out, err);
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  }
}

}  // namespace xv::cli
