#include "copmin/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "copmin/bounds.hpp"
#include "copmin/gadgets.hpp"
#include "copmin/ldlt.hpp"
#include "copmin/matrix_io.hpp"
#include "copmin/oracle.hpp"
#include "copmin/report.hpp"
#include "copmin/solver.hpp"

namespace copmin {

namespace {

/// Input problems are reported with this exit code.
struct InputError : Error {
  InputError(const std::string& what, int code) : Error(what), code(code) {}
  int code;
};

std::string load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'", exit_code::no_input);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RationalMatrix parse_input(const std::string& text, const std::string& path) {
  try {
    return parse_matrix(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what(), exit_code::data_error);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what(), exit_code::data_error);
  }
}

Rational parse_rational_option(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(name, e.what());
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& name) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(name, "not an integer list: '" + text + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(name, "empty list");
  return out;
}

std::uint64_t max_nodes_from_env() {
  const char* env = std::getenv("COPMIN_MAX_NODES");
  if (!env || !*env) return EnumerationOptions{}.max_nodes;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw InputError("COPMIN_MAX_NODES is not a number", exit_code::usage);
  }
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'", exit_code::no_input);
  file << text;
}

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::StrictlyCopositive:
      return exit_code::ok;
    case SolveStatus::NotStrictlyCopositive:
      return exit_code::not_strictly_copositive;
    case SolveStatus::NotApplicable:
      return exit_code::not_applicable;
  }
  return exit_code::not_applicable;
}

std::string strategy_name(const CopMinResult& r) {
  return r.strategy ? std::string(to_string(*r.strategy)) : "none";
}

void print_vectors(const std::vector<IntVector>& vs, std::ostream& out) {
  for (const auto& v : vs) out << format_vector(v) << '\n';
}

void print_result(const CopMinResult& r, const std::string& header, std::ostream& out) {
  switch (r.status) {
    case SolveStatus::StrictlyCopositive:
      out << header << " = " << to_string(r.minimum) << '\n';
      print_vectors(r.representatives, out);
      break;
    case SolveStatus::NotStrictlyCopositive:
      out << "not strictly copositive\n";
      if (r.witness) out << "witness = " << format_vector(*r.witness) << '\n';
      if (r.witness_value) out << "value = " << to_string(*r.witness_value) << '\n';
      break;
    case SolveStatus::NotApplicable:
      out << "not applicable: " << r.reason << '\n';
      break;
  }
}

struct SolveArgs {
  std::string file;
  std::string lambda;
  std::string list_below;
  std::string strategy = "auto";
  unsigned threads = 1;
  std::string report;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = load(a.file);
  const RationalMatrix q = parse_input(text, a.file);
  SolverOptions opt;
  try {
    opt.strategy = parse_strategy_choice(a.strategy);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--strategy", e.what());
  }
  if (!a.lambda.empty()) opt.lambda = parse_rational_option(a.lambda, "--lambda");
  opt.enumeration.threads = std::max(1u, a.threads);
  opt.enumeration.max_nodes = max_nodes_from_env();

  CopMinResult r;
  if (!a.list_below.empty()) {
    r = list_below(q, parse_rational_option(a.list_below, "--list-below"), opt);
    print_result(r, "below", out);
  } else {
    r = min_cop(q, opt);
    print_result(r, "min", out);
  }
  if (!a.report.empty()) {
    RunReport rep;
    rep.command = a.list_below.empty() ? "solve" : "solve-list-below";
    rep.input_digest = fnv1a_hex(text);
    rep.status = std::string(to_string(r.status));
    rep.strategy = strategy_name(r);
    rep.minimum = r.status == SolveStatus::StrictlyCopositive ? to_string(r.minimum) : "";
    rep.vector_count = r.representatives.size();
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count();
    err << (a.report == "csv" ? RunReport::csv_header() + "\n" + rep.to_csv() : rep.to_json())
        << '\n';
  }
  return exit_for(r.status);
}

int cmd_ldlt(const std::string& file, const std::string& pivot, std::ostream& out) {
  const RationalMatrix q = parse_input(load(file), file);
  PivotStrategy strategy;
  try {
    strategy = parse_pivot_strategy(pivot);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--pivot", e.what());
  }
  const auto outcome = ldlt_decompose(q, strategy);
  if (const auto* nb = std::get_if<NeedsBlocks>(&outcome)) {
    out << "NEEDS_BLOCKS\nremaining =";
    for (Index i : nb->remaining) out << ' ' << i + 1;
    out << '\n';
    return exit_code::not_applicable;
  }
  const auto& f = std::get<LdltFactorization>(outcome);
  const Index n = f.dim();
  out << "perm =";
  for (Index i = 0; i < n; ++i) out << ' ' << f.perm(i) + 1;
  out << "\nL =\n";
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out << (j ? " " : "") << to_string(f.lower(i, j));
    out << '\n';
  }
  out << "D =";
  for (Index i = 0; i < n; ++i) out << ' ' << to_string(f.diagonal(i));
  out << "\nfirst_difficult = " << f.first_difficult + 1 << '\n';
  return exit_code::ok;
}

int cmd_spn(const std::string& file, std::ostream& out) {
  const RationalMatrix q = parse_input(load(file), file);
  const SpnOutcome outcome = spn_decompose(q);
  if (!outcome.split) {
    out << (outcome.status == SpnStatus::Inconclusive ? "INCONCLUSIVE" : "NOT_FOUND") << '\n';
    return exit_code::not_applicable;
  }
  out << format_matrix(outcome.split->psd) << format_matrix(outcome.split->nonnegative);
  return exit_code::ok;
}

int cmd_gadget(const std::string& a_list, std::int64_t s, const std::string& output,
               std::ostream& out) {
  SubsetSumInstance inst{parse_int_list(a_list, "--a"), s};
  RationalMatrix q;
  try {
    q = subset_sum_gadget(inst);
  } catch (const InvalidInstance& e) {
    throw CLI::ValidationError("--a/--s", e.what());
  }
  write_output(format_matrix(q), output, out);
  return exit_code::ok;
}

MatrixClass class_option(const std::string& name) {
  try {
    return parse_matrix_class(name);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--class", e.what());
  }
}

int cmd_gen(const std::string& cls, Index dim, std::uint64_t seed, std::int64_t range,
            const std::string& output, std::ostream& out) {
  if (dim < 2) throw CLI::ValidationError("--dim", "must be at least 2");
  if (range < 1) throw CLI::ValidationError("--range", "must be at least 1");
  try {
    const auto g = random_matrix(class_option(cls), dim, seed, range);
    write_output(format_matrix(g.matrix), output, out);
  } catch (const GenerationFailed& e) {
    throw InputError(e.what(), exit_code::not_applicable);
  }
  return exit_code::ok;
}

int cmd_oracle(const std::string& file, const std::string& box_text, std::ostream& out) {
  const RationalMatrix q = parse_input(load(file), file);
  std::vector<std::int64_t> box = parse_int_list(box_text, "--box");
  if (box.size() == 1) box.assign(static_cast<std::size_t>(q.rows()), box.front());
  if (static_cast<Index>(box.size()) != q.rows()) {
    throw CLI::ValidationError("--box", "length does not match the matrix dimension");
  }
  for (auto b : box) {
    if (b < 0) throw CLI::ValidationError("--box", "bounds must be nonnegative");
  }
  try {
    const OracleResult r = brute_force_min(q, box);
    out << "min = " << to_string(r.minimum) << '\n';
    print_vectors(r.vectors, out);
  } catch (const BoxTooLarge& e) {
    throw InputError(e.what(), exit_code::not_applicable);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--box", e.what());
  }
  return exit_code::ok;
}

struct BenchArgs {
  std::string cls;
  Index dim = 0;
  int count = 15;
  std::uint64_t seed = 0;
  std::int64_t range = 3;
  std::string strategy = "auto";
  unsigned threads = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const MatrixClass cls = class_option(a.cls);
  if (a.dim < 2) throw CLI::ValidationError("--dim", "must be at least 2");
  if (a.count < 1) throw CLI::ValidationError("--count", "must be positive");
  SolverOptions opt;
  try {
    opt.strategy = parse_strategy_choice(a.strategy);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--strategy", e.what());
  }
  opt.enumeration.threads = std::max(1u, a.threads);
  opt.enumeration.max_nodes = max_nodes_from_env();

  std::map<std::string, int> by_status;
  std::map<std::string, int> by_strategy;
  out << "dim,seed,status,strategy,millis\n";
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
    const auto start = std::chrono::steady_clock::now();
    std::string status;
    std::string strategy = "none";
    try {
      const auto g = random_matrix(cls, a.dim, seed, a.range);
      const CopMinResult r = min_cop(g.matrix, opt);
      status = std::string(to_string(r.status));
      if (r.status == SolveStatus::NotApplicable) status += ":" + r.reason;
      strategy = strategy_name(r);
    } catch (const GenerationFailed&) {
      status = "generation-failed";
    } catch (const NodeLimitExceeded&) {
      status = "node-limit";
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    ++by_status[status];
    ++by_strategy[strategy];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    out << a.dim << ',' << seed << ',' << status << ',' << strategy << ',' << buf << '\n';
  }
  out << "# class=" << to_string(cls) << " dim=" << a.dim << " count=" << a.count << '\n';
  for (const auto& [k, v] : by_status) out << "# status " << k << " " << v << '\n';
  for (const auto& [k, v] : by_strategy) out << "# strategy " << k << " " << v << '\n';
  if (cls == MatrixClass::SpnTwoNeg) {
    out << "# spn2neg matrices come from a rejection sampler, not a reference generator\n";
  }
  return exit_code::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copositive minimum of symmetric rational matrices", "copmin"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Copositive minimum and all its representatives");
  s->add_option("file", solve.file, "Matrix file (text or JSON)")->required();
  s->add_option("--lambda", solve.lambda, "Starting radius p/q");
  s->add_option("--list-below", solve.list_below, "List every vector with value <= p/q");
  s->add_option("--strategy", solve.strategy, "auto|pd|psd|one-difficult|spn|split");
  s->add_option("--threads", solve.threads, "Enumeration worker threads");
  s->add_option("--report", solve.report, "Print a run report to stderr")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string ldlt_file;
  std::string pivot = "phase12";
  auto* l = app.add_subcommand("ldlt", "Exact LDLT factorization with pivoting");
  l->add_option("file", ldlt_file, "Matrix file")->required();
  l->add_option("--pivot", pivot, "none|phase1|phase12");

  std::string spn_file;
  auto* sp = app.add_subcommand("spn", "Split into semidefinite plus nonnegative parts");
  sp->add_option("file", spn_file, "Matrix file")->required();

  std::string a_list;
  std::int64_t target = 0;
  std::string gadget_out;
  auto* g = app.add_subcommand("gadget", "Subset-sum gadget matrix");
  g->add_option("--a", a_list, "Comma-separated positive weights")->required();
  g->add_option("--s", target, "Target sum")->required();
  g->add_option("-o,--output", gadget_out, "Output file");

  std::string gen_class;
  Index gen_dim = 0;
  std::uint64_t gen_seed = 0;
  std::int64_t gen_range = 3;
  std::string gen_out;
  auto* gn = app.add_subcommand("gen", "Random test matrix");
  gn->add_option("--class", gen_class, "psd|spn|spn2neg")->required();
  gn->add_option("--dim", gen_dim, "Dimension")->required();
  gn->add_option("--seed", gen_seed, "PRNG seed")->required();
  gn->add_option("--range", gen_range, "Entry range of the factor");
  gn->add_option("-o,--output", gen_out, "Output file");

  std::string oracle_file;
  std::string box;
  auto* o = app.add_subcommand("oracle", "Brute-force minimum over a box");
  o->add_option("file", oracle_file, "Matrix file")->required();
  o->add_option("--box", box, "Uniform bound B or list b1,b2,...")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Solve a batch of random matrices, CSV output");
  b->add_option("--class", bench.cls, "psd|spn|spn2neg")->required();
  b->add_option("--dim", bench.dim, "Dimension")->required();
  b->add_option("--count", bench.count, "Number of matrices");
  b->add_option("--seed", bench.seed, "First seed")->required();
  b->add_option("--range", bench.range, "Entry range of the factor");
  b->add_option("--strategy", bench.strategy, "auto|pd|psd|one-difficult|spn|split");
  b->add_option("--threads", bench.threads, "Enumeration worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (s->parsed()) return cmd_solve(solve, out, err);
    if (l->parsed()) return cmd_ldlt(ldlt_file, pivot, out);
    if (sp->parsed()) return cmd_spn(spn_file, out);
    if (g->parsed()) return cmd_gadget(a_list, target, gadget_out, out);
    if (gn->parsed()) return cmd_gen(gen_class, gen_dim, gen_seed, gen_range, gen_out, out);
    if (o->parsed()) return cmd_oracle(oracle_file, box, out);
    if (b->parsed()) return cmd_bench(bench, out);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::usage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const NodeLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::node_limit;
  }
  return exit_code::usage;
}

}  // namespace copmin
