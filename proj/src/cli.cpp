#include "hcons/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hcons/bdd.hpp"
#include "hcons/error.hpp"
#include "hcons/formula.hpp"
#include "hcons/lambda.hpp"
#include "hcons/report.hpp"

namespace hcons::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr std::uint64_t kNoMemoMaxElement = 8;

struct TautArgs {
  std::optional<unsigned> urquhart;
  std::optional<unsigned> pigeonhole;
  std::optional<std::string> file;
  bool no_memo = false;
};

struct BenchArgs {
  std::string suite;
  unsigned max = 0;
  bool json = false;
};

struct SortArgs {
  std::string list;
  bool no_memo = false;
};

RunReport check_formula(const std::string& command, const formula::Formula& f, bool memoize) {
  auto start = Clock::now();
  bdd::BddManager mgr(bdd::BddOptions{.memoize = memoize});
  bdd::BddRef root = formula::compile(mgr, f);
  RunReport r;
  r.command = command;
  r.result = mgr.is_tautology(root);
  r.node_count = mgr.node_count(root);
  r.pool_stats = mgr.pool().stats();
  r.memo_stats = mgr.memo_stats();
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::usage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_taut(const TautArgs& a, std::ostream& out) {
  formula::Formula f = formula::Formula::constant(true);
  std::string command = "taut";
  if (a.urquhart) {
    f = formula::urquhart(*a.urquhart);
    command += " --urquhart " + std::to_string(*a.urquhart);
  } else if (a.pigeonhole) {
    f = formula::pigeonhole(*a.pigeonhole);
    command += " --pigeonhole " + std::to_string(*a.pigeonhole);
  } else {
    f = formula::parse(read_file(*a.file));
    command += " --file " + *a.file;
  }
  RunReport r = check_formula(command, f, !a.no_memo);
  out << to_json(r) << '\n';
  return std::get<bool>(r.result) ? kExitOk : kExitNotTautology;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max == 0) raise(Errc::range, "--max must be >= 1");
  auto family = a.suite == "urquhart" ? &formula::urquhart : &formula::pigeonhole;
  if (!a.json) out << std::left << std::setw(6) << "size" << std::setw(8) << "taut" << std::setw(12) << "pool_nodes"
                   << "ms\n";
  bool all_taut = true;
  for (unsigned n = 1; n <= a.max; ++n) {
    RunReport r = check_formula("bench " + a.suite, family(n), true);
    r.size = n;
    const bool taut = std::get<bool>(r.result);
    all_taut = all_taut && taut;
    if (a.json) {
      out << to_json(r) << '\n';
    } else {
      out << std::setw(6) << n << std::setw(8) << (taut ? "yes" : "NO") << std::setw(12) << r.pool_stats.node_count
          << std::fixed << std::setprecision(3) << r.wall_time_ms << '\n';
    }
    out.flush();
    if (!taut) err << "hcons: " << a.suite << "(" << n << ") is not a tautology\n";
  }
  return all_taut ? kExitOk : kExitEngine;
}

std::vector<std::uint64_t> parse_csv(const std::string& text) {
  std::vector<std::uint64_t> xs;
  if (text.find_first_not_of(" \t") == std::string::npos) return xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) raise(Errc::syntax, "empty list element");
    item = item.substr(first, last - first + 1);
    if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
      raise(Errc::syntax, "'" + item + "' is not a natural number");
    }
    xs.push_back(std::stoull(item));
  }
  if (!text.empty() && text.back() == ',') raise(Errc::syntax, "trailing comma");
  return xs;
}

int cmd_lambda_sort(const SortArgs& a, std::ostream& out) {
  std::vector<std::uint64_t> xs = parse_csv(a.list);
  if (a.no_memo) {
    for (std::uint64_t x : xs) {
      if (x > kNoMemoMaxElement) {
        raise(Errc::range, "--no-memo limits elements to <= " + std::to_string(kNoMemoMaxElement));
      }
    }
  }
  auto start = Clock::now();
  lambda::LambdaManager m(lambda::LambdaOptions{.memoize = !a.no_memo});
  std::vector<std::uint64_t> sorted = m.sort(xs);
  RunReport r;
  r.command = "lambda-sort --list " + a.list + (a.no_memo ? " --no-memo" : "");
  r.result = sorted;
  r.node_count = m.pool().size();
  r.pool_stats = m.pool().stats();
  r.memo_stats = m.memo_stats();
  r.wall_time_ms = elapsed_ms(start);

  for (std::size_t i = 0; i < sorted.size(); ++i) out << (i ? "," : "") << sorted[i];
  out << '\n' << to_json(r) << '\n';
  return kExitOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::shape:
    case Errc::depth_exceeded:
    case Errc::contract_violation:
    case Errc::ill_ordered:
      return kExitEngine;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hash-consed BDD tautology checker and lambda-calculus normalizer", "hcons"};
  app.require_subcommand(1);

  TautArgs taut;
  auto* taut_cmd = app.add_subcommand("taut", "Check whether a formula is a tautology (exit 0 yes, 1 no)");
  auto* source = taut_cmd->add_option_group("source");
  source->add_option("--urquhart", taut.urquhart, "Urquhart formula U(N)");
  source->add_option("--pigeonhole", taut.pigeonhole, "Pigeonhole principle P(N)");
  source->add_option("--file", taut.file, "Formula file");
  source->require_option(1);
  taut_cmd->add_flag("--no-memo", taut.no_memo, "Disable operation memo tables");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark family at sizes 1..N");
  bench_cmd->add_option("suite", bench.suite, "urquhart | pigeonhole")
      ->required()
      ->check(CLI::IsMember({"urquhart", "pigeonhole"}));
  bench_cmd->add_option("--max", bench.max, "Largest size")->required();
  bench_cmd->add_flag("--json", bench.json, "One JSON record per line");

  SortArgs sort;
  auto* sort_cmd = app.add_subcommand("lambda-sort", "Sort naturals with a lambda-calculus quicksort");
  sort_cmd->add_option("--list", sort.list, "Comma-separated naturals")->required();
  sort_cmd->add_flag("--no-memo", sort.no_memo, "Disable lift/subst/hnf/nf memo tables");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hcons: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*taut_cmd) return cmd_taut(taut, out);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*sort_cmd) return cmd_lambda_sort(sort, out);
  } catch (const Error& e) {
    err << "hcons: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "hcons: out of memory\n";
    return kExitEngine;
  }
  return kExitUsage;
}

}  // namespace hcons::cli
