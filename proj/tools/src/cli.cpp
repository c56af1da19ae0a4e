#include "norlund_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "norlund/catalog.hpp"
#include "norlund/errors.hpp"
#include "report_format.hpp"

namespace norlund::cli {

namespace {

struct Options {
  int precision = 256;
  long max_terms = 20000;
  std::string method = "auto";
  std::string tolerance;
  std::string format = "text";
  std::string parallel = "on";
  std::vector<std::string> ids;
  std::vector<std::string> params;
  bool all = false;
  std::string seed_corpus;
  long terms = 20;
};

Params parse_params(const std::vector<std::string>& raw) {
  Params out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("parameter '" + item + "' is not of the form NAME=VALUE");
    }
    out.emplace_back(item.substr(0, eq), Rational::parse(item.substr(eq + 1)));
  }
  return out;
}

VerifyConfig make_config(const Options& o) {
  VerifyConfig cfg;
  cfg.precision_bits = o.precision;
  cfg.max_terms = o.max_terms;
  cfg.method = parse_sum_method(o.method);
  if (!o.tolerance.empty()) {
    Rational t = Rational::parse(o.tolerance);
    if (t.sign() < 0) throw UsageError("tolerance must be non-negative");
    cfg.tolerance = t;
  }
  return cfg;
}

// Runs f(0..n-1) on a small worker pool; results land in caller-owned slots,
// so output order does not depend on scheduling. f must not throw.
template <class F>
void for_each_index(std::size_t n, bool parallel, F f) {
  unsigned workers = parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

VerificationReport failed_row(const Sample& s, const std::string& what) {
  VerificationReport r;
  r.id = s.id;
  r.sample = s.label;
  r.params = s.params;
  r.method = "error";
  r.notes.push_back("error: " + what);
  return r;
}

int verdict(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return kFailed;
  }
  return kPass;
}

int run_list(const Options& o, std::ostream& out) {
  std::vector<const Identity*> ids;
  if (o.ids.empty()) {
    for (const auto& e : catalog()) ids.push_back(&e);
  } else {
    for (const auto& id : o.ids) ids.push_back(&find_identity(id));
  }
  write_identities(out, ids, parse_format(o.format));
  return kPass;
}

int run_verify(Options o, std::ostream& out) {
  const Format format = parse_format(o.format);
  const VerifyConfig cfg = make_config(o);
  const bool corpus = !o.seed_corpus.empty();
  if (corpus) o.all = true;
  if (o.all && (!o.ids.empty() || !o.params.empty())) {
    throw UsageError("--all cannot be combined with --id or --param");
  }
  if (!o.all && o.ids.empty()) throw UsageError("verify needs --id or --all");

  std::vector<VerificationReport> reports;
  if (!o.params.empty()) {
    if (o.ids.size() != 1) throw UsageError("--param applies to exactly one --id");
    // explicit parameters: errors propagate and set the exit code
    reports.push_back(verify(o.ids.front(), parse_params(o.params), cfg));
  } else {
    std::vector<Sample> tasks;
    if (o.all) {
      for (const auto& e : catalog()) {
        for (auto& s : samples(e)) tasks.push_back(std::move(s));
      }
    } else {
      for (const auto& id : o.ids) {
        for (auto& s : samples(find_identity(id))) tasks.push_back(std::move(s));
      }
    }
    reports.resize(tasks.size());
    for_each_index(tasks.size(), o.parallel == "on", [&](std::size_t i) {
      try {
        reports[i] = verify_sample(find_identity(tasks[i].id), tasks[i], cfg);
      } catch (const std::exception& ex) {
        reports[i] = failed_row(tasks[i], ex.what());
      }
    });
  }

  if (corpus) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_json(r, cfg.precision_bits, false));
    std::ofstream file(o.seed_corpus);
    if (!file) throw UsageError("cannot write " + o.seed_corpus);
    file << arr.dump(2) << "\n";
  }
  write_reports(out, reports, format, cfg.precision_bits);
  return verdict(reports);
}

int run_cross_check(const Options& o, std::ostream& out) {
  const VerifyConfig cfg = make_config(o);
  const auto reports = cross_checks(cfg);
  write_reports(out, reports, parse_format(o.format), cfg.precision_bits);
  return verdict(reports);
}

int run_dump(const Options& o, std::ostream& out) {
  if (o.ids.size() != 1) throw UsageError("dump needs exactly one --id");
  if (o.terms > o.max_terms) {
    throw UsageError("--terms " + std::to_string(o.terms) + " exceeds --max-terms " + std::to_string(o.max_terms));
  }
  const Identity& e = find_identity(o.ids.front());
  const Params ps = parse_params(o.params);
  const auto special = validate(e, ps);
  const int p = o.precision;
  const int w = p + 64;
  const PrecisionContext ctx(w, 32);

  TermStream stream;
  BigReal partial = BigReal::zero(w);
  BigReal rhs = BigReal::zero(w);
  if (special) {
    stream = e.specials[*special].lhs();
    rhs = e.specials[*special].rhs(ctx);
  } else {
    if (e.conditioning) e.conditioning(ps, p);
    stream = e.lhs(ps);
    rhs = e.rhs(ps, ctx);
    if (e.correction) {
      if (auto c = e.correction(ps)) partial = constvec_eval(*c, ctx);
    }
  }
  rhs = rhs.rescale(w);
  partial = partial.rescale(w);

  StreamCursor cursor(stream, w);
  std::vector<DumpRow> rows;
  for (long i = 0; i < o.terms; ++i) {
    const StreamTerm t = cursor.next();
    partial += t.term;
    rows.push_back({t.index, t.term, partial, (partial - rhs).abs()});
  }
  write_dump(out, rows, parse_format(o.format), p);
  return kPass;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--precision", o.precision, "working precision in bits")
      ->check(CLI::Range(64, 3072))
      ->envname("NORLUND_PRECISION");
  app->add_option("--max-terms", o.max_terms, "term budget per series")->check(CLI::Range(1L, 100000000L));
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_selection(CLI::App* app, Options& o) {
  app->add_option("--id", o.ids, "identity id (repeatable)");
  app->add_option("--param", o.params, "parameter NAME=VALUE, VALUE rational (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Checks series identities for digamma differences numerically"};
  app.name("norlund");
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "show catalog entries");
  list->add_option("--id", o.ids, "identity id (repeatable)");
  list->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* verify_cmd = app.add_subcommand("verify", "sum series and compare with closed forms");
  add_common(verify_cmd, o);
  add_selection(verify_cmd, o);
  verify_cmd->add_flag("--all", o.all, "every default sample of every identity");
  verify_cmd->add_option("--method", o.method, "summation method")
      ->check(CLI::IsMember({"auto", "direct", "levin", "richardson"}));
  verify_cmd->add_option("--tolerance", o.tolerance, "absolute tolerance, decimal or p/q");
  verify_cmd->add_option("--parallel", o.parallel, "run samples concurrently")->check(CLI::IsMember({"on", "off"}));
  verify_cmd->add_option("--seed-corpus", o.seed_corpus, "write the full default matrix as JSON to FILE");

  auto* dump = app.add_subcommand("dump", "print terms and partial sums of one series");
  add_common(dump, o);
  add_selection(dump, o);
  dump->add_option("--terms", o.terms, "number of terms")->check(CLI::Range(1L, 100000000L));

  auto* cross = app.add_subcommand("cross-check", "consistency relations between identities");
  add_common(cross, o);
  cross->add_option("--method", o.method, "summation method")
      ->check(CLI::IsMember({"auto", "direct", "levin", "richardson"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "norlund: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (list->parsed()) return run_list(o, out);
    if (verify_cmd->parsed()) return run_verify(o, out);
    if (dump->parsed()) return run_dump(o, out);
    return run_cross_check(o, out);
  } catch (const UsageError& e) {
    err << "norlund: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const NotFound& e) {
    err << "norlund: not found: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "norlund: domain: " << e.what() << "\n";
    return kDomain;
  } catch (const IllConditioned& e) {
    err << "norlund: ill-conditioned: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "norlund: error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace norlund::cli
