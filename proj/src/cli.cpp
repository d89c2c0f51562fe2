#include "divprod/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "divprod/arith.hpp"
#include "divprod/asymptotics.hpp"
#include "divprod/basis.hpp"
#include "divprod/constructions.hpp"
#include "divprod/enumeration.hpp"
#include "divprod/errors.hpp"
#include "divprod/property.hpp"

namespace divprod::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::uint64_t n = 0;
  unsigned h = 2;
  unsigned r = 1;
  unsigned s = 1;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  std::uint64_t terms = 10'000;
  std::uint64_t node_budget = 0;
  double c1 = 1.0;
  double c2 = 2.0;
  std::string cut = "sqrt-over-log";
  std::string format;
  std::string out_path;
  std::string file;
  std::string set_file;
  std::string basis_file;
  std::string hypergraph_out;
  bool timing = false;
};

Json witness_json(const std::optional<Witness>& w, bool ph) {
  if (!w) return nullptr;
  if (ph) return Json{{"pivot", w->pivot()}, {"cofactors", w->cofactors()}};
  return Json{{"left", w->left}, {"right", w->right}};
}

std::string real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

PrimeTable table_for(std::uint64_t n) { return PrimeTable(std::max<std::uint64_t>(n, 2)); }

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  if (c.format.empty()) return;
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw InvalidArgument("--format " + c.format + " is not supported by this subcommand");
}

void cmd_check(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto set = read_set_file(c.file);
  const auto result = possesses_ph(set, c.h);
  out << Json{{"h", c.h}, {"size", set.size()}, {"holds", result.holds},
              {"witness", witness_json(result.witness, true)}}.dump()
      << '\n';
}

void cmd_rs_check(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto set = read_set_file(c.file);
  const auto result = possesses_rs(set, c.r, c.s);
  out << Json{{"r", c.r}, {"s", c.s}, {"size", set.size()}, {"holds", result.holds},
              {"witness", witness_json(result.witness, false)}}.dump()
      << '\n';
}

void cmd_count(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto start = std::chrono::steady_clock::now();
  const auto report = count_exact_report(c.n, c.h, CountOptions{c.workers, c.node_budget});
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  Json j{{"n", c.n},
         {"h", c.h},
         {"count", report.count.to_string()},
         {"count_containing_one", report.containing_one.to_string()},
         {"count_avoiding_one", report.avoiding_one.to_string()},
         {"edges", report.edges},
         {"components", report.component_sizes.size()},
         {"component_sizes", report.component_sizes},
         {"free_vertices", report.free_vertices}};
  if (c.timing) j["seconds"] = elapsed.count();
  out << j.dump() << '\n';
}

void cmd_extremal(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto result = extremal_size(c.n, c.h);
  out << Json{{"n", c.n}, {"h", c.h}, {"size", result.size},
              {"example", result.example.values()}}.dump()
      << '\n';
}

void cmd_tn(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto table = table_for(c.n);
  const auto direct = tn_exact(c.n, table);
  const auto grouped = tn_grouped(c.n, table);
  out << Json{{"n", c.n},
              {"tn", direct.to_string()},
              {"grouped", grouped.to_string()},
              {"grouped_agrees", direct == grouped},
              {"log_tn", log_tn(c.n, table).magnitude}}.dump()
      << '\n';
}

void cmd_alpha(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto b = alpha_bracket(c.terms);
  out << Json{{"terms", c.terms},
              {"low", static_cast<double>(b.low)},
              {"high", static_cast<double>(b.high)}}.dump()
      << '\n';
}

void cmd_bounds(const RunConfig& c, std::ostream& out) {
  require_format(c, {"csv", "json"});
  if (c.h < 2) throw InvalidArgument("bounds are defined for h >= 2");
  const auto table = table_for(c.n);
  const auto env = c.h == 2 ? envelope_h2(c.n, BoundParams{c.c1, c.c2}, table)
                            : envelope_h3plus(c.n, table);
  const auto alpha = alpha_bracket(c.terms);
  const double log_t = log_tn(c.n, table).magnitude;
  if (c.format == "json") {
    out << Json{{"n", c.n}, {"h", c.h}, {"log_T", log_t},
                {"envelope_low", env.low.magnitude}, {"envelope_high", env.high.magnitude},
                {"alpha_low", static_cast<double>(alpha.low)},
                {"alpha_high", static_cast<double>(alpha.high)}}.dump()
        << '\n';
    return;
  }
  out << "n,h,log_T,envelope_low,envelope_high,alpha_low,alpha_high\n"
      << c.n << ',' << c.h << ',' << real(log_t) << ',' << real(env.low.magnitude) << ','
      << real(env.high.magnitude) << ',' << real(static_cast<double>(alpha.low)) << ','
      << real(static_cast<double>(alpha.high)) << '\n';
}

void cmd_construct_h2(const RunConfig& c, std::ostream& out) {
  require_format(c, {});
  const auto table = table_for(c.n);
  Rng rng(c.seed);
  const auto choices = random_a1_choices(c.n, table, rng);
  const auto graph = generate_linear_hypergraph(h2_triple_primes(c.n, table), rng.next());
  const auto family = construct_h2(c.n, choices, graph, table);
  if (!c.hypergraph_out.empty()) {
    std::ofstream g(c.hypergraph_out);
    if (!g) throw InvalidArgument("cannot write " + c.hypergraph_out);
    write_hypergraph(g, graph);
  }
  FamilySpec spec{c.n, 2, Cut::parse("sqrt"), c.seed};
  write_family(out, spec, family);
}

FamilySpec family_spec(const RunConfig& c) {
  return FamilySpec{c.n, c.h, Cut::parse(c.cut), c.seed};
}

void cmd_construct_h3(const RunConfig& c, std::ostream& out) {
  require_format(c, {});
  if (c.h < 3) throw InvalidArgument("construct-h3 requires --h >= 3");
  const auto table = table_for(c.n);
  const auto spec = family_spec(c);
  const auto admissible = h3plus_admissible(spec, table);
  Rng rng(c.seed);
  const auto family = construct_h3plus(spec, random_h3plus_choices(admissible, rng), table);
  write_family(out, spec, family);
}

void cmd_count_families(const RunConfig& c, std::ostream& out) {
  require_format(c, {"json"});
  const auto table = table_for(c.n);
  Json j{{"n", c.n}, {"h", c.h}};
  if (c.h == 2) {
    j["cut"] = "sqrt";
    j["count"] = count_a1_families(c.n, table).to_string();
  } else if (c.h >= 3) {
    const auto spec = family_spec(c);
    const auto counts = h3plus_choice_counts(spec, table);
    j["cut"] = describe_cut(spec);
    j["interval_lower"] = counts.interval.lower;
    j["primes"] = counts.primes.size();
    j["count"] = count_h3plus_families(spec, table).to_string();
  } else {
    throw InvalidArgument("count-families requires --h >= 2");
  }
  out << j.dump() << '\n';
}

void cmd_basis(const RunConfig& c, std::ostream& out) {
  require_format(c, {});
  const auto table = table_for(c.n);
  write_basis(out, build_basis(c.n, c.h, table));
}

void cmd_verify_injection(const RunConfig& c, std::ostream& out) {
  require_format(c, {});
  std::ifstream bin(c.basis_file);
  if (!bin) throw InvalidArgument("cannot open basis file: " + c.basis_file);
  // The header is read twice: once for n (to size the table), once by read_basis.
  std::string header;
  std::getline(bin, header);
  std::uint64_t n = 0;
  if (auto pos = header.find("n="); pos != std::string::npos) {
    n = std::strtoull(header.c_str() + pos + 2, nullptr, 10);
  }
  if (n < 1) throw InvalidArgument("basis file header lacks n=");
  const auto table = table_for(n);
  bin.clear();
  bin.seekg(0);
  const auto basis = read_basis(bin, table);
  const auto set = read_set_file(c.set_file);
  const auto cert = verify_injection(set, basis, table);
  write_certificate(out, cert);
  if (!cert.unmatched.empty()) {
    out << "# hall_set:";
    for (auto a : cert.hall_set) out << ' ' << a;
    out << "\n# hall_neighbourhood:";
    for (auto b : cert.hall_neighbourhood) out << ' ' << b;
    out << '\n';
  }
}

void report_error(std::ostream& err, const char* kind, const std::string& message,
                  const Json& witness = nullptr) {
  Json j{{"error", kind}, {"message", message}};
  if (!witness.is_null()) j["witness"] = witness;
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact computations for sets free of divisor-product relations a0 | a1...ah"};
  app.name("divprod");
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "Randomness seed for constructions")->capture_default_str();
  app.add_option("--workers", c.workers, "Worker threads (wall time only)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", c.out_path, "Write the result here instead of stdout");
  app.add_option("--format", c.format, "Output format (json or csv where supported)");

  std::function<void(const RunConfig&, std::ostream&)> action;
  auto sub = [&](const char* name, const char* help, auto fn) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&action, fn] { action = fn; });
    return s;
  };
  auto need_n = [&](CLI::App* s) { s->add_option("--n", c.n, "Universe [1..n]")->required(); };
  auto need_h = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--h", c.h, "Order h of the property")->check(CLI::PositiveNumber);
    if (required) o->required();
  };

  auto* check = sub("check", "Decide P_h for a set file; print verdict and witness", cmd_check);
  check->add_option("--file", c.file, "Set file")->required();
  need_h(check);

  auto* rs = sub("rs-check", "Decide P_{r,s} for a set file", cmd_rs_check);
  rs->add_option("--file", c.file, "Set file")->required();
  rs->add_option("--r", c.r, "Left tuple size")->required()->check(CLI::PositiveNumber);
  rs->add_option("--s", c.s, "Right tuple size")->required()->check(CLI::PositiveNumber);

  auto* count = sub("count", "Exact number of subsets of [n] with P_h", cmd_count);
  need_n(count);
  need_h(count);
  count->add_option("--node-budget", c.node_budget, "Give up after this many search nodes");
  count->add_flag("--timing", c.timing, "Include wall-clock seconds in the output");

  auto* extremal = sub("extremal", "Largest subset of [n] with P_h", cmd_extremal);
  need_n(extremal);
  need_h(extremal);

  auto* tn = sub("tn", "T(n) by direct and grouped products", cmd_tn);
  need_n(tn);

  auto* alpha = sub("alpha", "Bracket for prod (1+1/i)^(1/i)", cmd_alpha);
  alpha->add_option("--terms", c.terms, "Number of factors")->capture_default_str();

  auto* bounds = sub("bounds", "Log-domain envelopes around H_h(n) as CSV", cmd_bounds);
  need_n(bounds);
  need_h(bounds);
  bounds->add_option("--c1", c.c1, "Lower constant for h=2")->capture_default_str();
  bounds->add_option("--c2", c.c2, "Upper constant for h=2")->capture_default_str();
  bounds->add_option("--terms", c.terms, "Factors used for the alpha bracket")
      ->capture_default_str();

  auto* h2 = sub("construct-h2", "Random member of the A1 u A2 family (h=2)", cmd_construct_h2);
  need_n(h2);
  h2->add_option("--hypergraph-out", c.hypergraph_out, "Also write the triple system here");

  auto* h3 = sub("construct-h3", "Random member of the single-large-prime family (h>=3)",
                 cmd_construct_h3);
  need_n(h3);
  need_h(h3);
  h3->add_option("--cut", c.cut, "Interval lower end: sqrt-over-log, sqrt, or a number")
      ->capture_default_str();

  auto* fam = sub("count-families", "Exact size of the constructed family", cmd_count_families);
  need_n(fam);
  need_h(fam);
  fam->add_option("--cut", c.cut, "Interval lower end for h>=3")->capture_default_str();

  auto* basis = sub("basis", "Multiplicative basis of order h for [n]", cmd_basis);
  need_n(basis);
  need_h(basis);

  auto* inj = sub("verify-injection", "Match a P_h set into a basis", cmd_verify_injection);
  inj->add_option("--set", c.set_file, "Set file")->required();
  inj->add_option("--basis", c.basis_file, "Basis file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    report_error(err, "invalid-argument", e.what());
    return kInvalidArgument;
  }

  try {
    if (!action) throw InvalidArgument("no subcommand");
    if (c.out_path.empty()) {
      std::ostringstream buffer;
      action(c, buffer);
      out << buffer.str();
    } else {
      std::ostringstream buffer;
      action(c, buffer);
      std::ofstream file(c.out_path);
      if (!file) throw InvalidArgument("cannot write " + c.out_path);
      file << buffer.str();
    }
    return kSuccess;
  } catch (const PreconditionFailure& e) {
    report_error(err, to_string(e.kind()), e.what(), witness_json(e.witness(), true));
    return kPreconditionFailure;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    switch (e.kind()) {
      case ErrorKind::invalid_argument: return kInvalidArgument;
      case ErrorKind::resource_limit: return kResourceLimit;
      case ErrorKind::precondition: return kPreconditionFailure;
      case ErrorKind::internal: return kInternalError;
    }
    return kInternalError;
  } catch (const std::bad_alloc&) {
    report_error(err, "resource-limit", "out of memory");
    return kResourceLimit;
  } catch (const std::exception& e) {
    report_error(err, "internal-error", e.what());
    return kInternalError;
  }
}

}  // namespace divprod::cli
