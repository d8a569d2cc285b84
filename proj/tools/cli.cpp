#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "stockseq/alternating.hpp"
#include "stockseq/errors.hpp"
#include "stockseq/gasoline.hpp"
#include "stockseq/instances.hpp"
#include "stockseq/io.hpp"
#include "stockseq/oracles.hpp"
#include "stockseq/slated.hpp"
#include "stockseq/verify.hpp"

namespace stockseq::cli {

namespace {

using io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kAlgorithms = {"pairing", "approx179", "lp-round", "slated3", "oracle"};
const std::vector<std::string> kFamilies = {"gap-alt", "tight-alt", "gas-gap", "lp-gap", "consec", "3part", "random"};

struct Outcome {
  Arrangement arrangement;  // sorted indices
  StockProfile profile;
  Json extra = Json::object();
  std::string trace;
};

std::string_view branch_name(alternating::Branch b) {
  switch (b) {
    case alternating::Branch::PairingSmallAlpha:
      return "pairing-small-alpha";
    case alternating::Branch::PairingLargeLowerBound:
      return "pairing-large-lower-bound";
    case alternating::Branch::Batches:
      return "batches";
  }
  return "unknown";
}

bool compatible(const std::string& alg, InstanceKind kind) {
  if (alg == "pairing" || alg == "approx179") return kind == InstanceKind::Alternating;
  if (alg == "lp-round") return kind == InstanceKind::Gasoline;
  if (alg == "slated3") return kind == InstanceKind::Slated;
  return true;
}

Outcome run_oracle(const AnyInstance& any) {
  Outcome o;
  oracles::OracleResult r;
  if (const auto* a = std::get_if<AlternatingInstance>(&any)) {
    r = oracles::exact_alternating(*a);
    o.profile = evaluate_alternating(*a, r.witness);
  } else if (const auto* g = std::get_if<GasolineInstance>(&any)) {
    r = oracles::exact_gasoline(*g);
    o.profile = evaluate_gasoline(*g, r.witness.sigma);
  } else {
    const auto& s = std::get<SlatedInstance>(any);
    r = oracles::exact_slated(s);
    o.profile = evaluate_slated(s, r.witness);
  }
  o.arrangement = r.witness;
  o.extra["oracle"] = {{"optimum", r.optimum.to_string()}, {"explored", r.explored}};
  return o;
}

Outcome run_algorithm(const AnyInstance& any, const std::string& alg, bool want_trace, slated::PhaseOrder order) {
  if (!compatible(alg, kind_of(any))) {
    throw NotApplicable("algorithm " + alg + " does not apply to " + std::string(kind_name(kind_of(any))) +
                        " instances");
  }
  if (alg == "oracle") return run_oracle(any);
  Outcome o;
  if (alg == "pairing") {
    const auto& inst = std::get<AlternatingInstance>(any);
    const auto m = alternating::sorted_matching(inst);
    o.arrangement = alternating::pairing_algorithm(inst);
    o.profile = evaluate_alternating(inst, o.arrangement);
    o.extra["certificate"] = {{"mu", inst.mu().to_string()},
                              {"alpha1", m.alpha1.to_string()},
                              {"beta1", m.beta1.to_string()},
                              {"bound", (inst.mu() + std::max(m.alpha1, m.beta1)).to_string()}};
  } else if (alg == "approx179") {
    const auto& inst = std::get<AlternatingInstance>(any);
    const auto r = alternating::approx_alternating(inst, alternating::default_epsilon());
    o.arrangement = r.arrangement;
    o.profile = evaluate_alternating(inst, o.arrangement);
    o.extra["certificate"] = {{"branch", std::string(branch_name(r.branch))},
                              {"eps", alternating::default_epsilon().to_string()},
                              {"mu", r.mu.to_string()},
                              {"alpha1", r.alpha1.to_string()},
                              {"lower_bound", r.lower_bound ? Json(r.lower_bound->to_string()) : Json(nullptr)},
                              {"batch_count", r.batch_count},
                              {"oriented_swap", r.oriented_swap}};
  } else if (alg == "lp-round") {
    const auto& inst = std::get<GasolineInstance>(any);
    const auto r = gasoline::gasoline_2approx(inst, want_trace);
    o.arrangement = Arrangement{r.pi, identity_permutation(inst.size())};
    o.profile = r.profile;
    const auto& c = r.certificate;
    o.extra["certificate"] = {{"eta_lp", c.eta_lp.to_string()},       {"alpha_lp", c.alpha_lp.to_string()},
                              {"beta_lp", c.beta_lp.to_string()},     {"mu_x", c.mu_x.to_string()},
                              {"bound", c.bound.to_string()},         {"transform_count", c.transform_count},
                              {"lp_pivots", c.lp_pivots}};
    if (want_trace) o.trace = gasoline::trace_csv(r.trace);
  } else if (alg == "slated3") {
    const auto& inst = std::get<SlatedInstance>(any);
    const auto r = slated::slated_3approx(inst, order);
    o.arrangement = r.arrangement;
    o.profile = r.profile;
    const auto& c = r.certificate;
    o.extra["certificate"] = {{"eta_lp", c.eta_lp.to_string()},
                              {"mu_x", c.mu_x.to_string()},
                              {"mu_y", c.mu_y.to_string()},
                              {"phase1_value", c.phase1_value.to_string()},
                              {"phase1_bound", c.phase1_bound.to_string()},
                              {"bound", c.bound.to_string()},
                              {"phase_order", order == slated::PhaseOrder::YFirst ? "y-first" : "x-first"}};
  } else {
    throw UsageError("unknown algorithm " + alg);
  }
  return o;
}

struct FamilyArgs {
  std::string family;
  int p = 3;
  std::size_t n = 4;
  std::string mu = "7";
  std::string z;
  std::string kind = "alternating";
  std::uint64_t seed = 1;
  std::int64_t lo = 1;
  std::int64_t hi = 20;
};

Values parse_list(const std::string& text) {
  Values out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError("bad number in list: " + item);
    }
  }
  return out;
}

AnyInstance make_family(const FamilyArgs& a) {
  if (a.family == "gap-alt") return instances::gen_gap_alternating(a.p);
  if (a.family == "tight-alt") return instances::gen_tight_alternating(a.p);
  if (a.family == "gas-gap") return instances::gen_gasoline_gap(a.n);
  if (a.family == "lp-gap") {
    Rational mu;
    try {
      mu = Rational::parse(a.mu);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad --mu value " + a.mu);
    }
    return instances::gen_lp_gap(a.n, mu);
  }
  if (a.family == "consec") return instances::gen_consecutiveness_example();
  if (a.family == "3part") {
    instances::ThreePartitionInput tp;
    tp.z = parse_list(a.z);
    tp.k = tp.z.size() / 3;
    if (tp.z.size() % 3 != 0) throw InvalidInstance("3-partition input needs a multiple of three numbers");
    return instances::reduce_3partition(tp);
  }
  if (a.family == "random") {
    const auto kind = parse_kind(a.kind);
    if (!kind) throw UsageError("unknown --kind " + a.kind);
    return instances::gen_random(*kind, a.n, a.seed, a.lo, a.hi);
  }
  throw UsageError("unknown family " + a.family);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

int cmd_solve(const std::string& alg, const std::string& input, const std::string& output, const std::string& trace,
              const std::string& phase_order, std::ostream& out) {
  if (!trace.empty() && alg != "lp-round") throw UsageError("--trace only applies to --alg lp-round");
  const AnyInstance inst = io::read_instance_file(input);
  const auto order = phase_order == "x-first" ? slated::PhaseOrder::XFirst : slated::PhaseOrder::YFirst;
  Outcome o = run_algorithm(inst, alg, !trace.empty(), order);
  Json doc = io::result_json(inst, alg, o.arrangement, o.profile);
  for (auto& [k, v] : o.extra.items()) doc[k] = v;
  emit(output, doc.dump() + "\n", out);
  if (!trace.empty()) io::write_text_file(trace, o.trace);
  return kOk;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--sizes must look like a..b");
  try {
    const std::size_t a = std::stoul(text.substr(0, dots));
    const std::size_t b = std::stoul(text.substr(dots + 2));
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--sizes must look like a..b");
  }
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t job_count(const AnyInstance& any) {
  return std::visit(
      [](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, SlatedInstance>) {
          return i.slot_count();
        } else {
          return i.size();
        }
      },
      any);
}

std::optional<Rational> oracle_value(const AnyInstance& any) {
  try {
    if (const auto* a = std::get_if<AlternatingInstance>(&any)) return oracles::exact_alternating(*a).optimum;
    if (const auto* g = std::get_if<GasolineInstance>(&any)) return oracles::exact_gasoline(*g).optimum;
    return oracles::exact_slated(std::get<SlatedInstance>(any)).optimum;
  } catch (const OracleTooLarge&) {
    return std::nullopt;
  }
}

int cmd_bench(FamilyArgs fam, const std::string& sizes, const std::string& algs_text, const std::string& output,
              std::size_t count, std::size_t jobs, std::ostream& out) {
  if (fam.family == "consec" || fam.family == "3part") throw UsageError("bench needs a sized family");
  const auto [lo, hi] = parse_range(sizes);
  const auto algs = split_names(algs_text);
  if (algs.empty()) throw UsageError("--algs must name at least one algorithm");
  for (const auto& a : algs) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a) == kAlgorithms.end()) {
      throw UsageError("unknown algorithm " + a);
    }
  }

  struct Item {
    std::string id;
    AnyInstance inst;
  };
  std::vector<Item> items;
  for (std::size_t s = lo; s <= hi && lo <= hi; ++s) {
    if (fam.family == "gas-gap" && s % 2 != 0) continue;  // the family only exists for even n
    const std::size_t reps = fam.family == "random" ? count : 1;
    for (std::size_t c = 0; c < reps; ++c) {
      FamilyArgs f = fam;
      f.p = static_cast<int>(s);
      f.n = s;
      f.seed = fam.seed + c;
      std::string id = fam.family + "-" + std::to_string(s);
      if (fam.family == "random") id = "random-" + fam.kind + "-" + std::to_string(s) + "-s" + std::to_string(f.seed);
      items.push_back(Item{id, make_family(f)});
    }
  }
  for (const auto& item : items) {
    for (const auto& a : algs) {
      if (!compatible(a, kind_of(item.inst))) {
        throw UsageError("algorithm " + a + " does not apply to family " + fam.family);
      }
    }
  }

  std::vector<std::string> rows(items.size());
  std::size_t next = 0;
  std::mutex lock;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> g(lock);
        if (next >= items.size() || failure) return;
        k = next++;
      }
      try {
        const auto& item = items[k];
        const auto opt = oracle_value(item.inst);
        std::ostringstream block;
        for (const auto& a : algs) {
          const auto t0 = std::chrono::steady_clock::now();
          const Outcome o = run_algorithm(item.inst, a, false, slated::PhaseOrder::YFirst);
          const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", ms);
          block << item.id << ',' << a << ',' << job_count(item.inst) << ',' << o.profile.eta.to_string() << ',';
          if (opt) {
            block << opt->to_string() << ',';
            block << (opt->is_zero() ? std::string() : (o.profile.eta / *opt).to_string());
          } else {
            block << ',';
          }
          block << ',' << buf << '\n';
        }
        rows[k] = block.str();
      } catch (...) {
        std::lock_guard<std::mutex> g(lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, items.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::string csv = "instance,alg,n,eta,opt,ratio,millis\n";
  for (const auto& r : rows) csv += r;
  emit(output, csv, out);
  return kOk;
}

int cmd_verify(const std::string& suite, std::size_t count, std::uint64_t seed, std::ostream& out) {
  std::vector<verify::SuiteReport> reports;
  if (suite == "alt" || suite == "all") reports.push_back(verify::verify_alternating(count, seed));
  if (suite == "gasoline" || suite == "all") reports.push_back(verify::verify_gasoline(count, seed));
  if (suite == "slated" || suite == "all") reports.push_back(verify::verify_slated(count, seed));
  bool ok = true;
  for (const auto& r : reports) {
    out << r.suite << ": " << r.instances << " instances, " << r.checks << " checks, " << r.violations.size()
        << " violations\n";
    for (const auto& v : r.violations) out << "  " << v << '\n';
    ok = ok && r.ok();
  }
  return ok ? kOk : kInternal;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stock size sequencing: alternating, gasoline and slated variants"};
  app.require_subcommand(1);

  std::string alg;
  std::string input;
  std::string output;
  std::string trace;
  std::string phase_order = "y-first";
  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance file");
  solve->add_option("--alg", alg, "Algorithm")->required()->check(CLI::IsMember(kAlgorithms));
  solve->add_option("-i,--input", input, "Instance file")->required();
  solve->add_option("-o,--output", output, "Result file (stdout if omitted)");
  solve->add_option("--trace", trace, "Transform trace CSV (lp-round only)");
  solve->add_option("--phase-order", phase_order, "slated3 phase order")->check(CLI::IsMember({"y-first", "x-first"}));

  FamilyArgs fam;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a generated instance");
  gen->add_option("--family", fam.family, "Instance family")->required()->check(CLI::IsMember(kFamilies));
  gen->add_option("--p", fam.p, "Family parameter p");
  gen->add_option("--n", fam.n, "Size parameter n");
  gen->add_option("--mu", fam.mu, "mu for lp-gap (rational)");
  gen->add_option("--z", fam.z, "Comma-separated 3-partition numbers");
  gen->add_option("--kind", fam.kind, "Random instance kind")->check(CLI::IsMember({"alternating", "gasoline", "slated"}));
  gen->add_option("--seed", fam.seed, "Random seed");
  gen->add_option("--lo", fam.lo, "Smallest random value");
  gen->add_option("--hi", fam.hi, "Largest random value");
  gen->add_option("-o,--output", gen_out, "Instance file (stdout if omitted)");

  std::string suite = "all";
  std::size_t count = 100;
  std::uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "Property sweep against the exact oracles");
  ver->add_option("--suite", suite, "Suite")->check(CLI::IsMember({"alt", "gasoline", "slated", "all"}));
  ver->add_option("--count", count, "Instances per suite");
  ver->add_option("--seed", seed, "Base seed");

  FamilyArgs bfam;
  std::string sizes;
  std::string algs;
  std::string bench_out;
  std::size_t bench_count = 1;
  std::size_t threads = 1;
  auto* bench = app.add_subcommand("bench", "Benchmark algorithms over a family, CSV output");
  bench->add_option("--family", bfam.family, "Instance family")->required()->check(CLI::IsMember(kFamilies));
  bench->add_option("--sizes", sizes, "Size range a..b (p or n)")->required();
  bench->add_option("--algs", algs, "Comma-separated algorithms")->required();
  bench->add_option("-o,--output", bench_out, "CSV file (stdout if omitted)");
  bench->add_option("--kind", bfam.kind, "Random instance kind")->check(CLI::IsMember({"alternating", "gasoline", "slated"}));
  bench->add_option("--mu", bfam.mu, "mu for lp-gap");
  bench->add_option("--count", bench_count, "Random instances per size");
  bench->add_option("--seed", bfam.seed, "Base seed");
  bench->add_option("--lo", bfam.lo, "Smallest random value");
  bench->add_option("--hi", bfam.hi, "Largest random value");
  bench->add_option("--jobs", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(alg, input, output, trace, phase_order, out);
    if (gen->parsed()) {
      emit(gen_out, io::write_instance(make_family(fam)), out);
      return kOk;
    }
    if (ver->parsed()) return cmd_verify(suite, count, seed, out);
    if (bench->parsed()) return cmd_bench(bfam, sizes, algs, bench_out, bench_count, threads, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const OracleTooLarge& e) {
    err << "oracle cap: " << e.what() << '\n';
    return kOracleCap;
  } catch (const InvalidInstance& e) {
    err << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvalidArrangement& e) {
    err << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const NotApplicable& e) {
    err << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace stockseq::cli
