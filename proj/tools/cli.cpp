#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "setpack/errors.hpp"
#include "setpack/relaxation.hpp"
#include "setpack/weighted_search.hpp"

namespace setpack::cli {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_unsigned(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

WeightRange parse_weight_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InputError("weights must look like low:high");
  WeightRange range{parse_rational(parts[0]), parse_rational(parts[1])};
  if (sgn(range.low) <= 0 || range.high < range.low) {
    throw InputError("weights need 0 < low <= high");
  }
  return range;
}

Json packing_json(const Packing& p) {
  Json members = Json::array();
  for (SetId s : p.members) members.push_back(s);
  return members;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

}  // namespace

Algorithm parse_algorithm(std::string_view text) {
  Algorithm a;
  a.name = std::string(text);
  const auto parts = split(text, ':');
  const std::string& head = parts[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw InputError("malformed algorithm '" + a.name + "'");
    }
  };
  if (head == "exact") {
    arity(1, 1);
    a.kind = Algorithm::Kind::kExact;
  } else if (head == "greedy") {
    arity(1, 1);
    a.kind = Algorithm::Kind::kGreedy;
  } else if (head == "local") {
    arity(2, 2);
    a.kind = Algorithm::Kind::kLocal;
    a.t = parse_unsigned<std::size_t>(parts[1], "t");
    if (a.t == 0) throw InputError("local search needs t >= 1");
  } else if (head == "loglocal") {
    arity(2, 2);
    a.kind = Algorithm::Kind::kLogLocal;
    a.epsilon = parse_rational(parts[1]);
    if (sgn(a.epsilon) <= 0) throw InputError("epsilon must be positive");
  } else if (head == "wishful") {
    arity(1, 1);
    a.kind = Algorithm::Kind::kWishful;
  } else if (head == "squareimp") {
    arity(1, 2);
    a.kind = Algorithm::Kind::kSquareImp;
    if (parts.size() == 2) a.t = parse_unsigned<std::size_t>(parts[1], "talon bound");
  } else if (head == "power") {
    arity(3, 3);
    a.kind = Algorithm::Kind::kPower;
    a.alpha = parse_rational(parts[1]);
    if (sgn(a.alpha) <= 0) throw InputError("alpha must be positive");
    a.t = parse_unsigned<std::size_t>(parts[2], "t");
    if (a.t == 0) throw InputError("power search needs t >= 1");
  } else if (head == "rescaled") {
    arity(1, 1);
    a.kind = Algorithm::Kind::kRescaled;
  } else {
    throw InputError("unknown algorithm '" + a.name + "'");
  }
  return a;
}

SolveOutcome run_algorithm(const Instance& instance, const Algorithm& algorithm,
                           std::uint64_t budget_limit, std::size_t exact_cap) {
  require_valid(instance);
  WorkBudget budget{budget_limit};
  SolveOutcome result;
  using Kind = Algorithm::Kind;
  const bool cardinality_only = algorithm.kind == Kind::kLocal || algorithm.kind == Kind::kLogLocal;
  if (cardinality_only && instance.weighted()) {
    throw InputError(algorithm.name + " maximises cardinality and does not take weighted instances");
  }
  switch (algorithm.kind) {
    case Kind::kExact:
      result.packing = max_packing_exact(instance, exact_cap);
      break;
    case Kind::kLocal: {
      auto r = t_local_search(instance, algorithm.t, budget);
      result.packing = std::move(r.packing);
      result.iterations = r.iterations;
      break;
    }
    case Kind::kLogLocal: {
      auto r = log_local_search(instance, algorithm.epsilon, budget);
      result.packing = std::move(r.packing);
      result.iterations = r.iterations;
      break;
    }
    default: {
      const ConflictGraph graph = conflict_graph(instance);
      WeightedResult r;
      if (algorithm.kind == Kind::kGreedy) {
        r.solution = greedy_weighted(graph);
      } else if (algorithm.kind == Kind::kWishful) {
        r = wishful_thinking(graph, instance.k + 1, budget);
      } else if (algorithm.kind == Kind::kSquareImp) {
        r = square_imp(graph, algorithm.t ? algorithm.t : instance.k, budget);
      } else if (algorithm.kind == Kind::kPower) {
        r = power_local_search(graph, algorithm.alpha, algorithm.t, budget);
      } else {
        auto rescaled = rescaled_run(graph, instance.k, budget);
        r.solution = std::move(rescaled.solution);
        r.iterations = rescaled.iterations;
      }
      result.packing = Packing(std::move(r.solution));
      result.iterations = r.iterations;
    }
  }
  result.value = packing_value(instance, result.packing);
  result.budget_spent = budget.spent;
  return result;
}

BenchConfig parse_bench_config(std::string_view text, const std::string& base_dir) {
  BenchConfig config;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "algorithms") {
        for (const auto& item : split(value, ',')) {
          const std::string name = trim(item);
          if (!name.empty()) config.algorithms.push_back(parse_algorithm(name));
        }
      } else if (key == "lp") {
        for (const auto& item : split(value, ',')) {
          const std::string name = trim(item);
          if (name == "standard") {
            config.lp_standard = true;
          } else if (name == "intersecting") {
            config.lp_intersecting = true;
          } else if (!name.empty()) {
            throw InputError("unknown lp variant '" + name + "'");
          }
        }
      } else if (key == "exact_cap") {
        config.exact_cap = parse_unsigned<std::size_t>(value, "exact_cap");
      } else if (key == "budget") {
        config.budget = parse_unsigned<std::uint64_t>(value, "budget");
      } else if (key == "threads") {
        config.threads = parse_unsigned<unsigned>(value, "threads");
      } else if (key == "family") {
        std::istringstream words(value);
        Family family;
        std::string kind;
        words >> kind;
        std::map<std::string, std::string> params;
        for (std::string word; words >> word;) {
          const auto peq = word.find('=');
          if (peq == std::string::npos) throw InputError("family parameter '" + word + "' lacks '='");
          params[word.substr(0, peq)] = word.substr(peq + 1);
        }
        auto take = [&](const std::string& name) {
          const auto it = params.find(name);
          if (it == params.end()) throw InputError(kind + " family needs " + name + "=");
          std::string v = it->second;
          params.erase(it);
          return v;
        };
        if (kind == "random") {
          family.kind = Family::Kind::kRandom;
          family.universe = parse_unsigned<std::size_t>(take("universe"), "universe");
          family.n = parse_unsigned<std::size_t>(take("n"), "n");
          family.k = parse_unsigned<std::size_t>(take("k"), "k");
          const std::string seeds = take("seeds");
          const auto dots = seeds.find("..");
          family.first_seed = parse_unsigned<std::uint64_t>(seeds.substr(0, dots), "seed");
          family.last_seed = dots == std::string::npos
                                 ? family.first_seed
                                 : parse_unsigned<std::uint64_t>(seeds.substr(dots + 2), "seed");
          if (family.last_seed < family.first_seed) throw InputError("empty seed range");
          family.label = "random/universe=" + std::to_string(family.universe) +
                         "/n=" + std::to_string(family.n) + "/k=" + std::to_string(family.k);
          if (params.count("weights")) {
            const std::string w = take("weights");
            family.weights = parse_weight_range(w);
            family.label += "/weights=" + w;
          }
        } else if (kind == "projective") {
          family.kind = Family::Kind::kProjective;
          family.q = parse_unsigned<std::uint64_t>(take("q"), "q");
          family.label = "projective/q=" + std::to_string(family.q);
        } else if (kind == "file") {
          family.kind = Family::Kind::kFile;
          std::filesystem::path p = take("path");
          family.label = "file/" + p.filename().string();
          if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
          family.path = p.string();
        } else {
          throw InputError("unknown family kind '" + kind + "'");
        }
        if (!params.empty()) throw InputError("unknown family parameter '" + params.begin()->first + "'");
        config.families.push_back(std::move(family));
      } else {
        throw InputError("unknown key '" + key + "'");
      }
    } catch (const InputError& e) {
      throw InputError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

namespace {

struct BenchInstance {
  const Family* family;
  std::optional<std::uint64_t> seed;
};

struct Row {
  std::string status;
  std::string value;
  std::string ratio;
  std::string lp_int_over_value;
};

struct InstanceRows {
  std::size_t n = 0, k = 0;
  std::string exact_value, standard_gap, intersecting_gap;
  std::vector<Row> rows;
};

std::string status_of(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const CapExceeded&) {
    return "cap_exceeded";
  } catch (const InputError&) {
    return "input_error";
  } catch (...) {
    return "error";
  }
}

InstanceRows evaluate(const BenchConfig& config, const BenchInstance& job) {
  InstanceRows out;
  const auto fail_all = [&](const std::string& status) {
    out.rows.assign(config.algorithms.size(), Row{status, "", "", ""});
    return out;
  };
  Instance instance;
  try {
    const Family& f = *job.family;
    if (f.kind == Family::Kind::kRandom) {
      instance = gen_random(f.universe, f.n, f.k, f.weights, *job.seed);
    } else if (f.kind == Family::Kind::kProjective) {
      instance = gen_projective_plane(f.q);
    } else {
      instance = parse_instance(read_file(f.path));
    }
    require_valid(instance);
  } catch (...) {
    return fail_all(status_of(std::current_exception()));
  }
  out.n = instance.size();
  out.k = instance.k;

  std::optional<Rational> exact;
  std::optional<Rational> lp_intersecting;
  try {
    exact = packing_value(instance, max_packing_exact(instance, config.exact_cap));
    out.exact_value = to_string(*exact);
  } catch (const std::exception&) {
  }
  if (exact && !instance.weighted()) {
    try {
      if (config.lp_standard) {
        const auto lp = solve_lp(build_standard_lp(instance));
        out.standard_gap = to_string(Rational(lp.objective_value / *exact));
      }
    } catch (const std::exception&) {
    }
  }
  if (config.lp_intersecting && !instance.weighted()) {
    try {
      lp_intersecting = solve_lp(build_intersecting_family_lp(instance)).objective_value;
      if (exact) out.intersecting_gap = to_string(Rational(*lp_intersecting / *exact));
    } catch (const std::exception&) {
    }
  }

  for (const auto& algorithm : config.algorithms) {
    Row row;
    try {
      const auto result = run_algorithm(instance, algorithm, config.budget, config.exact_cap);
      row.status = "ok";
      row.value = to_string(result.value);
      if (exact && sgn(result.value) > 0) row.ratio = to_string(Rational(*exact / result.value));
      if (lp_intersecting && sgn(result.value) > 0) {
        row.lp_int_over_value = to_string(Rational(*lp_intersecting / result.value));
      }
    } catch (...) {
      row.status = status_of(std::current_exception());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  std::vector<BenchInstance> jobs;
  for (const auto& family : config.families) {
    if (family.kind == Family::Kind::kRandom) {
      for (std::uint64_t s = family.first_seed;; ++s) {
        jobs.push_back({&family, s});
        if (s == family.last_seed) break;
      }
    } else {
      jobs.push_back({&family, std::nullopt});
    }
  }
  BenchResult result;
  result.csv = std::string(kBenchHeader);
  if (config.algorithms.empty()) return result;

  std::vector<InstanceRows> evaluated(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) evaluated[i] = evaluate(config, jobs[i]);
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& inst = evaluated[i];
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      const Row& row = inst.rows[a];
      csv << jobs[i].family->label << ',' << (jobs[i].seed ? std::to_string(*jobs[i].seed) : "")
          << ',' << inst.n << ',' << inst.k << ',' << config.algorithms[a].name << ','
          << row.status << ',' << row.value << ',' << inst.exact_value << ',' << row.ratio << ','
          << inst.standard_gap << ',' << inst.intersecting_gap << ',' << row.lp_int_over_value
          << '\n';
      ++result.rows;
      if (row.status == "ok") ++result.succeeded;
      if (row.status == "cap_exceeded") ++result.cap_exceeded;
    }
  }
  result.csv += csv.str();
  return result;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set packing solvers, relaxations and benchmarks"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Write an instance file");
  generate->require_subcommand(1);
  std::string gen_out;
  std::size_t universe = 0, n = 0, k = 0;
  std::uint64_t seed = 0, q = 0;
  std::string weights, graph_path;
  auto* random = generate->add_subcommand("random", "Distinct uniform random k-sets");
  random->add_option("--universe", universe, "Universe size N")->required();
  random->add_option("--n", n, "Number of sets")->required();
  random->add_option("--k", k, "Set size")->required();
  random->add_option("--seed", seed, "Generator seed")->required();
  random->add_option("--weights", weights, "Weight range low:high");
  random->add_option("-o,--out", gen_out, "Output file (stdout if omitted)");
  auto* projective = generate->add_subcommand("projective", "Lines of a projective plane");
  projective->add_option("--q", q, "Prime order")->required();
  projective->add_option("-o,--out", gen_out, "Output file (stdout if omitted)");
  auto* from_graph = generate->add_subcommand("from-graph", "One set per vertex, one element per edge");
  from_graph->add_option("graph", graph_path, "Graph file")->required();
  from_graph->add_option("-o,--out", gen_out, "Output file (stdout if omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm and print a JSON report");
  std::string instance_path, algorithm_text, report_path;
  std::uint64_t budget = WorkBudget::kDefaultLimit;
  std::size_t exact_cap = kDefaultExactCap;
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("-a,--algorithm", algorithm_text,
                    "exact | greedy | local:<t> | loglocal:<eps> | wishful | squareimp[:<talons>] | "
                    "power:<alpha>:<t> | rescaled")
      ->required();
  solve->add_option("-r,--report", report_path, "Report file (stdout if omitted)");
  solve->add_option("--budget", budget, "Operation budget");
  solve->add_option("--exact-cap", exact_cap, "Largest instance for the exact solver");

  // gap
  auto* gap = app.add_subcommand("gap", "LP relaxation value over the exact optimum");
  std::string variant = "standard";
  std::size_t clique_cap = kDefaultCliqueCap;
  gap->add_option("instance", instance_path, "Instance file")->required();
  gap->add_option("--variant", variant, "standard | intersecting")
      ->check(CLI::IsMember({"standard", "intersecting"}));
  gap->add_option("-r,--report", report_path, "Report file (stdout if omitted)");
  gap->add_option("--exact-cap", exact_cap, "Largest instance for the exact solver");
  gap->add_option("--clique-cap", clique_cap, "Maximal clique limit");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark config and write CSV");
  std::string config_path, csv_path;
  bench->add_option("config", config_path, "Config file")->required();
  bench->add_option("-o,--out", csv_path, "CSV file (stdout if omitted)");

  // export-sdp
  auto* export_sdp = app.add_subcommand("export-sdp", "Theta SDP of the conflict graph, SDPA sparse");
  std::string sdp_out;
  export_sdp->add_option("instance", instance_path, "Instance file")->required();
  export_sdp->add_option("-o,--out", sdp_out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (generate->parsed()) {
      Instance instance;
      if (random->parsed()) {
        std::optional<WeightRange> range;
        if (!weights.empty()) range = parse_weight_range(weights);
        instance = gen_random(universe, n, k, range, seed);
      } else if (projective->parsed()) {
        instance = gen_projective_plane(q);
      } else {
        instance = instance_from_graph(parse_graph(read_file(graph_path)));
      }
      emit(serialize_instance(instance), gen_out, out);
      if (!gen_out.empty()) {
        out << "N=" << instance.universe_size << " n=" << instance.size() << " k=" << instance.k
            << '\n';
      }
    } else if (solve->parsed()) {
      const Algorithm algorithm = parse_algorithm(algorithm_text);
      const Instance instance = parse_instance(read_file(instance_path));
      const SolveOutcome result = run_algorithm(instance, algorithm, budget, exact_cap);
      Json report;
      report["algorithm"] = algorithm.name;
      report["instance"] = instance_path;
      report["n"] = instance.size();
      report["k"] = instance.k;
      report["value"] = to_string(result.value);
      report["members"] = packing_json(result.packing);
      report["iterations"] = result.iterations;
      report["budget_spent"] = result.budget_spent;
      report["budget_limit"] = budget;
      emit(report.dump(2) + "\n", report_path, out);
    } else if (gap->parsed()) {
      const Instance instance = parse_instance(read_file(instance_path));
      if (instance.weighted()) throw InputError("gap reports are for unweighted instances");
      const auto r = integrality_gap(instance,
                                     variant == "standard" ? LpVariant::kStandard
                                                           : LpVariant::kIntersecting,
                                     exact_cap, clique_cap);
      Json report;
      report["variant"] = variant;
      report["instance"] = instance_path;
      report["lp_value"] = to_string(r.lp_value);
      report["ilp_value"] = to_string(r.ilp_value);
      report["gap"] = to_string(r.gap);
      emit(report.dump(2) + "\n", report_path, out);
    } else if (bench->parsed()) {
      const auto base = std::filesystem::path(config_path).parent_path().string();
      const BenchConfig config = parse_bench_config(read_file(config_path), base.empty() ? "." : base);
      const BenchResult result = run_bench(config);
      emit(result.csv, csv_path, out);
      if (result.rows > 0 && result.succeeded == 0) {
        err << "error: every benchmark row failed\n";
        return result.cap_exceeded > 0 ? kExitCap : kExitInput;
      }
    } else if (export_sdp->parsed()) {
      const Instance instance = parse_instance(read_file(instance_path));
      emit(export_theta3_sdp(conflict_graph(instance)), sdp_out, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  }
  return kExitOk;
}

}  // namespace setpack::cli
