#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <new>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/output.hpp"
#include "cli/specs.hpp"
#include "paa/paa.hpp"

namespace paa::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kValidation = 3, kResource = 4 };

struct Options {
  std::string format = "tsv";
  std::string output;
  std::string method = "basic";

  std::string patterns;
  std::string model;
  std::optional<std::string> scheme;
  std::optional<std::int64_t> bound;
  bool no_minimize = false;
  std::size_t n = 0;

  std::size_t tmax = 0;
  std::string mode;
  double epsilon = 1e-9;
  double gamma_tol = 1e-12;

  std::string algorithm;
  std::string pattern;
  bool unit_cost = false;
  bool explicit_paa = false;

  std::vector<std::string> seeds;
  std::string homology;
  std::int64_t max_hits = 3;

  std::string enzyme = "trypsin";
  std::string rule;
  std::string masses;
  double lambda = 10.0;
  std::vector<std::string> ptms;
  double p_miss = 0.0;
  std::size_t fragment = 1;
  std::size_t nmax = 0;
  std::string peptide;
  double mass = 0.0;
  double delta = 0.5;

  std::string order;
  std::int64_t flows = 0;
  std::string text;
  std::string sweep;
  std::size_t jobs = 1;

  std::uint64_t rng_seed = 1;
  std::size_t samples = 100000;
};

namespace detail {

inline Format parse_format(const std::string& s) { return s == "json" ? Format::json : Format::tsv; }

inline PipelineOptions pipeline(const Options& o) { return {!o.no_minimize}; }

inline CountingScheme resolve_scheme(const Options& o, const PatternInput& p) {
  if (o.scheme) return parse_scheme(*o.scheme);
  return p.scheme.value_or(CountingScheme::overlapping);
}

/// M from the flag, the pattern spec, or n times the number of pattern
/// members (the largest possible count).
inline std::int64_t resolve_bound(const Options& o, const PatternInput& p, const std::string& alphabet) {
  if (o.bound) return *o.bound;
  if (p.bound) return *p.bound;
  const auto members = static_cast<std::int64_t>(p.spec.lengths(alphabet).size());
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(o.n) * std::max<std::int64_t>(members, 1));
}

inline MassTable mass_table(const Options& o) {
  auto table = o.masses.empty() ? monoisotopic_masses(o.lambda) : load_mass_table(o.masses, o.lambda);
  for (const auto& p : o.ptms) table = apply_ptm_arg(std::move(table), p);
  return table;
}

inline CleavageRule cleavage_rule(const Options& o, const std::string& alphabet) {
  if (!o.rule.empty()) return rule_from_json(read_json_arg(o.rule), alphabet);
  return enzyme_rule(o.enzyme, alphabet);
}

template <class K>
double expectation(const Distribution<K>& d) {
  double e = 0.0;
  for (const auto& [k, p] : d) e += static_cast<double>(k) * p;
  return e;
}

/// Exact comparison of two distributions over the union of supports.
template <class K>
ojson exact_report(const std::string& kind, const Distribution<K>& reference, const Distribution<K>& exact,
                   double texts, double tolerance) {
  std::map<K, std::pair<double, double>> buckets;
  for (const auto& [k, p] : reference) buckets[k].first = p;
  for (const auto& [k, p] : exact) buckets[k].second = p;
  double dev = std::abs(reference.tail() - exact.tail());
  ojson rows = ojson::array();
  for (const auto& [k, pq] : buckets) {
    dev = std::max(dev, std::abs(pq.first - pq.second));
    rows.push_back({{"value", k}, {"reference", pq.first}, {"empirical", pq.second}});
  }
  return {{"command", "oracle"},   {"kind", kind},          {"mode", "exhaustive"}, {"samples", static_cast<std::uint64_t>(std::llround(texts))},
          {"max_abs_deviation", dev}, {"threshold", tolerance}, {"passed", dev <= tolerance}, {"buckets", rows}};
}

template <class K>
ojson sampled_report(const std::string& kind, const oracle::OracleReport<K>& r) {
  ojson rows = ojson::array();
  for (const auto& [k, z] : r.z_scores) {
    rows.push_back({{"value", k},
                    {"reference", r.reference.probability(k)},
                    {"empirical", r.empirical.probability(k)},
                    {"z", z}});
  }
  return {{"command", "oracle"},
          {"kind", kind},
          {"mode", "sampled"},
          {"seed", r.seed},
          {"samples", r.samples},
          {"max_abs_deviation", r.max_abs_deviation},
          {"threshold", r.threshold},
          {"passed", r.passed},
          {"buckets", rows}};
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ArgumentError("range must look like MIN:MAX");
  }
}

}  // namespace detail

inline Table run_occur(const Options& o) {
  const auto model = load_model(o.model);
  const auto input = load_patterns(o.patterns);
  const auto scheme = detail::resolve_scheme(o, input);
  const auto bound = detail::resolve_bound(o, input, model.alphabet());
  const auto product = pattern_paa(input.spec, model, bound, scheme, detail::pipeline(o));
  const auto dist = value_distribution(product.paa, o.n, parse_method(o.method));
  auto t = distribution_table("occur", dist);
  t.metadata["n"] = o.n;
  t.metadata["M"] = bound;
  t.metadata["scheme"] = to_string(scheme);
  t.metadata["method"] = o.method;
  t.metadata["states"] = product.paa.size();
  return t;
}

inline Table run_wait(const Options& o) {
  const auto model = load_model(o.model);
  const auto input = load_patterns(o.patterns);
  const auto scheme = detail::resolve_scheme(o, input);
  const auto dist = pattern_waiting_time(input.spec, model, o.tmax, parse_waiting_mode(o.mode), scheme,
                                         detail::pipeline(o));
  auto t = distribution_table("wait", dist);
  t.metadata["tmax"] = o.tmax;
  t.metadata["mode"] = o.mode;
  t.metadata["scheme"] = to_string(scheme);
  return t;
}

inline Table run_clump(const Options& o) {
  const auto model = load_model(o.model);
  const auto input = load_patterns(o.patterns);
  const auto bound = o.bound ? *o.bound : input.bound.value_or(20);
  const auto r = clump_size_distribution(input.spec, model, bound, o.epsilon, o.gamma_tol, detail::pipeline(o));
  auto t = distribution_table("clump", r.psi);
  t.metadata["M"] = bound;
  t.metadata["epsilon"] = o.epsilon;
  t.metadata["residual"] = r.residual;
  t.metadata["iterations"] = r.iterations;
  return t;
}

inline Table run_algcost(const Options& o) {
  const auto model = load_model(o.model);
  auto spec = algorithm_spec(o.algorithm, o.pattern, model.alphabet());
  if (o.unit_cost) spec = with_unit_cost(std::move(spec));
  const auto dist = o.explicit_paa ? cost_distribution_paa(spec, model, o.n) : cost_distribution(spec, model, o.n);
  auto t = distribution_table("algcost", dist);
  t.metadata["algorithm"] = o.algorithm;
  t.metadata["pattern"] = o.pattern;
  t.metadata["n"] = o.n;
  t.metadata["expected"] = detail::expectation(dist);
  return t;
}

inline Table run_seed(const Options& o) {
  std::vector<Seed> seeds;
  for (const auto& s : o.seeds) seeds.emplace_back(s);
  const auto model = homology_model(o.homology);
  const auto scheme = o.scheme ? parse_scheme(*o.scheme) : CountingScheme::overlapping;
  const auto dist = seed_hit_distribution(MultipleSeed(seeds), model, o.n, o.max_hits, scheme, parse_method(o.method));
  auto t = distribution_table("seed", dist);
  t.metadata["n"] = o.n;
  t.metadata["K"] = o.max_hits;
  t.metadata["scheme"] = to_string(scheme);
  t.metadata["sensitivity"] = 1.0 - dist.probability(0);
  return t;
}

inline Table run_mass(const Options& o) {
  const auto model = load_model(o.model.empty() ? "uniform:" + kAminoAcids : o.model);
  const auto rule = detail::cleavage_rule(o, model.alphabet());
  const auto masses = detail::mass_table(o);
  masses.validate();
  Table t;
  t.command = "mass";
  t.metadata["mode"] = o.mode;
  t.metadata["lambda"] = masses.lambda;
  if (o.mode == "fragment") {
    if (o.peptide.empty()) throw ArgumentError("fragment mode needs --peptide");
    const auto v = daa_value(cleavage_daa(rule, masses), o.peptide);
    t.columns = {"value"};
    t.metadata["peptide"] = o.peptide;
    t.metadata["dalton"] = static_cast<double>(v) / masses.lambda;
    t.rows.push_back({ojson(v)});
    return t;
  }
  if (o.mode == "occurrence") {
    const auto [lo, hi] = mass_window(masses, o.mass, o.delta);
    const double p = mass_occurrence_probability(model, rule, masses, o.n, lo, hi, o.p_miss);
    t.metadata["n"] = o.n;
    t.metadata["lo"] = lo;
    t.metadata["hi"] = hi;
    t.metadata["p_miss"] = o.p_miss;
    t.metadata["tail"] = 0.0;
    t.rows.push_back({ojson(0), ojson(1.0 - p)});
    t.rows.push_back({ojson(1), ojson(p)});
    return t;
  }
  const FragmentIndex which{o.fragment};
  if (which.k < 1) throw ArgumentError("fragment index starts at 1");
  if (o.mode == "lengths") {
    t = distribution_table("mass", fragment_length_dist(model, rule, which, o.nmax, o.p_miss));
  } else if (o.mode == "masses" || o.mode == "joint") {
    const auto joint = fragment_length_mass(model, rule, masses, which, o.nmax, o.p_miss);
    if (o.mode == "masses") {
      t = distribution_table("mass", joint.marginal([](const auto& lm) { return lm.second; }));
    } else {
      t.columns = {"length", "mass", "probability"};
      for (const auto& [lm, p] : joint) t.rows.push_back({ojson(lm.first), ojson(lm.second), ojson(p)});
      t.metadata["tail"] = joint.tail();
    }
  } else {
    throw ArgumentError("unknown mass mode '" + o.mode + "'");
  }
  t.metadata["mode"] = o.mode;
  t.metadata["lambda"] = masses.lambda;
  t.metadata["fragment"] = o.fragment;
  t.metadata["nmax"] = o.nmax;
  t.metadata["p_miss"] = o.p_miss;
  return t;
}

inline Table run_flowlen(const Options& o) {
  Table t;
  t.command = "flowlen";
  t.metadata["flows"] = o.flows;
  if (!o.sweep.empty()) {
    const auto [lo, hi] = detail::parse_range(o.sweep);
    const auto model = load_model(o.model.empty() ? "uniform:" + kNucleotides : o.model);
    const std::size_t nmax = o.nmax ? o.nmax : 2 * static_cast<std::size_t>(o.flows) + 100;
    const auto results = sweep_orders(model, dispensation_orders(lo, hi), o.flows, nmax, o.jobs);
    t.columns = {"order", "expected_length"};
    t.metadata["nmax"] = nmax;
    for (const auto& r : results) t.rows.push_back({ojson(r.order), ojson(r.expected_length)});
    return t;
  }
  const Dispensation d(o.order, o.flows);
  t.metadata["order"] = o.order;
  if (!o.text.empty()) {
    const auto dist = read_length_distribution(deterministic_text_model(o.text, kNucleotides), d, o.text.size() + 1);
    if (dist.size() != 1) throw DomainError("deterministic text produced more than one read length");
    t.columns = {"value"};
    t.metadata["text"] = o.text;
    t.rows.push_back({ojson(dist.begin()->first)});
    return t;
  }
  const auto model = load_model(o.model.empty() ? "uniform:" + kNucleotides : o.model);
  const std::size_t nmax = o.nmax ? o.nmax : 2 * static_cast<std::size_t>(o.flows) + 100;
  const auto dist = read_length_distribution(model, d, nmax);
  auto out = distribution_table("flowlen", dist);
  out.metadata["flows"] = o.flows;
  out.metadata["order"] = o.order;
  out.metadata["nmax"] = nmax;
  if (dist.tail() < 1e-9) out.metadata["expected"] = expected_read_length(dist);
  return out;
}

/// Oracle subcommands write an OracleReport JSON document.
inline ojson run_oracle(const std::string& kind, const Options& o) {
  using namespace paa::oracle;
  if (kind == "sample") {
    const auto model = load_model(o.model);
    return {{"command", "oracle"}, {"kind", kind}, {"seed", o.rng_seed}, {"text", sample_text(model, o.n, o.rng_seed)}};
  }
  if (kind == "occur") {
    const auto model = load_model(o.model);
    const auto input = load_patterns(o.patterns);
    const auto scheme = detail::resolve_scheme(o, input);
    const auto bound = detail::resolve_bound(o, input, model.alphabet());
    const auto gs = input.spec.generalized_strings(model.alphabet());
    const auto exact = enumerate_exact(
        [&](const std::string& s) { return std::min(bound, count_matches(gs, s, scheme)); }, model, o.n);
    const auto reference = occurrence_distribution(input.spec, model, o.n, bound, scheme, parse_method(o.method));
    return detail::exact_report(kind, reference, exact,
                                std::pow(static_cast<double>(model.alphabet_size()), static_cast<double>(o.n)), 1e-12);
  }
  if (kind == "algcost") {
    const auto model = load_model(o.model);
    auto spec = algorithm_spec(o.algorithm, o.pattern, model.alphabet());
    const auto exact = enumerate_exact(
        [&](const std::string& s) { return run_matcher(o.algorithm, o.pattern, s).cost; }, model, o.n);
    const auto reference = cost_distribution(spec, model, o.n);
    return detail::exact_report(kind, reference, exact,
                                std::pow(static_cast<double>(model.alphabet_size()), static_cast<double>(o.n)), 1e-12);
  }
  if (kind == "clump") {
    const auto model = load_model(o.model);
    const auto input = load_patterns(o.patterns);
    const auto bound = o.bound ? *o.bound : input.bound.value_or(20);
    const auto psi = clump_size_distribution(input.spec, model, bound, o.epsilon, o.gamma_tol).psi;
    Distribution<std::int64_t> reference(psi.support());
    SplitMix64 rng(o.rng_seed);
    const auto sizes = sample_clump_sizes(input.spec.generalized_strings(model.alphabet()), model, o.samples, bound, rng);
    return detail::sampled_report(kind, compare_samples(reference, sizes, o.rng_seed));
  }
  if (kind == "flowlen") {
    const auto model = load_model(o.model.empty() ? "uniform:" + kNucleotides : o.model);
    const Dispensation d(o.order, o.flows);
    const std::size_t nmax = o.nmax ? o.nmax : 2 * static_cast<std::size_t>(o.flows) + 100;
    const auto dist = read_length_distribution(model, d, nmax);
    Distribution<std::size_t> reference(dist.support());
    reference.add(nmax + 1, dist.tail());
    SplitMix64 rng(o.rng_seed);
    std::vector<std::size_t> lengths;
    lengths.reserve(o.samples);
    for (std::size_t i = 0; i < o.samples; ++i) {
      lengths.push_back(std::min(simulate_read_length(sample_text(model, nmax + 1, rng), o.order, o.flows), nmax + 1));
    }
    return detail::sampled_report(kind, compare_samples(reference, lengths, o.rng_seed));
  }
  throw ArgumentError("unknown oracle kind '" + kind + "'");
}

namespace detail {

inline void add_output(CLI::App* sub, Options& o, bool method) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  sub->add_option("--output,-o", o.output, "Write to this file instead of standard output");
  if (method) sub->add_option("--method", o.method, "Propagation method")->check(CLI::IsMember({"basic", "doubling"}));
}

inline CLI::Validator source_check(std::vector<std::string> prefixes = {}) {
  return CLI::Validator([prefixes](std::string& s) { return check_source(s, prefixes); }, "JSON|FILE");
}

inline void add_pattern_model(CLI::App* sub, Options& o) {
  sub->add_option("--patterns", o.patterns, "Pattern spec (inline JSON or file)")->required()->check(source_check());
  sub->add_option("--model", o.model, "Text model (inline JSON, file, or uniform:ALPHABET)")
      ->required()
      ->check(source_check({"uniform:"}));
  sub->add_flag("--no-minimize", o.no_minimize, "Skip DFA minimization");
}

inline void scheme_option(CLI::App* sub, Options& o) {
  sub->add_option("--scheme", o.scheme, "match_position | overlapping | nonoverlapping")
      ->check(CLI::IsMember({"match_position", "match-position", "overlapping", "nonoverlapping", "non-overlapping"}));
}

}  // namespace detail

/// Runs one `paa` invocation; `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Exact distributions from probabilistic arithmetic automata", "paa");
  app.require_subcommand(1);
  Options o;

  auto* occur = app.add_subcommand("occur", "Distribution of the number of pattern occurrences");
  detail::add_pattern_model(occur, o);
  detail::scheme_option(occur, o);
  occur->add_option("--n", o.n, "Text length")->required();
  occur->add_option("--m,-M", o.bound, "Truncation bound M")->check(CLI::PositiveNumber);
  detail::add_output(occur, o, true);

  auto* wait = app.add_subcommand("wait", "Waiting time for a pattern match");
  detail::add_pattern_model(wait, o);
  detail::scheme_option(wait, o);
  wait->add_option("--tmax", o.tmax, "Horizon")->required()->check(CLI::PositiveNumber);
  o.mode = "first";
  wait->add_option("--mode", o.mode, "first | subsequent")->check(CLI::IsMember({"first", "subsequent"}));
  detail::add_output(wait, o, false);

  auto* clump = app.add_subcommand("clump", "Clump size distribution");
  detail::add_pattern_model(clump, o);
  clump->add_option("--m,-M", o.bound, "Truncation bound M (default 20)")->check(CLI::PositiveNumber);
  clump->add_option("--epsilon", o.epsilon, "Residual mass at which iteration stops")->check(CLI::PositiveNumber);
  clump->add_option("--gamma-tol", o.gamma_tol, "Convergence tolerance of the clump start distribution")
      ->check(CLI::PositiveNumber);
  detail::add_output(clump, o, false);

  auto* algcost = app.add_subcommand("algcost", "Cost distribution of a window-shifting matcher");
  algcost->add_option("--algorithm", o.algorithm, "horspool | sunday")
      ->required()
      ->check(CLI::IsMember({"horspool", "sunday"}));
  algcost->add_option("--pattern", o.pattern, "Pattern string")->required();
  algcost->add_option("--model", o.model, "Text model")->required()->check(detail::source_check({"uniform:"}));
  algcost->add_option("--n", o.n, "Text length")->required();
  algcost->add_flag("--unit-cost", o.unit_cost, "Charge one unit per window");
  algcost->add_flag("--explicit", o.explicit_paa, "Use the window-jump PAA instead of the character sweep");
  detail::add_output(algcost, o, false);

  auto* seed = app.add_subcommand("seed", "Hit distribution of (multiple) spaced seeds");
  seed->add_option("--seed", o.seeds, "Seed over {1,*,?}; repeat for a multiple seed")->required();
  seed->add_option("--homology", o.homology, "ungapped:p | gapped:p0,p1,pg | JSON")->required();
  seed->add_option("--n", o.n, "Alignment length")->required()->check(CLI::PositiveNumber);
  seed->add_option("--k,-K", o.max_hits, "Largest hit count reported")->check(CLI::PositiveNumber);
  detail::scheme_option(seed, o);
  detail::add_output(seed, o, true);

  auto* mass = app.add_subcommand("mass", "Fragment length and mass statistics");
  mass->add_option("--mode", o.mode, "fragment | lengths | masses | joint | occurrence")
      ->required()
      ->check(CLI::IsMember({"fragment", "lengths", "masses", "joint", "occurrence"}));
  mass->add_option("--model", o.model, "Protein model (default uniform over amino acids)")
      ->check(detail::source_check({"uniform:"}));
  mass->add_option("--enzyme", o.enzyme, "Named cleavage rule")->check(CLI::IsMember({"trypsin"}));
  mass->add_option("--rule", o.rule, "Cleavage rule JSON {gamma, pi}")->check(detail::source_check());
  mass->add_option("--masses", o.masses, "Mass table TSV (default monoisotopic)")->check(CLI::ExistingFile);
  mass->add_option("--lambda", o.lambda, "Integer mass units per Dalton")->check(CLI::PositiveNumber);
  mass->add_option("--ptm", o.ptms, "Modification R:shift:probability; repeatable");
  mass->add_option("--p-miss", o.p_miss, "Missed-cleavage probability")->check(CLI::Range(0.0, 1.0));
  mass->add_option("--fragment", o.fragment, "Fragment index (1 = first)")->check(CLI::PositiveNumber);
  mass->add_option("--nmax", o.nmax, "Largest fragment length")->check(CLI::PositiveNumber);
  mass->add_option("--peptide", o.peptide, "Peptide for --mode fragment");
  mass->add_option("--mass", o.mass, "Target mass in Dalton")->check(CLI::NonNegativeNumber);
  mass->add_option("--delta", o.delta, "Mass tolerance in Dalton")->check(CLI::NonNegativeNumber);
  mass->add_option("--n", o.n, "Protein length for --mode occurrence");
  detail::add_output(mass, o, false);

  auto* flowlen = app.add_subcommand("flowlen", "Read length under a flow dispensation order");
  flowlen->add_option("--order", o.order, "Cyclic dispensation order");
  flowlen->add_option("--flows", o.flows, "Flow budget")->required()->check(CLI::PositiveNumber);
  flowlen->add_option("--text", o.text, "Fixed text instead of a random model");
  flowlen->add_option("--model", o.model, "Text model (default uniform DNA)")->check(detail::source_check({"uniform:"}));
  flowlen->add_option("--nmax", o.nmax, "Largest read length")->check(CLI::PositiveNumber);
  flowlen->add_option("--sweep", o.sweep, "Rank every order with length in MIN:MAX");
  flowlen->add_option("--jobs,-j", o.jobs, "Worker threads for --sweep")->check(CLI::PositiveNumber);
  detail::add_output(flowlen, o, false);

  auto* oracle = app.add_subcommand("oracle", "Independent checks by enumeration or sampling");
  oracle->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> kinds;
  for (const char* kind : {"occur", "algcost", "clump", "flowlen", "sample"}) {
    auto* k = oracle->add_subcommand(kind, std::string("Oracle check: ") + kind);
    k->add_option("--output,-o", o.output, "Write to this file instead of standard output");
    k->add_option("--seed", o.rng_seed, "RNG seed");
    k->add_option("--model", o.model, "Text model")->check(detail::source_check({"uniform:"}));
    kinds.emplace_back(kind, k);
  }
  for (auto* k : {kinds[0].second, kinds[2].second}) {
    k->add_option("--patterns", o.patterns, "Pattern spec")->required()->check(detail::source_check());
    k->add_option("--m,-M", o.bound, "Truncation bound M")->check(CLI::PositiveNumber);
  }
  detail::scheme_option(kinds[0].second, o);
  kinds[0].second->add_option("--method", o.method)->check(CLI::IsMember({"basic", "doubling"}));
  for (auto* k : {kinds[0].second, kinds[1].second, kinds[4].second}) {
    k->add_option("--n", o.n, "Text length")->required();
  }
  kinds[1].second->add_option("--algorithm", o.algorithm)->required()->check(CLI::IsMember({"horspool", "sunday"}));
  kinds[1].second->add_option("--pattern", o.pattern)->required();
  kinds[2].second->add_option("--samples", o.samples, "Number of sampled clumps")->check(CLI::PositiveNumber);
  kinds[2].second->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  kinds[3].second->add_option("--order", o.order)->required();
  kinds[3].second->add_option("--flows", o.flows)->required()->check(CLI::PositiveNumber);
  kinds[3].second->add_option("--nmax", o.nmax)->check(CLI::PositiveNumber);
  kinds[3].second->add_option("--samples", o.samples, "Number of sampled reads")->check(CLI::PositiveNumber);
  for (auto* k : {kinds[0].second, kinds[1].second, kinds[2].second, kinds[4].second}) k->get_option("--model")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "paa: error[usage]: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  auto open_output = [&] {
    if (o.output.empty()) return;
    file.open(o.output);
    if (!file) throw ArgumentError("cannot write '" + o.output + "'");
    sink = &file;
  };

  try {
    if (oracle->parsed()) {
      for (const auto& [kind, k] : kinds) {
        if (!k->parsed()) continue;
        const auto report = run_oracle(kind, o);
        open_output();
        *sink << report.dump(2) << '\n';
        return report.contains("passed") && !report.at("passed").get<bool>() ? kCheckFailed : kOk;
      }
    }
    Table t;
    if (occur->parsed()) {
      t = run_occur(o);
    } else if (wait->parsed()) {
      t = run_wait(o);
    } else if (clump->parsed()) {
      t = run_clump(o);
    } else if (algcost->parsed()) {
      t = run_algcost(o);
    } else if (seed->parsed()) {
      t = run_seed(o);
    } else if (mass->parsed()) {
      if (o.nmax == 0) o.nmax = 50;
      t = run_mass(o);
    } else {
      if (o.order.empty() && o.sweep.empty()) throw ArgumentError("flowlen needs --order or --sweep");
      if (!o.text.empty() && !o.model.empty()) throw ArgumentError("--text and --model are exclusive");
      t = run_flowlen(o);
    }
    open_output();
    write_table(*sink, t, detail::parse_format(o.format));
  } catch (const ResourceError& e) {
    err << "paa: error[resource]: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "paa: error[resource]: out of memory\n";
    return kResource;
  } catch (const ConvergenceError& e) {
    err << "paa: error[convergence]: " << e.what() << '\n';
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "paa: error[validation]: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "paa: error[validation]: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

inline int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace paa::cli
