#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paa/core.hpp"
#include "paa/daa.hpp"
#include "paa/textmodel.hpp"

namespace paa {

/// Cleavage after any character of gamma unless the next character is in
/// pi.
struct CleavageRule {
  std::string gamma;
  std::string pi;
  std::string alphabet = kAminoAcids;

  bool cleaves(char ch) const { return gamma.find(ch) != std::string::npos; }
  bool prohibits(char ch) const { return pi.find(ch) != std::string::npos; }

  void validate() const {
    if (alphabet.empty()) throw ArgumentError("cleavage alphabet is empty");
    for (char ch : gamma + pi) {
      if (alphabet.find(ch) == std::string::npos) {
        throw ArgumentError(std::string("cleavage rule character '") + ch + "' is not in the alphabet");
      }
    }
  }

  static CleavageRule trypsin() { return {"KR", "P", kAminoAcids}; }
};

/// Per-residue mass distributions in Dalton and the scaling factor lambda
/// (integer mass units per Dalton).
struct MassTable {
  using Components = std::vector<std::pair<double, double>>;  // (mass in Da, probability)

  double lambda = 10.0;
  std::map<char, Components> residues;

  /// Scaled integer mass, rounded half away from zero.
  std::int64_t scale(double da) const { return static_cast<std::int64_t>(std::llround(da * lambda)); }

  const Components& components(char residue) const {
    auto it = residues.find(residue);
    if (it == residues.end()) throw ArgumentError(std::string("no mass for residue '") + residue + "'");
    return it->second;
  }

  std::vector<std::pair<std::int64_t, double>> scaled(char residue) const {
    std::map<std::int64_t, double> merged;
    for (const auto& [m, p] : components(residue)) merged[scale(m)] += p;
    return {merged.begin(), merged.end()};
  }

  /// Most probable scaled mass of a residue.
  std::int64_t scaled_mode(char residue) const {
    const auto s = scaled(residue);
    return std::max_element(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
        ->first;
  }

  void validate() const {
    if (!(lambda > 0.0)) throw ArgumentError("mass scaling factor must be positive");
    for (const auto& [r, comps] : residues) {
      if (comps.empty()) throw ArgumentError(std::string("residue '") + r + "' has no mass");
      double s = 0.0;
      for (const auto& [m, p] : comps) {
        if (m < 0.0) throw ArgumentError(std::string("residue '") + r + "' has a negative mass");
        if (p < 0.0) throw ArgumentError(std::string("residue '") + r + "' has a negative probability");
        s += p;
      }
      if (std::abs(s - 1.0) > 1e-9) throw ArgumentError(std::string("mass distribution of '") + r + "' does not sum to one");
    }
  }
};

/// Standard monoisotopic residue masses (no water term).
inline MassTable monoisotopic_masses(double lambda = 10.0) {
  static const std::pair<char, double> kTable[] = {
      {'A', 71.03711},  {'R', 156.10111}, {'N', 114.04293}, {'D', 115.02694}, {'C', 103.00919},
      {'E', 129.04259}, {'Q', 128.05858}, {'G', 57.02146},  {'H', 137.05891}, {'I', 113.08406},
      {'L', 113.08406}, {'K', 128.09496}, {'M', 131.04049}, {'F', 147.06841}, {'P', 97.05276},
      {'S', 87.03203},  {'T', 101.04768}, {'W', 186.07931}, {'Y', 163.06333}, {'V', 99.06841}};
  MassTable t;
  t.lambda = lambda;
  for (const auto& [r, m] : kTable) t.residues[r] = {{m, 1.0}};
  return t;
}

/// Reads "residue<TAB>mass[<TAB>probability]" lines; several lines for one
/// residue form an isotopic distribution. '#' starts a comment.
inline MassTable read_mass_table(std::istream& in, double lambda = 10.0) {
  MassTable t;
  t.lambda = lambda;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string residue;
    if (!(fields >> residue)) continue;
    double mass = 0.0, prob = 1.0;
    if (residue.size() != 1 || !(fields >> mass)) {
      throw ParseError("mass table line " + std::to_string(lineno) + " is malformed", lineno);
    }
    if (!(fields >> prob)) prob = 1.0;
    t.residues[residue[0]].emplace_back(mass, prob);
  }
  t.validate();
  return t;
}

inline MassTable load_mass_table(const std::string& path, double lambda = 10.0) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open mass table '" + path + "'");
  return read_mass_table(in, lambda);
}

/// Mixes a residue's mass distribution with a copy shifted by `shift` Da.
inline MassTable apply_ptm(MassTable table, char residue, double shift, double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) throw ArgumentError("modification probability must lie in [0,1]");
  auto& comps = table.residues.at(residue);
  if (probability == 0.0) return table;
  MassTable::Components mixed;
  for (const auto& [m, p] : comps) {
    if (m + shift < 0.0) throw ArgumentError("modification yields a negative residue mass");
    if (probability < 1.0) mixed.emplace_back(m, (1.0 - probability) * p);
    mixed.emplace_back(m + shift, probability * p);
  }
  comps = std::move(mixed);
  return table;
}

/// Cleavage DAA: states q0 = 0, residues 1..|Sigma| in alphabet order,
/// bullet = |Sigma|+1 and circle = |Sigma|+2. Values add up residue masses
/// (most probable scaled mass per residue); bullet is entered right after
/// the first fragment ends.
inline Daa<std::int64_t, std::int64_t> cleavage_daa(const CleavageRule& rule, const MassTable& masses) {
  rule.validate();
  const std::size_t k = rule.alphabet.size();
  const std::size_t bullet = k + 1, circle = k + 2;
  std::vector<std::size_t> delta((k + 3) * k);
  std::vector<std::int64_t> emissions(k + 3, 0);
  for (std::size_t q = 0; q < k + 3; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      std::size_t to;
      if (q == bullet || q == circle) {
        to = circle;
      } else if (q > 0 && rule.cleaves(rule.alphabet[q - 1]) && !rule.prohibits(rule.alphabet[a])) {
        to = bullet;
      } else {
        to = a + 1;
      }
      delta[q * k + a] = to;
    }
    if (q >= 1 && q <= k) emissions[q] = masses.scaled_mode(rule.alphabet[q - 1]);
  }
  std::vector<Operation<std::int64_t, std::int64_t>> ops(k + 3, ops::add<std::int64_t, std::int64_t>());
  return Daa<std::int64_t, std::int64_t>(rule.alphabet, 0, std::move(delta),
                                         ValueDomain<std::int64_t>::unbounded("nonnegative masses"), 0,
                                         std::move(emissions), std::move(ops));
}

/// Which fragment of the protein: the first one or the k-th (k >= 2).
struct FragmentIndex {
  std::size_t k = 1;

  static FragmentIndex first() { return {1}; }
  static FragmentIndex following(std::size_t k) {
    if (k < 2) throw ArgumentError("following fragments are numbered from 2");
    return {k};
  }
};

/// Start of a fragment: a residue state (alphabet index) and the context
/// after reading that residue.
struct FragmentEntry {
  std::size_t residue;
  std::size_t context;
  double probability;
};

/// Product PAA of a cleavage automaton and a text model. kind[i] tells the
/// automaton state behind PAA state i.
struct FragmentPaa {
  enum class Kind { virtual_start, start, residue, bullet, circle };

  Paa<std::int64_t, std::int64_t> paa;
  std::vector<Kind> kind;
  std::vector<std::size_t> residue;  // alphabet index for residue and bullet_sigma states
  std::vector<std::size_t> context;
  CleavageRule rule;
  double p_miss = 0.0;
  std::vector<FragmentEntry> entries;

  bool is_bullet(std::size_t q) const { return kind[q] == Kind::bullet; }
};

namespace detail {

enum class CleavageMode { fragment, occurrence };

inline constexpr std::int64_t kFound = -1;

struct FragmentBuild {
  CleavageMode mode = CleavageMode::fragment;
  double p_miss = 0.0;
  std::int64_t lo = 0, hi = 0;  // occurrence window (scaled)
};

// Automaton states: 0 = q0, 1..k residues, k+1 = bullet, k+2 = circle in
// fragment mode; k+1..2k = bullet_sigma in occurrence mode.
inline FragmentPaa build_fragment_paa(const TextModel& model, const CleavageRule& rule, const MassTable* masses,
                                      const std::vector<FragmentEntry>& entries, FragmentBuild build) {
  rule.validate();
  if (masses) masses->validate();
  if (!(build.p_miss >= 0.0 && build.p_miss < 1.0)) throw ArgumentError("missed cleavage probability must lie in [0,1)");
  const std::size_t k = rule.alphabet.size();
  std::vector<std::size_t> sym(model.alphabet_size());
  for (std::size_t a = 0; a < model.alphabet_size(); ++a) {
    const auto pos = rule.alphabet.find(model.alphabet()[a]);
    if (pos == std::string::npos) throw ArgumentError("text model uses a character outside the cleavage alphabet");
    sym[a] = pos;
  }
  const bool occurrence = build.mode == CleavageMode::occurrence;
  const std::size_t bullet = k + 1, circle = k + 2;
  auto residue_of = [&](std::size_t q) { return q <= k ? q - 1 : q - k - 1; };

  // Weighted successor automaton states after reading character a.
  auto successors = [&](std::size_t q, std::size_t a) {
    std::vector<std::pair<std::size_t, double>> out;
    if (!occurrence && (q == bullet || q == circle)) return decltype(out){{circle, 1.0}};
    const bool from_cleavage = q != 0 && rule.cleaves(rule.alphabet[residue_of(q)]);
    if (from_cleavage && !rule.prohibits(rule.alphabet[a])) {
      const std::size_t end = occurrence ? k + 1 + a : bullet;
      out.emplace_back(end, 1.0 - build.p_miss);
      if (build.p_miss > 0.0) out.emplace_back(a + 1, build.p_miss);
    } else {
      out.emplace_back(a + 1, 1.0);
    }
    return out;
  };

  const bool virtual_start = !entries.empty();
  const std::size_t offset = virtual_start ? 1 : 0;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  auto intern = [&](std::size_t q, std::size_t c) {
    auto [it, inserted] = index.emplace(std::pair{q, c}, origin.size());
    if (inserted) origin.emplace_back(q, c);
    return it->second + offset;
  };
  SparseRow start_row;
  if (virtual_start) {
    std::map<std::size_t, double> merged;
    for (const auto& e : entries) {
      if (e.probability > 0.0) merged[intern(e.residue + 1, e.context)] += e.probability;
    }
    start_row.assign(merged.begin(), merged.end());
  } else {
    intern(0, model.start());
  }
  TransitionMatrix rows;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const auto [q, c] = origin[i];
    std::map<std::size_t, double> row;
    for (const auto& t : model.row(c)) {
      if (t.probability == 0.0) continue;
      for (const auto& [q2, w] : successors(q, sym[t.symbol])) row[intern(q2, t.next)] += t.probability * w;
    }
    rows.emplace_back(row.begin(), row.end());
  }

  FragmentPaa out{Paa<std::int64_t, std::int64_t>(0, {{{0, 1.0}}}, ValueDomain<std::int64_t>::unbounded(), 0,
                                                  {{{0, 1.0}}}, {ops::add<std::int64_t, std::int64_t>()}),
                  {}, {}, {}, rule, build.p_miss, entries};
  TransitionMatrix transitions;
  std::vector<Paa<std::int64_t, std::int64_t>::EmissionTable> emissions;
  std::vector<Operation<std::int64_t, std::int64_t>> operations;
  auto mass_of = [&](std::size_t a) -> Paa<std::int64_t, std::int64_t>::EmissionTable {
    if (!masses) return {{0, 1.0}};
    return masses->scaled(rule.alphabet[a]);
  };
  const std::int64_t lo = build.lo, hi = build.hi, over = build.hi + 1;
  const Operation<std::int64_t, std::int64_t> accumulate{
      "add-until-found", [over](const std::int64_t& v, const std::int64_t& e) {
        return v == kFound ? kFound : std::min<std::int64_t>(v + e, over);
      }};
  const Operation<std::int64_t, std::int64_t> restart{
      "restart-fragment", [lo, hi, over](const std::int64_t& v, const std::int64_t& e) {
        if (v == kFound || (lo <= v && v <= hi)) return kFound;
        return std::min<std::int64_t>(e, over);
      }};
  if (virtual_start) {
    transitions.push_back(std::move(start_row));
    emissions.push_back({{0, 1.0}});
    operations.push_back(ops::add<std::int64_t, std::int64_t>());
    out.kind.push_back(FragmentPaa::Kind::virtual_start);
    out.residue.push_back(0);
    out.context.push_back(static_cast<std::size_t>(-1));
  }
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const auto [q, c] = origin[i];
    transitions.push_back(std::move(rows[i]));
    out.context.push_back(c);
    out.residue.push_back(q == 0 || q > 2 * k ? 0 : residue_of(q));
    if (q == 0) {
      out.kind.push_back(FragmentPaa::Kind::start);
      emissions.push_back({{0, 1.0}});
    } else if (q <= k) {
      out.kind.push_back(FragmentPaa::Kind::residue);
      emissions.push_back(mass_of(q - 1));
    } else if (occurrence) {
      out.kind.push_back(FragmentPaa::Kind::bullet);
      emissions.push_back(mass_of(q - k - 1));
    } else {
      out.kind.push_back(q == bullet ? FragmentPaa::Kind::bullet : FragmentPaa::Kind::circle);
      out.residue.back() = 0;
      emissions.push_back({{0, 1.0}});
    }
    if (!occurrence) {
      operations.push_back(ops::add<std::int64_t, std::int64_t>());
    } else {
      operations.push_back(q > k ? restart : accumulate);
    }
  }
  out.paa = Paa<std::int64_t, std::int64_t>(0, std::move(transitions), ValueDomain<std::int64_t>::unbounded(), 0,
                                            std::move(emissions), std::move(operations));
  return out;
}

}  // namespace detail

/// PAA for the first fragment (no entries) or for a fragment starting at the
/// given entries.
inline FragmentPaa fragment_paa(const TextModel& model, const CleavageRule& rule, const MassTable& masses,
                                const std::vector<FragmentEntry>& entries = {}, double p_miss = 0.0) {
  return detail::build_fragment_paa(model, rule, &masses, entries, {detail::CleavageMode::fragment, p_miss, 0, 0});
}

/// Rebuilds the fragment PAA so that each cleavage site is skipped with
/// probability p_miss: the step into bullet keeps 1 - p_miss of its weight
/// and the rest continues the fragment with the same character.
inline FragmentPaa apply_missed_cleavage(const FragmentPaa& paa, const MassTable& masses, const TextModel& model,
                                         double p_miss) {
  if (!(p_miss >= 0.0 && p_miss < 1.0)) throw ArgumentError("missed cleavage probability must lie in [0,1)");
  return fragment_paa(model, paa.rule, masses, paa.entries, p_miss);
}

/// Distribution of the first residue (and context) of the next fragment,
/// i.e. of where the current fragment's PAA leaves for bullet.
inline std::vector<FragmentEntry> next_fragment_entries(const FragmentPaa& fragment, const TextModel& model,
                                                        double tol = 1e-15, std::size_t max_steps = 10'000'000) {
  const auto& paa = fragment.paa;
  const std::size_t n = paa.size();
  std::vector<double> x(n, 0.0), next(n);
  x[paa.start_state()] = 1.0;
  std::map<std::pair<std::size_t, std::size_t>, double> found;
  const auto& rule = fragment.rule;
  for (std::size_t step = 0; step < max_steps; ++step) {
    double alive = 0.0;
    for (double v : x) alive += v;
    if (alive < tol) {
      std::vector<FragmentEntry> out;
      double total = 0.0;
      for (const auto& [key, p] : found) total += p;
      if (total <= 0.0) throw ConvergenceError("fragments never end under this model", alive);
      for (const auto& [key, p] : found) out.push_back({key.first, key.second, p / total});
      return out;
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t q = 0; q < n; ++q) {
      if (x[q] == 0.0) continue;
      const bool cleaving = fragment.kind[q] == FragmentPaa::Kind::residue &&
                            rule.cleaves(rule.alphabet[fragment.residue[q]]);
      if (cleaving) {
        for (const auto& t : model.row(fragment.context[q])) {
          const char ch = model.alphabet()[t.symbol];
          if (!rule.prohibits(ch)) {
            found[{rule.alphabet.find(ch), t.next}] += x[q] * t.probability * (1.0 - fragment.p_miss);
          }
        }
      }
      for (const auto& [q2, p] : paa.transitions(q)) {
        if (!fragment.is_bullet(q2)) next[q2] += x[q] * p;
      }
    }
    x.swap(next);
  }
  throw ConvergenceError("fragment end distribution did not converge", 0.0);
}

/// Entries of the k-th fragment (empty for the first one).
inline std::vector<FragmentEntry> fragment_entries(const TextModel& model, const CleavageRule& rule,
                                                   FragmentIndex which, double p_miss = 0.0) {
  std::vector<FragmentEntry> entries;
  for (std::size_t i = 1; i < which.k; ++i) {
    const auto paa = detail::build_fragment_paa(model, rule, nullptr, entries,
                                                 {detail::CleavageMode::fragment, p_miss, 0, 0});
    entries = next_fragment_entries(paa, model);
  }
  return entries;
}

/// nu(l, m) = P(L(F) = l, M(F) = m) for l <= nmax, keyed (length, scaled
/// mass); the tail holds P(L(F) > nmax).
inline Distribution<std::pair<std::size_t, std::int64_t>> fragment_length_mass(const TextModel& model,
                                                                              const CleavageRule& rule,
                                                                              const MassTable& masses,
                                                                              FragmentIndex which, std::size_t nmax,
                                                                              double p_miss = 0.0) {
  if (nmax < 1) throw ArgumentError("nmax must be at least 1");
  const auto fragment = fragment_paa(model, rule, masses, fragment_entries(model, rule, which, p_miss), p_miss);
  Distribution<std::pair<std::size_t, std::int64_t>> out;
  Propagator<std::int64_t, std::int64_t> prop(fragment.paa);
  double ended = 0.0;
  for (std::size_t t = 1; t <= nmax + 1; ++t) {
    prop.step();
    for (std::size_t q = 0; q < fragment.paa.size(); ++q) {
      if (!fragment.is_bullet(q)) continue;
      for (const auto& [m, p] : prop.take(q)) {
        out.add({t - 1, m}, p);
        ended += p;
      }
    }
  }
  out.add_tail(std::max(0.0, 1.0 - ended));
  return out;
}

/// P(L(F) = l) for l <= nmax from the waiting time for bullet; the tail
/// holds P(L(F) > nmax).
inline Distribution<std::size_t> fragment_length_dist(const TextModel& model, const CleavageRule& rule,
                                                      FragmentIndex which, std::size_t nmax, double p_miss = 0.0) {
  if (nmax < 1) throw ArgumentError("nmax must be at least 1");
  const auto fragment = detail::build_fragment_paa(model, rule, nullptr, fragment_entries(model, rule, which, p_miss),
                                                   {detail::CleavageMode::fragment, p_miss, 0, 0});
  const auto chain = fragment.paa.chain();
  std::vector<bool> targets(chain.size());
  for (std::size_t q = 0; q < chain.size(); ++q) targets[q] = fragment.is_bullet(q);
  std::vector<double> alpha(chain.size(), 0.0);
  alpha[fragment.paa.start_state()] = 1.0;
  const auto w = waiting_time_states(chain, alpha, targets, nmax + 1);
  Distribution<std::size_t> out;
  for (const auto& [t, p] : w) {
    if (t >= 1) out.add(t - 1, p);
  }
  out.add_tail(w.tail());
  return out;
}

/// Scaled integer window [round(lambda (m - delta)), round(lambda (m + delta))].
inline std::pair<std::int64_t, std::int64_t> mass_window(const MassTable& masses, double mass, double delta) {
  if (delta < 0.0) throw ArgumentError("mass tolerance must be nonnegative");
  return {masses.scale(mass - delta), masses.scale(mass + delta)};
}

/// PAA for mass occurrence: bullet_sigma states start a new fragment with
/// residue sigma and turn the value into the absorbing "found" marker when
/// the finished fragment's mass lies in [lo, hi]. Values above hi are merged
/// into hi + 1 since fragment masses never decrease.
inline FragmentPaa mass_occurrence_paa(const TextModel& model, const CleavageRule& rule, const MassTable& masses,
                                       std::int64_t lo, std::int64_t hi, double p_miss = 0.0) {
  if (lo > hi) throw ArgumentError("mass window is empty");
  return detail::build_fragment_paa(model, rule, &masses, {}, {detail::CleavageMode::occurrence, p_miss, lo, hi});
}

/// Probability that a random protein of length n has a fragment with scaled
/// mass in [lo, hi]: P(V_n = found) + P(V_n in [lo, hi]).
inline double mass_occurrence_probability(const TextModel& model, const CleavageRule& rule, const MassTable& masses,
                                          std::size_t n, std::int64_t lo, std::int64_t hi, double p_miss = 0.0) {
  if (n < 1) throw ArgumentError("protein length must be at least 1");
  const auto built = mass_occurrence_paa(model, rule, masses, lo, hi, p_miss);
  const auto values = value_distribution(built.paa, n);
  double p = 0.0;
  for (const auto& [v, q] : values) {
    if (v == detail::kFound || (lo <= v && v <= hi)) p += q;
  }
  return p;
}

}  // namespace paa
