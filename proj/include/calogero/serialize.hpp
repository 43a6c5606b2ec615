#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "calogero/fock.hpp"
#include "calogero/gram.hpp"
#include "calogero/opexpr.hpp"
#include "calogero/relations.hpp"
#include "calogero/scalar.hpp"

// JSON forms: Rat as "p/q" (or "p"), NuPoly as an ascending list of those,
// NuScalar as {"num": [...], "den": [...]}. Modes are written 1-based.

namespace calogero {

using json = nlohmann::json;

inline void to_json(json& j, const Rat& r) { j = r.str(); }
inline void from_json(const json& j, Rat& r) {
  if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string");
  r = Rat::parse(j.get<std::string>());
}

inline void to_json(json& j, const NuPoly& p) { j = p.coefficients(); }
inline void from_json(const json& j, NuPoly& p) { p = NuPoly(j.get<std::vector<Rat>>()); }

inline void to_json(json& j, const NuScalar& s) { j = json{{"num", s.num()}, {"den", s.den()}}; }
inline void from_json(const json& j, NuScalar& s) {
  const auto den = j.at("den").get<NuPoly>();
  if (den.is_zero()) throw ParseError("NuScalar with a zero denominator");
  s = NuScalar(j.at("num").get<NuPoly>(), den);
}

inline void to_json(json& j, const Occupation& o) { j = o.counts(); }
inline void from_json(const json& j, Occupation& o) { o = Occupation(j.get<std::vector<unsigned>>()); }

/// Coefficients are always written as NuScalar, whatever the working field.
inline json scalar_json(const Rat& r) { return to_nu_scalar(r); }
inline json scalar_json(const NuScalar& s) { return s; }

inline std::string coupling_json(const Rat& nu) { return nu.str(); }
inline std::string coupling_json(const NuScalar& nu) {
  if (auto v = nu.constant_value()) return v->str();
  if (nu == NuScalar::nu()) return "symbolic";
  return nu.str();
}

template <Scalar S>
void to_json(json& j, const FockState<S>& s) {
  json terms = json::array();
  for (const auto& [occ, c] : s.terms()) terms.push_back({{"occ", occ}, {"coef", scalar_json(c)}});
  j = json{{"modes", s.modes()}, {"terms", terms}};
}

inline void from_json(const json& j, FockState<NuScalar>& s) {
  const auto modes = j.at("modes").get<std::size_t>();
  s = FockState<NuScalar>(modes);
  for (const auto& t : j.at("terms")) {
    const auto occ = t.at("occ").get<Occupation>();
    if (occ.modes() != modes) throw ParseError("occupation length differs from the mode count");
    s.add(occ, t.at("coef").get<NuScalar>());
  }
}

template <Scalar S>
void to_json(json& j, const OperatorExpr<S>& e) {
  json words = json::array();
  for (const auto& [w, c] : e.words())
    words.push_back({{"create", w.create}, {"annihilate", w.annihilate}, {"coef", scalar_json(c)}});
  j = json{{"modes", e.modes()}, {"words", words}};
}

inline void from_json(const json& j, OperatorExpr<NuScalar>& e) {
  e = OperatorExpr<NuScalar>(j.at("modes").get<std::size_t>());
  for (const auto& w : j.at("words"))
    e.add(w.at("create").get<Occupation>(), w.at("annihilate").get<Occupation>(), w.at("coef").get<NuScalar>());
}

inline json index_strings_json(const std::vector<ModeSequence>& basis) {
  json out = json::array();
  for (const auto& seq : basis) {
    json row = json::array();
    for (auto i : seq) row.push_back(i + 1);
    out.push_back(row);
  }
  return out;
}

template <Scalar S>
void to_json(json& j, const GramMatrix<S>& g) {
  json entries = json::array();
  for (std::size_t r = 0; r < g.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.size(); ++c) row.push_back(scalar_json(g.entries(r, c)));
    entries.push_back(row);
  }
  j = json{{"modes", g.modes},
           {"particles", g.particles},
           {"nu", coupling_json(g.nu)},
           {"basis",
            {{"kind", g.kind == BasisKind::sequence ? "sequence" : "multiset"},
             {"index_strings", index_strings_json(g.basis)}}},
           {"entries", entries}};
}

inline void to_json(json& j, const SpectrumReport& r) {
  j = json{{"nu", r.nu},
           {"eigenvalues", r.eigenvalues},
           {"rank", r.rank},
           {"multiset_dim", r.multiset_dim},
           {"min_eigenvalue", r.min_eigenvalue},
           {"positivity", r.positive}};
}

inline void to_json(json& j, const CriticalLevel& l) {
  j = json{{"particles", l.particles},
           {"expected_entry", l.expected_entry},
           {"dimension", l.dimension},
           {"rank", l.rank},
           {"eigenvalue", l.eigenvalue},
           {"passed", l.passed}};
  if (l.deviation) j["deviation"] = *l.deviation;
}

inline void to_json(json& j, const RelationReport& r) {
  j = json{{"relation", r.name},
           {"statement", r.statement},
           {"modes", r.modes},
           {"max_degree", r.max_degree},
           {"states", r.states},
           {"checks", r.checks},
           {"passed", r.passed}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  if (r.positivity) j["positivity"] = *r.positivity;
}

inline void to_json(json& j, const FamilyCheck& c) {
  j = json{{"family", c.name}, {"passed", c.passed}, {"rank", c.rank}, {"degeneracy", c.degeneracy}};
  if (c.failure) j["failure"] = *c.failure;
}

template <Scalar S>
void to_json(json& j, const FitResult<S>& f) {
  json pivots = json::array();
  for (const auto& level : f.pivots) {
    json row = json::array();
    for (const auto& p : level) row.push_back(scalar_json(p));
    pivots.push_back(row);
  }
  j = json{{"degree", f.degree},
           {"expression", f.expr},
           {"pivots", pivots},
           {"singular_points", f.singular_points},
           {"checked_states", f.checked_states}};
}

/// Shortest decimal that reads back to the same double; "nan" for NaN.
inline std::string csv_number(double x) { return std::isnan(x) ? "nan" : format_double(x); }

/// CSV with header nu,min_eigenvalue,rank,multiset_dim,positive. Points that
/// failed carry NaN and an empty rank.
inline std::string scan_csv(const std::vector<ScanPoint>& points, std::size_t multiset_dim) {
  std::string out = "nu,min_eigenvalue,rank,multiset_dim,positive\n";
  for (const auto& p : points) {
    out += p.nu.str() + ",";
    if (p.report) {
      out += csv_number(p.report->min_eigenvalue) + "," + std::to_string(p.report->rank) + "," +
             std::to_string(p.report->multiset_dim) + "," + (p.report->positive ? "true" : "false");
    } else {
      out += "nan,," + std::to_string(multiset_dim) + ",false";
    }
    out += "\n";
  }
  return out;
}

inline json scan_json(const std::vector<ScanPoint>& points) {
  json out = json::array();
  for (const auto& p : points) {
    if (p.report) {
      out.push_back(*p.report);
    } else {
      out.push_back({{"nu", p.nu}, {"error", p.error}});
    }
  }
  return out;
}

}  // namespace calogero
