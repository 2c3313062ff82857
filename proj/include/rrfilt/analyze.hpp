#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rrfilt/parse.hpp"
#include "rrfilt/theorems.hpp"

namespace rrfilt {

// One analysis run: parsed input plus every knob the CLI exposes. The seed
// fully determines all random draws downstream.
struct AnalysisRequest {
  std::string ring_spec;
  std::string ideal_spec;
  RingPtr ring;
  std::vector<Polynomial> gens;
  std::vector<std::string> checks;
  unsigned max_n = 10;
  unsigned max_power = 6;
  unsigned window = 3;
  unsigned trials = 24;
  std::uint64_t seed = 1;
  bool assume_integrally_closed = false;
};

inline const std::set<std::string>& known_checks() {
  static const std::set<std::string> k = {
      "hilbert", "rr",     "reduction", "superficial", "sigma",     "depth",
      "xi",      "narita", "e2",        "red2",        "rr-mod",    "xi-descent"};
  return k;
}

namespace detail {

// Variable with no pure power among the leading terms (the witness that the
// ideal is not m-primary), if any.
inline std::optional<std::string> missing_pure_power(const IdealPtr& I) {
  auto lts = leading_monomials(*I);
  for (std::size_t v = 0; v < I->ring()->nvars(); ++v) {
    bool found = false;
    for (auto& m : lts) {
      if (m[v] == 0) continue;
      bool pure = true;
      for (std::size_t i = 0; i < m.nvars(); ++i)
        if (i != v && m[i]) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return I->ring()->vars()[v];
  }
  return std::nullopt;
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Input grammar: one `ring:` line and one `ideal:` line; `#` comments and
// blank lines ignored. The ideal must be m-primary.
inline AnalysisRequest parse_input(const std::string& text) {
  AnalysisRequest req;
  std::istringstream in(text);
  std::string line;
  int lineno = 0, ideal_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.rfind("ring:", 0) == 0) {
      if (req.ring) throw ParseError("duplicate ring line", lineno, 1);
      req.ring_spec = detail::trim(s.substr(5));
      req.ring = parse_ring(req.ring_spec, lineno);
    } else if (s.rfind("ideal:", 0) == 0) {
      if (!req.ideal_spec.empty())
        throw ParseError("duplicate ideal line", lineno, 1);
      req.ideal_spec = detail::trim(s.substr(6));
      ideal_line = lineno;
    } else {
      throw ParseError("expected 'ring:' or 'ideal:' line", lineno, 1);
    }
  }
  if (!req.ring) throw ParseError("missing ring line", lineno, 1);
  if (req.ideal_spec.empty()) throw ParseError("missing ideal line", lineno, 1);
  req.gens = parse_poly_list(req.ring, req.ideal_spec, ideal_line);
  IdealPtr I = make_ideal(req.ring, req.gens);
  if (auto v = detail::missing_pure_power(I))
    throw ParseError("ideal is not m-primary: no power of variable '" + *v +
                         "' lies in it",
                     ideal_line, 1);
  return req;
}

inline void validate_checks(const AnalysisRequest& req) {
  for (auto& c : req.checks)
    if (!known_checks().count(c))
      throw std::invalid_argument("unknown check '" + c + "'");
}

struct AnalysisResult {
  json document;
  int exit_code = 0;
};

namespace detail {

inline json poly_list_json(const std::vector<Polynomial>& ps) {
  json a = json::array();
  for (auto& p : ps) a.push_back(p.str());
  return a;
}

struct StatusTally {
  bool any_fail = false;
  bool any_undetermined = false;
  void see(Status s) {
    any_fail |= s == Status::FAIL;
    any_undetermined |= s == Status::UNDETERMINED;
  }
};

}  // namespace detail

// Runs every requested check and assembles the versioned JSON document.
// Failures of individual checks are captured as UNDETERMINED entries; this
// function does not throw on resource caps.
inline AnalysisResult run_report(const AnalysisRequest& req) {
  validate_checks(req);
  FiltParams params;
  params.W = req.window;
  params.maxN = req.max_n;
  params.trials = req.trials;
  params.seed = req.seed;

  AnalysisResult res;
  json& doc = res.document;
  doc["schema_version"] = 1;
  doc["input"] = {{"ring", req.ring->name()},
                  {"ideal", detail::poly_list_json(req.gens)}};
  doc["parameters"] = {{"seed", req.seed},
                       {"max_n", req.max_n},
                       {"max_power", req.max_power},
                       {"window", req.window},
                       {"trials", req.trials},
                       {"assume_integrally_closed",
                        req.assume_integrally_closed},
                       {"checks", req.checks}};
  json reports = json::object();
  json theorems = json::array();
  detail::StatusTally tally;

  IdealPtr I = make_ideal(req.ring, req.gens);
  FiltrationCache F(I, params);
  Analysis a(F, req.max_power, 2, req.assume_integrally_closed);

  auto wants = [&](const std::string& c) {
    return std::find(req.checks.begin(), req.checks.end(), c) !=
           req.checks.end();
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      reports[name] = body();
    } catch (const std::exception& e) {
      reports[name] = {{"error", e.what()}};
      tally.any_undetermined = true;
    }
  };

  if (wants("reduction"))
    guarded("reduction", [&] {
      const ReductionCertificate& red = a.reduction();
      return json{{"J", detail::poly_list_json(red.J)},
                  {"reduction_number", red.reduction_number},
                  {"e0", red.e0},
                  {"minimal", red.minimal},
                  {"trials_run", red.trials_run},
                  {"reduction_number_spread",
                   {red.min_over_trials, red.max_over_trials}}};
    });
  if (wants("hilbert"))
    guarded("hilbert", [&] {
      const HilbertReport& hs = a.hilbert();
      const RRHilbertReport& rr = a.rr();
      return json{{"dim", hs.r},
                  {"hilbert_samuel", hs.hs},
                  {"h", zpoly_json(hs.h)},
                  {"e", hs.e},
                  {"e0_certificate", hs.e0_certificate},
                  {"h_tilde", zpoly_json(rr.h_tilde)},
                  {"e_tilde", rr.e_tilde}};
    });
  if (wants("rr"))
    guarded("rr", [&] {
      ZPoly r = F.r_polynomial();
      json j{{"r_polynomial", zpoly_json(r)},
             {"stabilization_bound", F.stabilization_bound()}};
      IdealPtr cl = F.closure(1);
      bool equal = ideal_equal(cl, F.power(1));
      j["closure1_equals_ideal"] = equal;
      if (!equal) {
        for (auto& g : cl->gens())
          if (!ideal_membership(F.power(1), g)) {
            j["closure1_witness"] = g.str();
            break;
          }
      }
      return j;
    });
  if (wants("superficial"))
    guarded("superficial", [&] {
      const SuperficialCertificate& cert = F.superficial();
      bool identity = verify_superficial_identity(F, cert, a.hilbert());
      return json{{"element", cert.element.str()},
                  {"window_start", cert.window_start},
                  {"window_length", cert.window_length},
                  {"trial_index", cert.trial_index},
                  {"identity_check", identity}};
    });
  if (wants("sigma"))
    guarded("sigma", [&] {
      SigmaReport s = sigma_invariants(F, a.reduction(), a.hilbert(), a.rr());
      return json{{"sigma", s.sigma},
                  {"chi1", s.chi1},
                  {"rr_colength", s.rr_colength},
                  {"chi1_equality", s.chi1_equality},
                  {"identities_ok", s.identities_ok}};
    });
  if (wants("depth"))
    guarded("depth", [&] {
      DepthReport d = depth_assoc_graded(F);
      json j{{"depth", d.depth},
             {"descent_chain", detail::poly_list_json(d.descent_chain)}};
      if (d.positivity_witness) j["positivity_witness"] = *d.positivity_witness;
      return j;
    });
  if (wants("xi"))
    guarded("xi", [&] {
      const XiReport& xi = a.xi();
      if (!xi.stabilized) tally.any_undetermined = true;
      return json{{"xi", xi.xi},
                  {"stabilized", xi.stabilized},
                  {"window_from", xi.window_from},
                  {"depths", xi.depths}};
    });

  auto theorem = [&](TheoremVerdict v) {
    tally.see(v.conclusion);
    theorems.push_back(to_json(v));
  };
  if (wants("narita")) theorem(check_narita(a));
  if (wants("e2")) theorem(check_e2_consequences(a));
  if (wants("red2")) theorem(check_red2_dim3(a));
  if (wants("rr-mod")) {
    unsigned s = F.dim() >= 2 ? 1 : 0;
    theorem(check_rr_mod_sequence(a, s, {}));
  }
  if (wants("xi-descent")) {
    try {
      theorem(check_xi_descent(a, F.superficial(), {1, 2}));
    } catch (const std::exception& e) {
      TheoremVerdict v;
      v.name = "xi_descent";
      v.details["error"] = e.what();
      theorem(std::move(v));
    }
  }

  doc["reports"] = reports;
  doc["theorems"] = theorems;
  doc["provenance"] = {{"seed", req.seed},
                       {"cached_power_exponents", F.cached_power_exponents()}};
  res.exit_code = tally.any_fail ? 1 : (tally.any_undetermined ? 2 : 0);
  doc["exit_code"] = res.exit_code;
  return res;
}

// ---- on-disk cache -------------------------------------------------------

// Cache key: FNV-1a over the ring spec, the canonical reduced Groebner
// basis of the input ideal, and every parameter that can influence the
// document.
inline std::uint64_t cache_key(const AnalysisRequest& req) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    h ^= 0x1f;
    h *= 0x100000001b3ull;
  };
  mix(req.ring->name());
  IdealPtr I = make_ideal(req.ring, req.gens);
  for (auto& g : I->gb(req.ring->order())) mix(g.str());
  mix(std::to_string(req.max_n));
  mix(std::to_string(req.max_power));
  mix(std::to_string(req.window));
  mix(std::to_string(req.trials));
  mix(std::to_string(req.seed));
  mix(req.assume_integrally_closed ? "ic" : "-");
  for (auto& c : req.checks) mix(c);
  return h;
}

inline std::optional<std::filesystem::path> cache_dir() {
  const char* env = std::getenv("RRFILT_CACHE_DIR");
  if (!env || !*env) return std::nullopt;
  return std::filesystem::path(env);
}

inline std::optional<json> cache_load(std::uint64_t key) {
  auto dir = cache_dir();
  if (!dir) return std::nullopt;
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(key));
  std::ifstream in(*dir / name);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (...) {
    return std::nullopt;  // corrupt entry: recompute
  }
}

inline void cache_store(std::uint64_t key, const json& doc) {
  auto dir = cache_dir();
  if (!dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return;
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(key));
  auto tmp = *dir / (std::string(name) + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, *dir / name, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

// Cache-aware entry point: a warm hit replays the stored document byte for
// byte; a miss computes and stores it.
inline AnalysisResult run_report_cached(const AnalysisRequest& req) {
  std::uint64_t key = cache_key(req);
  if (auto doc = cache_load(key)) {
    AnalysisResult res;
    res.document = std::move(*doc);
    res.exit_code = res.document.value("exit_code", 2);
    return res;
  }
  AnalysisResult res = run_report(req);
  cache_store(key, res.document);
  return res;
}

// Human-readable digest of the JSON document.
inline std::string human_summary(const json& doc) {
  std::ostringstream out;
  out << "ring:  " << doc["input"]["ring"].get<std::string>() << "\n";
  out << "ideal: ";
  bool first = true;
  for (auto& g : doc["input"]["ideal"]) {
    if (!first) out << ", ";
    out << g.get<std::string>();
    first = false;
  }
  out << "\n";
  const json& reports = doc["reports"];
  auto dump_line = [&](const std::string& name, const json& r) {
    out << name << ": ";
    if (r.contains("error")) {
      out << "UNDETERMINED (" << r["error"].get<std::string>() << ")\n";
      return;
    }
    out << r.dump() << "\n";
  };
  for (auto it = reports.begin(); it != reports.end(); ++it)
    dump_line(it.key(), it.value());
  for (auto& t : doc["theorems"])
    out << "theorem " << t["name"].get<std::string>() << ": "
        << t["conclusion"].get<std::string>() << "\n";
  out << "exit code " << doc["exit_code"].get<int>() << "\n";
  return out.str();
}

}  // namespace rrfilt
