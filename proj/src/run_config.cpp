#include "semsec/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "semsec/errors.hpp"
#include "semsec/info_core.hpp"

namespace semsec {
namespace {

using nlohmann::json;

constexpr int kSweepPoints = 64;

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; })) {
      throw ValidationError(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(path, "must be finite");
  return x;
}

void read(const json& obj, const char* key, const std::string& path, double& dst) {
  if (obj.contains(key)) dst = number(obj[key], path + "." + key);
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  if (count > 1) out.back() = stop;
  return out;
}

std::vector<double> fractions(double top, int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(top * k / n);
  return out;
}

std::vector<double> parse_axis(const json& v, const std::string& path) {
  if (v.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }
  only_keys(v, path, {"start", "stop", "count"});
  if (!v.contains("start") || !v.contains("stop") || !v.contains("count")) {
    throw ValidationError(path, "range needs start, stop and count");
  }
  if (!v["count"].is_number_integer()) throw ValidationError(path + ".count", "expected an integer");
  const int count = v["count"].get<int>();
  if (count < 1) throw ValidationError(path + ".count", "must be at least 1");
  return linspace(number(v["start"], path + ".start"), number(v["stop"], path + ".stop"), count);
}

double entropy_of(const RunConfig& cfg, const std::string& which) {
  const bool g = cfg.model == Model::Gaussian;
  if (which == "S") return g ? cfg.gsrc.h_s() : cfg.bsrc.h_s();
  if (which == "U") return g ? cfg.gsrc.h_u() : cfg.bsrc.h_u();
  return g ? cfg.gsrc.h_su() : cfg.bsrc.h_su();
}

double parse_target(const json& v, const std::string& path, const RunConfig& cfg) {
  if (v.is_null()) return EquivocationTargets::kOff;
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s == "none" || s == "off") return EquivocationTargets::kOff;
    if (s.size() > 3 && (s[0] == 'h' || s[0] == 'H') && s[1] == '(' && s.back() == ')') {
      const std::string inner = s.substr(2, s.size() - 3);
      if (inner == "S" || inner == "U" || inner == "S,U") return entropy_of(cfg, inner);
    }
    throw ValidationError(path, "expected a number, \"none\", \"h(S)\", \"h(U)\" or \"h(S,U)\"");
  }
  return number(v, path);
}

Series parse_series(const json& v, const std::string& path, const RunConfig& cfg) {
  only_keys(v, path, {"name", "delta_s", "delta_u", "delta_su", "R_k"});
  Series s;
  if (!v.contains("name")) throw ValidationError(path + ".name", "missing");
  s.name = text(v["name"], path + ".name");
  if (s.name.empty() || s.name.find_first_of(",\"\n") != std::string::npos) {
    throw ValidationError(path + ".name", "must be nonempty without commas, quotes or newlines");
  }
  if (v.contains("delta_s")) s.targets.delta_s = parse_target(v["delta_s"], path + ".delta_s", cfg);
  if (v.contains("delta_u")) s.targets.delta_u = parse_target(v["delta_u"], path + ".delta_u", cfg);
  if (v.contains("delta_su")) s.targets.delta_su = parse_target(v["delta_su"], path + ".delta_su", cfg);
  read(v, "R_k", path, s.targets.R_k);
  return s;
}

void check_axis(const std::vector<double>& axis, const std::string& path, double lo, double hi, bool open_lo) {
  if (axis.empty()) throw ValidationError(path, "grid must be nonempty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!std::isfinite(axis[i])) throw ValidationError(p, "must be finite");
    if (open_lo ? !(axis[i] > lo) : !(axis[i] >= lo)) throw ValidationError(p, "below the admissible range");
    if (axis[i] > hi) throw ValidationError(p, "above the admissible range");
    if (i > 0 && !(axis[i] > axis[i - 1])) throw ValidationError(p, "grid must be strictly increasing");
  }
}

json target_json(double t) { return EquivocationTargets::active(t) ? json(t) : json("none"); }

}  // namespace

std::string to_string(Model m) { return m == Model::Gaussian ? "gaussian" : "binary"; }

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Converse: return "converse";
    case Mode::Inner: return "inner";
    case Mode::Curve: return "curve";
    case Mode::Rdf: return "rdf";
  }
  return "?";
}

RunConfig parse_config(const json& doc) {
  only_keys(doc, "", {"mode", "model", "cases", "source", "channel", "series", "grid", "policy", "samples",
                      "seed", "threads", "curve", "output", "preset"});
  RunConfig cfg;
  if (doc.contains("preset")) cfg.preset = text(doc["preset"], "preset");
  if (doc.contains("mode")) {
    const std::string m = text(doc["mode"], "mode");
    if (m == "converse") cfg.mode = Mode::Converse;
    else if (m == "inner") cfg.mode = Mode::Inner;
    else if (m == "curve") cfg.mode = Mode::Curve;
    else if (m == "rdf") cfg.mode = Mode::Rdf;
    else throw ValidationError("mode", "expected converse, inner, curve or rdf");
  }
  if (doc.contains("model")) {
    const std::string m = text(doc["model"], "model");
    if (m == "gaussian") cfg.model = Model::Gaussian;
    else if (m == "binary") cfg.model = Model::Binary;
    else throw ValidationError("model", "expected gaussian or binary");
  }
  const bool gauss = cfg.model == Model::Gaussian;
  if (!gauss) cfg.policy = {false, 0.0, 0.0};

  if (doc.contains("cases")) {
    const json& c = doc["cases"];
    if (!c.is_array()) throw ValidationError("cases", "expected an array");
    cfg.cases.clear();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string p = "cases[" + std::to_string(i) + "]";
      if (!c[i].is_number_integer()) throw ValidationError(p, "expected 1 or 2");
      cfg.cases.push_back(c[i].get<int>());
    }
  }

  if (doc.contains("source")) {
    const json& s = doc["source"];
    if (gauss) {
      only_keys(s, "source", {"P_s", "P_u", "P_su"});
      read(s, "P_s", "source", cfg.gsrc.P_s);
      read(s, "P_u", "source", cfg.gsrc.P_u);
      read(s, "P_su", "source", cfg.gsrc.P_su);
    } else {
      only_keys(s, "source", {"alpha"});
      read(s, "alpha", "source", cfg.bsrc.alpha);
    }
  }
  if (doc.contains("channel")) {
    const json& c = doc["channel"];
    if (gauss) {
      only_keys(c, "channel", {"P", "P_N1", "P_N2"});
      read(c, "P", "channel", cfg.gch.P);
      read(c, "P_N1", "channel", cfg.gch.P_N1);
      read(c, "P_N2", "channel", cfg.gch.P_N2);
    } else {
      only_keys(c, "channel", {"eps1", "eps2"});
      read(c, "eps1", "channel", cfg.bch.eps1);
      read(c, "eps2", "channel", cfg.bch.eps2);
    }
  }
  // Entropy-valued targets need a valid source.
  if (gauss) cfg.gsrc.validate();
  else cfg.bsrc.validate();

  if (doc.contains("series")) {
    const json& s = doc["series"];
    if (!s.is_array()) throw ValidationError("series", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) cfg.series.push_back(parse_series(s[i], "series[" + std::to_string(i) + "]", cfg));
  } else {
    cfg.series.push_back({"none", {}});
  }

  if (cfg.mode == Mode::Curve) {
    cfg.D_s = linspace(cfg.bsrc.alpha + 1e-4, 0.5, 200);
  } else if (gauss) {
    cfg.D_s = fractions(cfg.gsrc.P_s, 40);
    cfg.D_u = fractions(cfg.gsrc.P_u, 40);
  } else {
    cfg.D_s = fractions(0.5, 40);
    cfg.D_u = fractions(0.5, 40);
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    only_keys(g, "grid", {"D_s", "D_u"});
    if (g.contains("D_s")) cfg.D_s = parse_axis(g["D_s"], "grid.D_s");
    if (g.contains("D_u")) cfg.D_u = parse_axis(g["D_u"], "grid.D_u");
  }

  if (doc.contains("policy")) {
    const json& p = doc["policy"];
    const char* k1 = gauss ? "beta1" : "gamma1";
    const char* k2 = gauss ? "beta2" : "gamma2";
    only_keys(p, "policy", {"kind", k1, k2});
    const std::string kind = p.contains("kind") ? text(p["kind"], "policy.kind") : "fixed";
    if (kind == "sweep") cfg.policy.sweep = true;
    else if (kind != "fixed") throw ValidationError("policy.kind", "expected fixed or sweep");
    read(p, k1, "policy", cfg.policy.p1);
    read(p, k2, "policy", cfg.policy.p2);
  }

  // Integers built in code arrive signed; only the sign matters here.
  auto natural = [&](const char* key, const char* what) -> std::uint64_t {
    const json& v = doc[key];
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ValidationError(key, what);
    }
    return v.get<std::uint64_t>();
  };
  if (doc.contains("samples")) cfg.samples = natural("samples", "expected a positive integer");
  if (doc.contains("seed")) cfg.seed = natural("seed", "expected an unsigned 64-bit integer");
  if (doc.contains("threads")) {
    const std::uint64_t t = natural("threads", "expected a nonnegative integer");
    if (t > 4096) throw ValidationError("threads", "at most 4096");
    cfg.threads = static_cast<int>(t);
  }
  if (doc.contains("curve")) {
    const json& c = doc["curve"];
    only_keys(c, "curve", {"r", "D_u", "R_k"});
    read(c, "r", "curve", cfg.curve.r);
    read(c, "D_u", "curve", cfg.curve.D_u);
    if (c.contains("R_k")) {
      if (c["R_k"].is_array()) {
        cfg.curve.R_k.clear();
        for (std::size_t i = 0; i < c["R_k"].size(); ++i) {
          cfg.curve.R_k.push_back(number(c["R_k"][i], "curve.R_k[" + std::to_string(i) + "]"));
        }
      } else {
        cfg.curve.R_k = {number(c["R_k"], "curve.R_k")};
      }
    }
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    only_keys(o, "output", {"path", "format"});
    if (o.contains("path")) cfg.out = text(o["path"], "output.path");
    if (o.contains("format")) cfg.format = text(o["format"], "output.format");
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const bool gauss = cfg.model == Model::Gaussian;
  if (cfg.cases.empty()) throw ValidationError("cases", "must list at least one case");
  std::set<int> seen;
  for (std::size_t i = 0; i < cfg.cases.size(); ++i) {
    const std::string p = "cases[" + std::to_string(i) + "]";
    if (cfg.cases[i] != 1 && cfg.cases[i] != 2) throw ValidationError(p, "expected 1 or 2");
    if (!seen.insert(cfg.cases[i]).second) throw ValidationError(p, "duplicate case");
  }
  if (gauss) {
    cfg.gsrc.validate();
    cfg.gch.validate();
  } else {
    cfg.bsrc.validate();
    cfg.bch.validate();
  }
  if (cfg.mode == Mode::Inner && !gauss) throw ValidationError("model", "the inner bound is implemented for the gaussian model only");
  if (cfg.mode == Mode::Curve && gauss) throw ValidationError("model", "curves are implemented for the binary model only");

  if (cfg.mode == Mode::Converse || cfg.mode == Mode::Inner) {
    if (cfg.series.empty()) throw ValidationError("series", "must list at least one series");
    std::set<std::string> names;
    for (std::size_t i = 0; i < cfg.series.size(); ++i) {
      const std::string p = "series[" + std::to_string(i) + "]";
      if (!names.insert(cfg.series[i].name).second) throw ValidationError(p + ".name", "duplicate series name");
      try {
        cfg.series[i].targets.validate();
      } catch (const ValidationError& e) {
        throw ValidationError(p + e.path().substr(e.path().find('.')), "invalid target");
      }
      if (cfg.mode == Mode::Inner && cfg.series[i].targets.R_k != 0.0) {
        throw ValidationError(p + ".R_k", "the inner bound is evaluated without a key (R_k = 0)");
      }
    }
  }

  const double hi = gauss ? std::numeric_limits<double>::max() : 1.0;
  check_axis(cfg.D_s, "grid.D_s", 0.0, hi, gauss);
  if (cfg.mode != Mode::Curve) check_axis(cfg.D_u, "grid.D_u", 0.0, hi, gauss);

  const char* k1 = gauss ? "policy.beta1" : "policy.gamma1";
  const char* k2 = gauss ? "policy.beta2" : "policy.gamma2";
  if (!(cfg.policy.p1 >= 0.0 && cfg.policy.p1 <= 1.0)) throw ValidationError(k1, "must lie in [0, 1]");
  if (!(cfg.policy.p2 >= 0.0 && cfg.policy.p2 <= 1.0)) throw ValidationError(k2, "must lie in [0, 1]");

  if (cfg.mode == Mode::Inner && cfg.samples == 0) throw ValidationError("samples", "must be positive");
  if (cfg.threads < 0) throw ValidationError("threads", "must be nonnegative");
  if (cfg.mode == Mode::Curve) {
    if (!(cfg.curve.r >= 0.0)) throw ValidationError("curve.r", "must be nonnegative");
    if (!(cfg.curve.D_u >= 0.0 && cfg.curve.D_u <= 1.0)) throw ValidationError("curve.D_u", "must lie in [0, 1]");
    if (cfg.curve.R_k.empty()) throw ValidationError("curve.R_k", "must list at least one key rate");
    for (std::size_t i = 0; i < cfg.curve.R_k.size(); ++i) {
      if (!(cfg.curve.R_k[i] >= 0.0)) throw ValidationError("curve.R_k[" + std::to_string(i) + "]", "must be nonnegative");
    }
  }
  if (cfg.format != "csv" && cfg.format != "json") throw ValidationError("output.format", "expected csv or json");
}

json config_to_json(const RunConfig& cfg) {
  const bool gauss = cfg.model == Model::Gaussian;
  json j;
  j["mode"] = to_string(cfg.mode);
  j["model"] = to_string(cfg.model);
  j["cases"] = cfg.cases;
  if (gauss) {
    j["source"] = {{"P_s", cfg.gsrc.P_s}, {"P_u", cfg.gsrc.P_u}, {"P_su", cfg.gsrc.P_su}};
    j["channel"] = {{"P", cfg.gch.P}, {"P_N1", cfg.gch.P_N1}, {"P_N2", cfg.gch.P_N2}};
  } else {
    j["source"] = {{"alpha", cfg.bsrc.alpha}};
    j["channel"] = {{"eps1", cfg.bch.eps1}, {"eps2", cfg.bch.eps2}};
  }
  j["series"] = json::array();
  for (const Series& s : cfg.series) {
    j["series"].push_back({{"name", s.name},
                           {"delta_s", target_json(s.targets.delta_s)},
                           {"delta_u", target_json(s.targets.delta_u)},
                           {"delta_su", target_json(s.targets.delta_su)},
                           {"R_k", s.targets.R_k}});
  }
  j["grid"] = {{"D_s", cfg.D_s}};
  if (cfg.mode != Mode::Curve) j["grid"]["D_u"] = cfg.D_u;
  j["policy"] = {{"kind", cfg.policy.sweep ? "sweep" : "fixed"},
                 {gauss ? "beta1" : "gamma1", cfg.policy.p1},
                 {gauss ? "beta2" : "gamma2", cfg.policy.p2}};
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["curve"] = {{"r", cfg.curve.r}, {"D_u", cfg.curve.D_u}, {"R_k", cfg.curve.R_k}};
  j["output"] = {{"path", cfg.out}, {"format", cfg.format}};
  if (!cfg.preset.empty()) j["preset"] = cfg.preset;
  return j;
}

std::vector<std::string> preset_names() {
  return {"gaussian-converse-fig3", "gaussian-fig4", "gaussian-inner", "binary-converse-fig3b", "binary-tradeoff-fig5"};
}

std::string preset_description(const std::string& name) {
  if (name == "gaussian-converse-fig3") return "Gaussian converse r_min surfaces, cases 1 and 2, full semantic secrecy";
  if (name == "gaussian-fig4") return "Gaussian converse at D_u = 0.6: no secrecy, semantic secrecy, full secrecy";
  if (name == "gaussian-inner") return "Gaussian Monte Carlo inner bound, case 2, 1e5 samples, three secrecy series";
  if (name == "binary-converse-fig3b") return "Binary converse r_min surfaces, cases 1 and 2, full semantic secrecy";
  if (name == "binary-tradeoff-fig5") return "Binary Delta_s(D_s) curves at r = 1, D_u = 0.25, R_k in {0, 0.1}";
  throw ValidationError("preset", "unknown preset '" + name + "'");
}

json preset_json(const std::string& name) {
  preset_description(name);
  const json semantic = {{"name", "semantic"}, {"delta_s", "h(S)"}, {"delta_u", 0.0}, {"delta_su", "h(S)"}};
  const json none = {{"name", "none"}};
  const json full = {{"name", "full"}, {"delta_s", "h(S)"}, {"delta_u", "h(U)"}, {"delta_su", "h(S,U)"}};
  json j = {{"preset", name}};
  if (name == "gaussian-converse-fig3") {
    j.update({{"mode", "converse"}, {"model", "gaussian"}, {"cases", {1, 2}}, {"series", {semantic}}});
  } else if (name == "gaussian-fig4") {
    j.update({{"mode", "converse"},
              {"model", "gaussian"},
              {"cases", {1, 2}},
              {"series", {none, semantic, full}},
              {"grid", {{"D_u", {0.6}}}}});
  } else if (name == "gaussian-inner") {
    j.update({{"mode", "inner"}, {"model", "gaussian"}, {"cases", {2}}, {"series", {none, semantic, full}},
              {"samples", 100000}});
  } else if (name == "binary-converse-fig3b") {
    j.update({{"mode", "converse"}, {"model", "binary"}, {"cases", {1, 2}}, {"series", {semantic}}});
  } else {
    j.update({{"mode", "curve"}, {"model", "binary"}, {"cases", {1, 2}},
              {"curve", {{"r", 1.0}, {"D_u", 0.25}, {"R_k", {0.0, 0.1}}}}});
  }
  return j;
}

PolicyChoice resolve_policy(const RunConfig& cfg) {
  if (!cfg.policy.sweep) return {cfg.policy.p1, cfg.policy.p2};
  // Each secrecy term enters only through its own cap, so the joint sweep
  // separates into independent maximizations of the same scalar function.
  double best = cfg.model == Model::Gaussian ? 1.0 : 0.0;
  double best_v = -1.0;
  for (int i = 0; i < kSweepPoints; ++i) {
    const double g = static_cast<double>(i) / (kSweepPoints - 1);
    const double v = cfg.model == Model::Gaussian ? secrecy_term(cfg.gch, g) : binary_secrecy_term(cfg.bch, g);
    if (v > best_v) {
      best_v = v;
      best = g;
    }
  }
  return {best, best};
}

}  // namespace semsec
