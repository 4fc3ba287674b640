#include "levymart/catalog.hpp"

#include <cmath>
#include <map>
#include <set>

#include "levymart/errors.hpp"

namespace levy {
namespace {

using Params = std::map<std::string, double>;

struct NamedParams {
  std::string name;
  Params params;
};

NamedParams parse_name(std::string_view text) {
  NamedParams out;
  const auto colon = text.find(':');
  out.name = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("catalog parameter '" + std::string(item) + "' is not key=value");
    }
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    try {
      std::size_t used = 0;
      out.params[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ValidationError("catalog parameter '" + key + "' has non-numeric value '" + value +
                            "'");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

double take(Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = it->second;
  p.erase(it);
  return v;
}

void reject_leftovers(const std::string& name, const Params& p) {
  if (p.empty()) return;
  throw ValidationError("catalog entry '" + name + "' has no parameter '" + p.begin()->first +
                        "'");
}

std::vector<DensityPiece> symmetric_tempered(double c, double p, double beta, double r0) {
  return {DensityPiece::tempered(c, p, beta, -kInf, -r0),
          DensityPiece::tempered(c, p, beta, r0, kInf)};
}

ProcessFlags flags(bool has_density, DensitySupport support, bool c1b) {
  return {has_density, support, c1b};
}

}  // namespace

ProcessSpec catalog_process(std::string_view text) {
  auto [name, p] = parse_name(text);
  const std::string canonical(text);

  if (name == "brownian") {
    const double drift = take(p, "drift", 0.0);
    const double sigma2 = take(p, "sigma2", 1.0);
    reject_leftovers(name, p);
    const bool diffusive = sigma2 > 0.0;
    return ProcessSpec(LevyTriplet(drift, sigma2, {}), SamplerKind::gaussian,
                       flags(diffusive, diffusive ? DensitySupport::full_line
                                                  : DensitySupport::unknown,
                             diffusive),
                       canonical);
  }
  if (name == "cpoisson-two-point") {
    const double rate = take(p, "rate", 1.0);
    const double size = take(p, "size", 1.0);
    reject_leftovers(name, p);
    LevyMeasure nu({{-size, 0.5 * rate}, {size, 0.5 * rate}}, {});
    return ProcessSpec(LevyTriplet(0.0, 0.0, std::move(nu)), SamplerKind::compound_poisson,
                       flags(false, DensitySupport::unknown, false), canonical);
  }
  if (name == "cpoisson-gauss-jumps") {
    const double rate = take(p, "rate", 1.0);
    const double mean = take(p, "mean", 0.0);
    const double sd = take(p, "sd", 1.0);
    reject_leftovers(name, p);
    LevyMeasure nu({}, {DensityPiece::gaussian(rate, mean, sd, -kInf, 0.0),
                        DensityPiece::gaussian(rate, mean, sd, 0.0, kInf)});
    return ProcessSpec(LevyTriplet(0.0, 0.0, std::move(nu)), SamplerKind::compound_poisson,
                       flags(false, DensitySupport::unknown, false), canonical);
  }
  if (name == "jump-diffusion") {
    const double drift = take(p, "drift", 0.0);
    const double sigma2 = take(p, "sigma2", 1.0);
    const double rate = take(p, "rate", 1.0);
    const double mean = take(p, "mean", -0.2);
    const double sd = take(p, "sd", 0.5);
    reject_leftovers(name, p);
    LevyMeasure nu({}, {DensityPiece::gaussian(rate, mean, sd, -kInf, 0.0),
                        DensityPiece::gaussian(rate, mean, sd, 0.0, kInf)});
    return ProcessSpec(LevyTriplet(drift, sigma2, std::move(nu)), SamplerKind::composite,
                       flags(true, DensitySupport::full_line, true), canonical);
  }
  if (name == "gamma") {
    const double c = take(p, "c", 1.0);
    const double beta = take(p, "beta", 1.0);
    const double drift = take(p, "drift", 0.0);
    reject_leftovers(name, p);
    LevyMeasure nu({}, {DensityPiece::tempered(c, 1.0, beta, 0.0, kInf)});
    // Triplet drift absorbs the compensator so that X_t ~ Gamma(ct, beta) + drift t.
    const double b = drift + c * (-std::expm1(-beta)) / beta;
    return ProcessSpec(LevyTriplet(b, 0.0, std::move(nu)), SamplerKind::gamma_subordinator,
                       flags(true, DensitySupport::half_line_positive, false), canonical);
  }
  if (name == "poisson") {
    const double rate = take(p, "rate", 1.0);
    const double drift = take(p, "drift", 0.0);
    reject_leftovers(name, p);
    LevyMeasure nu({{1.0, rate}}, {});
    return ProcessSpec(LevyTriplet(drift, 0.0, std::move(nu)), SamplerKind::compound_poisson,
                       flags(false, DensitySupport::unknown, false), canonical);
  }
  if (name == "pareto-tail") {
    const double c = take(p, "c", 1.0);
    const double power = take(p, "p", 2.5);
    reject_leftovers(name, p);
    LevyMeasure nu({}, symmetric_tempered(c, power, 0.0, 1.0));
    return ProcessSpec(LevyTriplet(0.0, 0.0, std::move(nu)), SamplerKind::compound_poisson,
                       flags(false, DensitySupport::unknown, false), canonical);
  }
  if (name == "tempered-stable") {
    const double c = take(p, "c", 1.0);
    const double power = take(p, "p", 1.5);
    const double beta = take(p, "beta", 1.0);
    reject_leftovers(name, p);
    LevyMeasure nu({}, symmetric_tempered(c, power, beta, 0.0));
    return ProcessSpec(LevyTriplet(0.0, 0.0, std::move(nu)), SamplerKind::composite,
                       flags(true, DensitySupport::full_line, false), canonical);
  }
  if (name == "trivial") {
    reject_leftovers(name, p);
    return ProcessSpec(LevyTriplet(0.0, 0.0, {}), SamplerKind::gaussian,
                       flags(false, DensitySupport::unknown, false), canonical);
  }
  throw ValidationError("unknown catalog process '" + name + "'");
}

std::vector<std::string> default_catalog_names() {
  return {"brownian", "cpoisson-two-point", "cpoisson-gauss-jumps", "jump-diffusion", "gamma"};
}

std::vector<ProcessSpec> default_catalog() {
  std::vector<ProcessSpec> out;
  for (const auto& n : default_catalog_names()) out.push_back(catalog_process(n));
  return out;
}

std::vector<std::string> all_catalog_names() {
  auto names = default_catalog_names();
  for (const char* extra : {"poisson", "pareto-tail", "tempered-stable", "trivial"}) {
    names.emplace_back(extra);
  }
  return names;
}

// ---------------------------------------------------------------------------
// JSON config

namespace {

using nlohmann::json;

double number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_null()) throw ValidationError(what + ": null is not a number");
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ValidationError(what + ": expected a number");
}

json encode(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double param(const json& params, const std::string& key, double fallback, bool required) {
  if (params.contains(key)) return number(params.at(key), "density param '" + key + "'");
  if (required) throw ValidationError("density param '" + key + "' is required");
  return fallback;
}

std::vector<std::pair<double, double>> parse_support(const json& s, const std::string& dflt) {
  if (s.is_null() || s.is_string()) {
    const std::string name = s.is_null() ? dflt : s.get<std::string>();
    if (name == "positive") return {{0.0, kInf}};
    if (name == "negative") return {{-kInf, 0.0}};
    if (name == "both") return {{-kInf, 0.0}, {0.0, kInf}};
    if (name == "outer") return {{-kInf, -1.0}, {1.0, kInf}};
    throw ValidationError("unknown density support '" + name + "'");
  }
  if (s.is_array() && s.size() == 2) {
    auto bound = [](const json& b, double inf_sign) {
      return b.is_null() ? inf_sign * kInf : number(b, "density support bound");
    };
    return {{bound(s[0], -1.0), bound(s[1], 1.0)}};
  }
  throw ValidationError("density support must be a name or [lo, hi]");
}

void parse_density(const json& d, std::vector<DensityPiece>& out) {
  if (!d.is_object()) throw ValidationError("density entry must be an object");
  const std::string kind = d.value("kind", std::string{});
  const json params = d.value("params", json::object());
  const json support = d.contains("support") ? d.at("support") : json();
  std::set<std::string> allowed;
  const auto add_tempered = [&](double c, double p, double beta, const std::string& dflt) {
    for (const auto& [lo, hi] : parse_support(support, dflt)) {
      out.push_back(DensityPiece::tempered(c, p, beta, lo, hi));
    }
  };
  if (kind == "tempered") {
    allowed = {"c", "p", "beta"};
    add_tempered(param(params, "c", 1.0, true), param(params, "p", 0.0, true),
                 param(params, "beta", 0.0, false), "both");
  } else if (kind == "gamma") {
    allowed = {"c", "beta"};
    add_tempered(param(params, "c", 1.0, false), 1.0, param(params, "beta", 1.0, false),
                 "positive");
  } else if (kind == "power") {
    allowed = {"c", "p"};
    add_tempered(param(params, "c", 1.0, false), param(params, "p", 0.0, true), 0.0, "outer");
  } else if (kind == "exponential") {
    allowed = {"c", "beta"};
    add_tempered(param(params, "c", 1.0, false), 0.0, param(params, "beta", 1.0, true),
                 "both");
  } else if (kind == "gaussian") {
    allowed = {"rate", "mean", "sd"};
    const double rate = param(params, "rate", 1.0, false);
    const double mean = param(params, "mean", 0.0, false);
    const double sd = param(params, "sd", 1.0, false);
    for (const auto& [lo, hi] : parse_support(support, "both")) {
      out.push_back(DensityPiece::gaussian(rate, mean, sd, lo, hi));
    }
  } else {
    throw ValidationError("unknown density kind '" + kind + "'");
  }
  for (const auto& [key, _] : params.items()) {
    if (!allowed.count(key)) {
      throw ValidationError("density kind '" + kind + "' has no param '" + key + "'");
    }
  }
}

}  // namespace

ProcessSpec process_from_json(const json& j) {
  if (j.is_string()) return catalog_process(j.get<std::string>());
  if (!j.is_object()) throw ValidationError("process config must be a JSON object");
  static const std::set<std::string> known = {"name",    "catalog", "drift", "sigma2",
                                              "atoms",   "density", "sampler", "flags",
                                              "fingerprint"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError("unknown process config field '" + key + "'");
  }
  if (j.contains("catalog")) {
    for (const char* k : {"drift", "sigma2", "atoms", "density", "sampler", "flags"}) {
      if (j.contains(k)) {
        throw ValidationError(std::string("field '") + k + "' cannot be combined with 'catalog'");
      }
    }
    return catalog_process(j.at("catalog").get<std::string>());
  }
  try {
    const double drift = j.contains("drift") ? number(j.at("drift"), "drift") : 0.0;
    const double sigma2 = j.contains("sigma2") ? number(j.at("sigma2"), "sigma2") : 0.0;
    std::vector<Atom> atoms;
    for (const auto& a : j.value("atoms", json::array())) {
      if (!a.is_array() || a.size() != 2) throw ValidationError("atoms are [y, mass] pairs");
      atoms.push_back({number(a[0], "atom location"), number(a[1], "atom mass")});
    }
    std::vector<DensityPiece> pieces;
    if (j.contains("density") && !j.at("density").is_null()) {
      const json& d = j.at("density");
      if (d.is_array()) {
        for (const auto& item : d) parse_density(item, pieces);
      } else {
        parse_density(d, pieces);
      }
    }
    LevyMeasure nu(std::move(atoms), std::move(pieces));
    LevyTriplet triplet(drift, sigma2, std::move(nu));

    SamplerKind sampler = SamplerKind::composite;
    if (j.contains("sampler")) {
      sampler = sampler_from_string(j.at("sampler").get<std::string>());
    } else if (triplet.measure().is_zero()) {
      sampler = SamplerKind::gaussian;
    } else if (sigma2 == 0.0 && triplet.measure().activity() == ActivityClass::finite) {
      sampler = SamplerKind::compound_poisson;
    }
    ProcessFlags fl;
    if (j.contains("flags")) {
      const json& f = j.at("flags");
      fl.has_density = f.value("has_density", false);
      fl.density_support = density_support_from_string(f.value("density_support", "unknown"));
      fl.c1b_density = f.value("c1b_density", false);
    }
    return ProcessSpec(std::move(triplet), sampler, fl, j.value("name", std::string{}));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("process config: ") + e.what());
  }
}

json process_to_json(const ProcessSpec& spec) {
  const LevyTriplet& tr = spec.triplet();
  json atoms = json::array();
  for (const Atom& a : tr.measure().atoms()) atoms.push_back({a.location, a.mass});
  json density = json::array();
  for (const DensityPiece& p : tr.measure().pieces()) {
    json params;
    if (p.kind() == DensityPiece::Kind::tempered) {
      params = {{"c", p.scale()}, {"p", p.power()}, {"beta", p.rate()}};
    } else {
      params = {{"rate", p.scale()}, {"mean", p.mean()}, {"sd", p.sd()}};
    }
    density.push_back({{"kind", p.kind() == DensityPiece::Kind::tempered ? "tempered" : "gaussian"},
                       {"params", params},
                       {"support", json::array({encode(p.lo()), encode(p.hi())})}});
  }
  return {{"name", spec.name()},
          {"drift", tr.drift()},
          {"sigma2", tr.sigma2()},
          {"atoms", atoms},
          {"density", density},
          {"sampler", to_string(spec.sampler())},
          {"flags",
           {{"has_density", spec.flags().has_density},
            {"density_support", to_string(spec.flags().density_support)},
            {"c1b_density", spec.flags().c1b_density}}}};
}

std::uint64_t fingerprint(const ProcessSpec& spec) {
  json j = process_to_json(spec);
  j.erase("name");
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace levy
