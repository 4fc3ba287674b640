#include "levymart/report.hpp"

#include <cmath>
#include <cstdio>

namespace levy {

using nlohmann::json;

namespace {

void write(const json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(value, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(v, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Polynomial& p) { return json(p.coeffs()); }

json to_json(const ClassificationVerdict& v) {
  json witness = nullptr;
  if (v.witness_poly) witness = to_json(*v.witness_poly);
  if (v.witness_eta) witness = json::array({v.witness_eta->first, v.witness_eta->second});
  return {{"verdict", to_string(v.verdict)},
          {"alpha", number_or_null(v.alpha)},
          {"witness_coeffs", witness},
          {"tolerance_used", v.tolerance_used}};
}

json to_json(const RootReport& r) {
  return {{"alpha", r.alpha},
          {"roots", r.roots},
          {"eta_minimum", {{"lambda", r.lambda_star}, {"eta", r.eta_min}}},
          {"domain", json::array({r.domain.lo, r.domain.hi})},
          {"search_interval", json::array({r.search.lo, r.search.hi})},
          {"monotone", r.monotone},
          {"warnings", r.warnings}};
}

json to_json(const MartingaleReport& r) {
  json probes = json::array();
  for (const ProbeResult& p : r.probes) {
    probes.push_back({{"phi", p.name},
                      {"statistic", p.statistic},
                      {"standard_error", p.standard_error},
                      {"z", p.z},
                      {"p_value", p.p_value}});
  }
  return {{"mode", to_string(r.mode)},
          {"s", r.s},
          {"t", r.t},
          {"probes", probes},
          {"level", r.level},
          {"adjusted_p", r.adjusted_p},
          {"correction", "bonferroni"},
          {"verdict", r.reject ? "reject" : "fail-to-reject"},
          {"gamma_estimates", {{"s", r.gamma_s}, {"t", r.gamma_t}}},
          {"n_paths", r.n_paths},
          {"seed", r.seed},
          {"assumptions", r.assumptions},
          {"note", "a finite probe family yields a test, not a proof"}};
}

json to_json(const GammaDiagnostics& d) {
  json residuals = json::array();
  for (const GammaResidual& r : d.residuals) {
    residuals.push_back(
        {{"s", r.s}, {"t", r.t}, {"residual", r.value}, {"standard_error", r.standard_error}});
  }
  return {{"mode", to_string(d.mode)}, {"times", d.times},       {"gamma", d.gamma},
          {"gamma_se", d.gamma_se},    {"residuals", residuals}, {"alpha_hat", d.alpha_hat},
          {"n_paths", d.n_paths},      {"seed", d.seed}};
}

json to_json(const SemigroupEstimate& e) {
  return {{"estimate", e.estimate}, {"standard_error", e.standard_error}, {"n", e.n}};
}

json to_json(const HeavyTailDiagnostic& d) {
  return {{"order", d.order},
          {"hill_index", number_or_null(d.hill_index)},
          {"hill_se", number_or_null(d.hill_se)},
          {"k", d.k},
          {"max_share", d.max_share},
          {"blow_up", d.blow_up}};
}

}  // namespace levy
