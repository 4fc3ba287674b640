#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "levymart/process.hpp"

namespace levy {

/// Named processes. `name` may carry parameters: "gamma:c=2,beta=0.5".
///
///   brownian             drift, sigma2
///   cpoisson-two-point   rate, size           nu = rate/2 (delta_{-size} + delta_{size})
///   cpoisson-gauss-jumps rate, mean, sd       nu = rate N(mean, sd^2)
///   jump-diffusion       drift, sigma2, rate, mean, sd
///   gamma                c, beta, drift       nu = c e^{-beta y}/y on (0, inf)
///   poisson              rate, drift          nu = rate delta_1
///   pareto-tail          c, p                 nu = c |y|^{-p} on |y| >= 1
///   tempered-stable      c, p, beta           nu = c |y|^{-p} e^{-beta|y|}
///   trivial
///
/// For gamma, `drift` is the drift without compensator; the triplet drift is
/// drift + c(1 - e^{-beta})/beta.
ProcessSpec catalog_process(std::string_view name);

/// The default catalog: brownian, cpoisson-two-point, cpoisson-gauss-jumps,
/// jump-diffusion, gamma.
std::vector<std::string> default_catalog_names();
std::vector<ProcessSpec> default_catalog();

/// All names accepted by catalog_process.
std::vector<std::string> all_catalog_names();

/// Reads the JSON process config (see README). A `catalog` key expands a
/// named process; explicit fields then override nothing and are rejected.
ProcessSpec process_from_json(const nlohmann::json& j);

/// Canonical JSON form; process_from_json(process_to_json(s)) reproduces s.
nlohmann::json process_to_json(const ProcessSpec& spec);

/// FNV-1a hash of the canonical JSON form.
std::uint64_t fingerprint(const ProcessSpec& spec);

}  // namespace levy
