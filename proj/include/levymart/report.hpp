#pragma once

#include <string>

#include "json.hpp"

#include "levymart/expmart.hpp"
#include "levymart/generator.hpp"
#include "levymart/mtgtest.hpp"
#include "levymart/polynomial.hpp"
#include "levymart/simulate.hpp"

namespace levy {

inline constexpr int kReportSchema = 1;

/// JSON text with every floating value printed to 17 significant digits.
/// Non-finite values become null.
std::string dump17(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const Polynomial& p);
nlohmann::json to_json(const ClassificationVerdict& v);
nlohmann::json to_json(const RootReport& r);
nlohmann::json to_json(const MartingaleReport& r);
nlohmann::json to_json(const GammaDiagnostics& d);
nlohmann::json to_json(const SemigroupEstimate& e);
nlohmann::json to_json(const HeavyTailDiagnostic& d);

/// A finite number, or null.
nlohmann::json number_or_null(double v);

}  // namespace levy
