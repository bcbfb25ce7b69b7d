#pragma once

#include "ensys/atomic_system.hpp"
#include "ensys/compiler.hpp"
#include "ensys/polynomial.hpp"
#include "ensys/solver.hpp"

#include <string>
#include <string_view>

namespace ensys {

// Canonical JSON documents (two-space indent). Big integers are decimal
// strings; terms are sorted by exponent vector.
std::string to_json(const Polynomial& poly);
std::string to_json(const EnSystem& system);
std::string to_json(const CountReport& report);
std::string to_json(const FlatteningPlan& plan);
std::string to_json(const TauMap& tau);

// Throw ParseError on malformed documents.
Polynomial polynomial_from_json(std::string_view text);
EnSystem system_from_json(std::string_view text);

}  // namespace ensys
